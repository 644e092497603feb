"""Binary and one-vs-rest logistic regression trained by full-batch gradient
descent with a backtracking line search.

The optimizer is deterministic (zero init, no shuffling), so identical inputs
and config always produce bitwise-identical weights. The line search enforces
a monotonically non-increasing loss.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..base import ParamsMixin, check_is_fitted
from ..corpus import sort_canonical
from ..features import CsrMatrix, SparseVector
from ..validation import check_binary_targets, check_dimension, check_X_y

_ARMIJO_C = 1e-4
_BACKTRACK_FACTOR = 0.5
_MAX_BACKTRACKS = 60


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=np.float64)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def lr_loss(X: CsrMatrix, y: np.ndarray, w: np.ndarray, b: float, l2_lambda: float) -> float:
    """Regularized negative log-likelihood.

    sum_i [log(1 + e^{z_i}) - y_i z_i] + (l2_lambda/2) ||w||^2, z = Xw + b.
    The bias is not regularized.
    """
    z = X.dot(w) + b
    return float(np.sum(np.logaddexp(0.0, z) - y * z) + 0.5 * l2_lambda * float(w @ w))


def lr_gradient(
    X: CsrMatrix, y: np.ndarray, w: np.ndarray, b: float, l2_lambda: float
) -> tuple[np.ndarray, float]:
    """Analytic gradient of lr_loss: (X^T (sigma(z) - y) + l2 w, sum(sigma(z) - y))."""
    z = X.dot(w) + b
    r = _sigmoid(z) - y
    return X.t_dot(r) + l2_lambda * w, float(np.sum(r))


class BinaryLogisticRegression(ParamsMixin):
    """Two-class logistic regression over sparse count vectors.

    Parameters
    ----------
    l2_lambda : L2 penalty on the weights (bias unregularized).
    max_epochs : gradient-descent iteration cap.
    tol : stop when the gradient infinity-norm falls to or below this.
    threshold : decision cutoff; probability >= threshold predicts 1.
    """

    def __init__(
        self,
        l2_lambda: float = 1.0,
        max_epochs: int = 1000,
        tol: float = 1e-6,
        threshold: float = 0.5,
    ):
        self.l2_lambda = l2_lambda
        self.max_epochs = max_epochs
        self.tol = tol
        self.threshold = threshold
        self.weights_: np.ndarray | None = None
        self.bias_: float | None = None
        self.n_features_: int | None = None
        self.epochs_run_: int | None = None
        self.initial_loss_: float | None = None
        self.final_loss_: float | None = None

    def fit(self, X: Sequence[SparseVector], y: Sequence[int]) -> "BinaryLogisticRegression":
        X, y = check_X_y(X, y)
        targets = check_binary_targets(y)
        if self.l2_lambda < 0:
            raise ValueError("l2_lambda must be >= 0")
        mat = CsrMatrix.from_vectors(X)
        n_features = mat.shape[1]

        w = np.zeros(n_features, dtype=np.float64)
        b = 0.0
        loss = lr_loss(mat, targets, w, b, self.l2_lambda)
        self.initial_loss_ = loss

        step = 1.0
        epoch = 0
        while epoch < self.max_epochs:
            grad_w, grad_b = lr_gradient(mat, targets, w, b, self.l2_lambda)
            grad_inf = max(float(np.max(np.abs(grad_w))) if n_features else 0.0, abs(grad_b))
            if grad_inf <= self.tol:
                break
            grad_sq = float(grad_w @ grad_w) + grad_b * grad_b

            # Backtracking line search along -gradient (Armijo condition).
            t = step * 2.0
            accepted = False
            for _ in range(_MAX_BACKTRACKS):
                new_w = w - t * grad_w
                new_b = b - t * grad_b
                new_loss = lr_loss(mat, targets, new_w, new_b, self.l2_lambda)
                if new_loss <= loss - _ARMIJO_C * t * grad_sq:
                    accepted = True
                    break
                t *= _BACKTRACK_FACTOR
            if not accepted:
                break  # no further numeric progress possible
            w, b, loss, step = new_w, new_b, new_loss, t
            epoch += 1

        self.weights_ = w
        self.bias_ = b
        self.n_features_ = n_features
        self.epochs_run_ = epoch
        self.final_loss_ = loss
        return self

    def predict_proba(self, x: SparseVector) -> float:
        """P(label == 1) for one document vector."""
        check_is_fitted(self, "weights_", "bias_")
        check_dimension(x, self.n_features_)
        z = self.bias_ + sum(self.weights_[i] * c for i, c in x.entries)
        return float(_sigmoid(np.asarray([z]))[0])

    def predict(self, x: SparseVector) -> tuple[float, int]:
        """(probability, hard label); the threshold boundary is inclusive."""
        p = self.predict_proba(x)
        return p, int(p >= self.threshold)

    @property
    def training_meta(self) -> dict:
        check_is_fitted(self, "weights_")
        return {
            "epochs_run": self.epochs_run_,
            "initial_loss": self.initial_loss_,
            "final_loss": self.final_loss_,
        }

    def to_json_dict(self) -> dict:
        check_is_fitted(self, "weights_")
        return {
            "type": "binary_lr",
            "config": {
                "l2_lambda": self.l2_lambda,
                "max_epochs": self.max_epochs,
                "tol": self.tol,
                "threshold": self.threshold,
            },
            "weights": self.weights_.tolist(),
            "bias": self.bias_,
            "training_meta": self.training_meta,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "BinaryLogisticRegression":
        model = cls(**obj["config"])
        model.weights_ = np.asarray(obj["weights"], dtype=np.float64)
        model.bias_ = float(obj["bias"])
        model.n_features_ = len(model.weights_)
        meta = obj.get("training_meta", {})
        model.epochs_run_ = meta.get("epochs_run")
        model.initial_loss_ = meta.get("initial_loss")
        model.final_loss_ = meta.get("final_loss")
        return model


class OneVsRestLogisticRegression(ParamsMixin):
    """Multiclass wrapper: one binary model per class, argmax probability.

    Ties break by the label taxonomy's canonical order. Classes absent from
    training do not exist in the model and can never be predicted.
    """

    def __init__(
        self,
        l2_lambda: float = 1.0,
        max_epochs: int = 1000,
        tol: float = 1e-6,
    ):
        self.l2_lambda = l2_lambda
        self.max_epochs = max_epochs
        self.tol = tol
        self.classes_: list | None = None
        self.models_: dict | None = None

    def fit(self, X: Sequence[SparseVector], y: Sequence) -> "OneVsRestLogisticRegression":
        X, y = check_X_y(X, y)
        classes = sort_canonical(set(y))
        if len(classes) < 2:
            raise ValueError(f"need at least 2 classes to train, got {len(classes)}")
        self.classes_ = classes
        self.models_ = {}
        for cls in classes:
            targets = [1 if label == cls else 0 for label in y]
            sub = BinaryLogisticRegression(
                l2_lambda=self.l2_lambda, max_epochs=self.max_epochs, tol=self.tol
            )
            self.models_[cls] = sub.fit(X, targets)
        return self

    def predict_scores(self, x: SparseVector) -> dict:
        check_is_fitted(self, "models_")
        return {cls: self.models_[cls].predict_proba(x) for cls in self.classes_}

    def predict(self, x: SparseVector):
        """(label, per-class probabilities); argmax with canonical tie-break."""
        scores = self.predict_scores(x)
        best = self.classes_[0]
        for cls in self.classes_[1:]:
            if scores[cls] > scores[best]:
                best = cls
        return best, scores

    def to_json_dict(self) -> dict:
        check_is_fitted(self, "models_")
        return {
            "type": "ovr_lr",
            "config": {
                "l2_lambda": self.l2_lambda,
                "max_epochs": self.max_epochs,
                "tol": self.tol,
            },
            "classes": [cls.value for cls in self.classes_],
            "models": {cls.value: self.models_[cls].to_json_dict() for cls in self.classes_},
        }

    @classmethod
    def from_json_dict(cls, obj: dict, label_cls) -> "OneVsRestLogisticRegression":
        model = cls(**obj["config"])
        model.classes_ = [label_cls(v) for v in obj["classes"]]
        model.models_ = {
            label_cls(v): BinaryLogisticRegression.from_json_dict(sub)
            for v, sub in obj["models"].items()
        }
        return model
