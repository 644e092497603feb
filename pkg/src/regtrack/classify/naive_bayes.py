"""Multinomial naive Bayes with Laplace smoothing, computed in log space."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..base import ParamsMixin, check_is_fitted
from ..corpus import sort_canonical
from ..features import CsrMatrix, SparseVector
from ..validation import check_dimension, check_X_y


class MultinomialNaiveBayes(ParamsMixin):
    """Generative classifier over term counts.

    prior(k) = n_k / n
    P(term t | k) = (count(t, k) + alpha) / (total_count(k) + alpha * |V|)

    Log-posteriors are log prior + sum over terms of count * log likelihood;
    argmax ties break by the label taxonomy's canonical order.
    """

    def __init__(self, alpha: float = 1.0):
        self.alpha = alpha
        self.classes_: list | None = None
        self.class_log_prior_: np.ndarray | None = None
        self.term_log_prob_: np.ndarray | None = None
        self.n_features_: int | None = None

    def fit(self, X: Sequence[SparseVector], y: Sequence) -> "MultinomialNaiveBayes":
        X, y = check_X_y(X, y)
        if self.alpha <= 0:
            raise ValueError("alpha must be > 0")
        classes = sort_canonical(set(y))
        mat = CsrMatrix.from_vectors(X)
        n_docs, n_features = mat.shape

        log_priors = np.empty(len(classes), dtype=np.float64)
        log_probs = np.empty((len(classes), n_features), dtype=np.float64)
        labels = np.asarray([classes.index(label) for label in y])
        for k, _ in enumerate(classes):
            mask = labels == k
            n_k = int(np.sum(mask))
            log_priors[k] = np.log(n_k / n_docs)
            term_counts = mat.class_term_counts(mask)
            total = float(np.sum(term_counts))
            log_probs[k] = np.log(term_counts + self.alpha) - np.log(
                total + self.alpha * n_features
            )

        self.classes_ = classes
        self.class_log_prior_ = log_priors
        self.term_log_prob_ = log_probs
        self.n_features_ = n_features
        return self

    def log_posteriors(self, x: SparseVector) -> dict:
        check_is_fitted(self, "classes_")
        check_dimension(x, self.n_features_)
        out = {}
        for k, cls in enumerate(self.classes_):
            score = float(self.class_log_prior_[k])
            row = self.term_log_prob_[k]
            for idx, count in x.entries:
                score += count * float(row[idx])
            out[cls] = score
        return out

    def predict(self, x: SparseVector):
        """(label, per-class log-posteriors); canonical tie-break on argmax."""
        posteriors = self.log_posteriors(x)
        best = self.classes_[0]
        for cls in self.classes_[1:]:
            if posteriors[cls] > posteriors[best]:
                best = cls
        return best, posteriors

    def predict_scores(self, x: SparseVector) -> dict:
        """Posterior probabilities (softmax of the log-posteriors)."""
        logs = self.log_posteriors(x)
        values = np.asarray([logs[c] for c in self.classes_])
        values -= np.max(values)
        probs = np.exp(values)
        probs /= np.sum(probs)
        return {cls: float(p) for cls, p in zip(self.classes_, probs)}

    def to_json_dict(self) -> dict:
        check_is_fitted(self, "classes_")
        return {
            "type": "naive_bayes",
            "config": {"alpha": self.alpha},
            "classes": [getattr(c, "value", c) for c in self.classes_],
            "class_log_prior": self.class_log_prior_.tolist(),
            "term_log_prob": self.term_log_prob_.tolist(),
        }

    @classmethod
    def from_json_dict(cls, obj: dict, label_cls=None) -> "MultinomialNaiveBayes":
        model = cls(**obj["config"])
        model.classes_ = [label_cls(v) if label_cls else v for v in obj["classes"]]
        model.class_log_prior_ = np.asarray(obj["class_log_prior"], dtype=np.float64)
        model.term_log_prob_ = np.asarray(obj["term_log_prob"], dtype=np.float64)
        model.n_features_ = model.term_log_prob_.shape[1]
        return model


class BinaryNaiveBayes(MultinomialNaiveBayes):
    """Naive Bayes restricted to 0/1 targets, exposing P(1) like the binary LR."""

    def fit(self, X: Sequence[SparseVector], y: Sequence[int]) -> "BinaryNaiveBayes":
        values = set(y)
        if not values <= {0, 1} or len(values) < 2:
            raise ValueError("binary targets must contain both 0 and 1")
        super().fit(X, [int(v) for v in y])
        return self

    def predict_proba(self, x: SparseVector) -> float:
        return self.predict_scores(x)[1]
