import numpy as np
import pytest

from regtrack.classify.linear import (
    BinaryLogisticRegression,
    OneVsRestLogisticRegression,
    lr_gradient,
    lr_loss,
)
from regtrack.errors import NotFittedError
from regtrack.features import CsrMatrix, SparseVector, fit_vocabulary, vectorize
from regtrack.labels import ActionabilityLabel, ApplicabilityLabel

AR = ActionabilityLabel.ACTION_REQUIRED
IO = ActionabilityLabel.INFORMATION_ONLY
IRR = ActionabilityLabel.IRRELEVANT


def random_problem(rng, n_docs=6, n_features=5):
    vectors = []
    for _ in range(n_docs):
        entries = []
        for j in range(n_features):
            if rng.random() < 0.5:
                entries.append((j, int(rng.integers(1, 4))))
        vectors.append(SparseVector(entries=tuple(entries), dimension=n_features))
    y = rng.integers(0, 2, size=n_docs).astype(np.float64)
    w = rng.normal(size=n_features)
    b = float(rng.normal())
    lam = float(rng.uniform(0.0, 2.0))
    return CsrMatrix.from_vectors(vectors), y, w, b, lam


def finite_difference_gradient(X, y, w, b, lam, h=1e-5):
    """Central-difference oracle over the loss, independent of lr_gradient."""
    grad_w = np.zeros_like(w)
    for j in range(len(w)):
        up, down = w.copy(), w.copy()
        up[j] += h
        down[j] -= h
        grad_w[j] = (lr_loss(X, y, up, b, lam) - lr_loss(X, y, down, b, lam)) / (2 * h)
    grad_b = (lr_loss(X, y, w, b + h, lam) - lr_loss(X, y, w, b - h, lam)) / (2 * h)
    return grad_w, grad_b


def separable_corpus(n_docs=100):
    """Docs where a class-indicative token appears only in its own class."""
    texts, labels = [], []
    for i in range(n_docs):
        if i % 2 == 0:
            texts.append(f"new withholding rate change notice {i % 7}")
            labels.append(1)
        else:
            texts.append(f"library hours holiday schedule notice {i % 7}")
            labels.append(0)
    vocab = fit_vocabulary(texts)
    return [vectorize(t, vocab) for t in texts], labels, vocab


class TestGradient:
    def test_matches_finite_differences_at_20_random_points(self):
        rng = np.random.default_rng(1234)
        for _ in range(20):
            X, y, w, b, lam = random_problem(rng)
            ga_w, ga_b = lr_gradient(X, y, w, b, lam)
            fd_w, fd_b = finite_difference_gradient(X, y, w, b, lam)
            analytic = np.append(ga_w, ga_b)
            numeric = np.append(fd_w, fd_b)
            denom = max(1.0, float(np.linalg.norm(analytic)), float(np.linalg.norm(numeric)))
            rel = float(np.linalg.norm(analytic - numeric)) / denom
            assert rel < 1e-5


class TestTraining:
    def test_separable_pair_weights_signs(self):
        vocab = fit_vocabulary(["tax", "leave"])
        X = [vectorize("tax", vocab), vectorize("leave", vocab)]
        model = BinaryLogisticRegression(l2_lambda=0.01).fit(X, [1, 0])
        w_leave = model.weights_[vocab.index["leave"]]
        w_tax = model.weights_[vocab.index["tax"]]
        assert w_tax > 0
        assert w_leave < 0

    def test_loss_non_increasing_and_recorded(self):
        X, y, _ = separable_corpus(40)
        model = BinaryLogisticRegression(max_epochs=50).fit(X, y)
        assert model.final_loss_ <= model.initial_loss_
        assert model.epochs_run_ <= 50

    def test_loss_monotone_across_partial_runs(self):
        X, y, _ = separable_corpus(40)
        losses = [
            BinaryLogisticRegression(max_epochs=n).fit(X, y).final_loss_
            for n in (1, 2, 5, 10, 25)
        ]
        assert all(a >= b for a, b in zip(losses, losses[1:]))

    def test_separable_corpus_accuracy(self):
        X, y, _ = separable_corpus(100)
        model = BinaryLogisticRegression().fit(X, y)
        correct = sum(1 for x, label in zip(X, y) if model.predict(x)[1] == label)
        assert correct / len(y) >= 0.99

    def test_large_l2_shrinks_weights(self):
        X, y, _ = separable_corpus(30)
        model = BinaryLogisticRegression(l2_lambda=1e6, max_epochs=2000).fit(X, y)
        assert float(np.max(np.abs(model.weights_))) < 1e-3

    def test_deterministic_weights(self):
        X, y, _ = separable_corpus(30)
        a = BinaryLogisticRegression().fit(X, y)
        b = BinaryLogisticRegression().fit(X, y)
        assert np.array_equal(a.weights_, b.weights_)
        assert a.bias_ == b.bias_

    def test_single_class_rejected(self):
        X, _, _ = separable_corpus(10)
        with pytest.raises(ValueError, match="single class"):
            BinaryLogisticRegression().fit(X, [1] * 10)

    def test_length_mismatch_rejected(self):
        X, _, _ = separable_corpus(10)
        with pytest.raises(ValueError, match="mismatch"):
            BinaryLogisticRegression().fit(X, [0, 1])


class TestPredict:
    def test_zero_model_gives_half(self):
        X, y, vocab = separable_corpus(10)
        model = BinaryLogisticRegression(max_epochs=0).fit(X, y)
        p, label = model.predict(X[0])
        assert p == 0.5
        assert label == 1  # boundary inclusive

    def test_bias_saturation(self):
        model = BinaryLogisticRegression()
        model.weights_ = np.zeros(3)
        model.bias_ = 10.0
        model.n_features_ = 3
        p = model.predict_proba(SparseVector(entries=(), dimension=3))
        assert p > 0.9999

    def test_below_threshold_is_zero(self):
        model = BinaryLogisticRegression(threshold=0.5)
        model.weights_ = np.zeros(1)
        model.bias_ = -0.04  # sigmoid(-0.04) ~ 0.49
        model.n_features_ = 1
        p, label = model.predict(SparseVector(entries=(), dimension=1))
        assert p < 0.5
        assert label == 0

    def test_dimension_mismatch(self):
        X, y, _ = separable_corpus(10)
        model = BinaryLogisticRegression(max_epochs=1).fit(X, y)
        with pytest.raises(ValueError, match="dimension"):
            model.predict_proba(SparseVector(entries=(), dimension=1))

    def test_unfitted(self):
        with pytest.raises(NotFittedError):
            BinaryLogisticRegression().predict_proba(SparseVector(entries=(), dimension=1))


def three_class_fixture():
    texts = {
        AR: ["withholding tables revised", "wage base increases", "new tax rate applies"],
        IO: ["benefit report published", "proposed rule open", "leave guidance issued"],
        IRR: ["drilling rules adopted", "hotel tax amended", "license fees unchanged"],
    }
    docs, labels = [], []
    for label, samples in texts.items():
        for s in samples * 3:
            docs.append(s)
            labels.append(label)
    vocab = fit_vocabulary(docs)
    return [vectorize(t, vocab) for t in docs], labels, vocab


class TestOneVsRest:
    def test_actionability_three_submodels(self):
        X, y, _ = three_class_fixture()
        model = OneVsRestLogisticRegression().fit(X, y)
        assert model.classes_ == [AR, IO, IRR]
        assert set(model.models_) == {AR, IO, IRR}

    def test_applicability_six_submodels_alphabetical(self):
        labels = list(ApplicabilityLabel)
        texts = [f"{label.value.lower()} topic document {i}" for label in labels for i in range(3)]
        y = [label for label in labels for _ in range(3)]
        vocab = fit_vocabulary(texts)
        X = [vectorize(t, vocab) for t in texts]
        model = OneVsRestLogisticRegression().fit(X, y)
        assert model.classes_ == [
            ApplicabilityLabel.BENEFITS,
            ApplicabilityLabel.EXPATS,
            ApplicabilityLabel.HR,
            ApplicabilityLabel.OTHERS,
            ApplicabilityLabel.PAYROLL,
            ApplicabilityLabel.TAX_FILING,
        ]

    def test_deterministic_training(self):
        X, y, _ = three_class_fixture()
        a = OneVsRestLogisticRegression().fit(X, y)
        b = OneVsRestLogisticRegression().fit(X, y)
        for cls in a.classes_:
            assert np.array_equal(a.models_[cls].weights_, b.models_[cls].weights_)

    def test_argmax_and_canonical_tie_break(self):
        X, y, vocab = three_class_fixture()
        model = OneVsRestLogisticRegression().fit(X, y)
        label, scores = model.predict(vectorize("withholding tables revised", vocab))
        assert label is AR
        assert scores[AR] == max(scores.values())

    def test_all_zero_weights_pick_first_class(self):
        X, y, _ = three_class_fixture()
        model = OneVsRestLogisticRegression(max_epochs=0).fit(X, y)
        label, scores = model.predict(SparseVector(entries=(), dimension=X[0].dimension))
        assert len(set(scores.values())) == 1  # exact tie
        assert label is AR

    def test_fewer_than_two_classes_rejected(self):
        X, _, _ = three_class_fixture()
        with pytest.raises(ValueError, match="2 classes"):
            OneVsRestLogisticRegression().fit(X, [AR] * len(X))

    def test_scale_invariant_argmax(self):
        # scaling all probabilities by a positive constant keeps the argmax
        scores = {AR: 0.7, IO: 0.2, IRR: 0.1}
        for k in (0.5, 2.0, 10.0):
            scaled = {cls: v * k for cls, v in scores.items()}
            assert max(scaled, key=scaled.get) is AR
