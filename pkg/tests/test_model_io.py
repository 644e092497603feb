import numpy as np
import pytest

from regtrack.classify import (
    HierarchicalClassifier,
    HybridClassifier,
    MultinomialNaiveBayes,
    OneVsRestLogisticRegression,
    filter_rules,
    load_model,
    save_model,
    score_rules,
)
from regtrack.errors import VocabularyMismatchError
from regtrack.features import fit_vocabulary, vectorize
from regtrack.labels import ActionabilityLabel, Task

from .conftest import corpus_of, make_announcement

AR = ActionabilityLabel.ACTION_REQUIRED
IO = ActionabilityLabel.INFORMATION_ONLY
IRR = ActionabilityLabel.IRRELEVANT


@pytest.fixture(scope="module")
def training():
    texts = {
        AR: ["withholding tables revised now", "wage base increases again"],
        IO: ["benefit report published today", "proposed rule open comment"],
        IRR: ["drilling rules adopted here", "hotel tax amended quietly"],
    }
    docs, labels = [], []
    for label, samples in texts.items():
        for s in samples * 3:
            docs.append(s)
            labels.append(label)
    vocab = fit_vocabulary(docs)
    X = [vectorize(t, vocab) for t in docs]
    return docs, labels, vocab, X


class TestSaveLoad:
    def test_ovr_round_trip(self, training, tmp_path):
        docs, labels, vocab, X = training
        model = OneVsRestLogisticRegression().fit(X, labels)
        path = tmp_path / "m.json"
        save_model(model, vocab, path, Task.ACTIONABILITY)
        loaded = load_model(path, vocab)
        assert loaded.classes_ == model.classes_
        for cls in model.classes_:
            assert np.array_equal(loaded.models_[cls].weights_, model.models_[cls].weights_)
        x = vectorize("withholding tables revised", vocab)
        assert loaded.predict(x)[0] is model.predict(x)[0]

    def test_nb_round_trip(self, training, tmp_path):
        docs, labels, vocab, X = training
        model = MultinomialNaiveBayes().fit(X, labels)
        path = tmp_path / "m.json"
        save_model(model, vocab, path, Task.ACTIONABILITY)
        loaded = load_model(path, vocab)
        x = vectorize("benefit report", vocab)
        assert loaded.predict(x)[0] is model.predict(x)[0]
        assert np.allclose(loaded.term_log_prob_, model.term_log_prob_)

    def test_hierarchical_round_trip(self, training, tmp_path):
        docs, labels, vocab, X = training
        model = HierarchicalClassifier().fit(X, labels)
        path = tmp_path / "m.json"
        save_model(model, vocab, path, Task.ACTIONABILITY)
        loaded = load_model(path, vocab)
        x = vectorize("hotel tax amended", vocab)
        assert loaded.predict(x) == model.predict(x)

    def test_hybrid_round_trip(self, training, tmp_path):
        docs, labels, vocab, X = training
        corpus = corpus_of(
            [
                make_announcement(f"d{i}", body=doc, actionability=label)
                for i, (doc, label) in enumerate(zip(docs, labels))
            ]
        )
        ruleset = filter_rules(
            score_rules([("withholding", AR), ("hotel", IRR)], corpus), min_support=2
        )
        fallback = HierarchicalClassifier().fit(X, labels)
        model = HybridClassifier(ruleset=ruleset, fallback=fallback)
        path = tmp_path / "m.json"
        save_model(model, vocab, path, Task.ACTIONABILITY)
        loaded = load_model(path, vocab)
        assert loaded.ruleset == model.ruleset
        text = "withholding tables revised"
        x = vectorize(text, vocab)
        assert loaded.predict(text, x) is model.predict(text, x)

    def test_vocabulary_mismatch_rejected(self, training, tmp_path):
        docs, labels, vocab, X = training
        model = OneVsRestLogisticRegression().fit(X, labels)
        path = tmp_path / "m.json"
        save_model(model, vocab, path, Task.ACTIONABILITY)
        other_vocab = fit_vocabulary(["entirely different corpus text"])
        with pytest.raises(VocabularyMismatchError):
            load_model(path, other_vocab)
