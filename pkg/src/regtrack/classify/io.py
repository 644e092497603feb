"""Model persistence: one JSON document per model, stamped with the
fingerprint of the vocabulary it was trained against."""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import VocabularyMismatchError
from ..features import Vocabulary
from ..labels import ActionabilityLabel, ApplicabilityLabel, Task
from .hierarchy import HierarchicalClassifier, HybridClassifier
from .linear import BinaryLogisticRegression, OneVsRestLogisticRegression
from .naive_bayes import MultinomialNaiveBayes

_LABEL_CLASSES = {
    "actionability": ActionabilityLabel,
    "applicability": ApplicabilityLabel,
}


def save_model(model, vocab: Vocabulary, path: str | Path, task: Task) -> None:
    doc = model.to_json_dict()
    doc["task"] = task.value
    doc["vocab_fingerprint"] = vocab.fingerprint
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


def load_model(path: str | Path, vocab: Vocabulary):
    """Load a model JSON; reject it if the vocabulary fingerprint differs."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    stamp = doc.get("vocab_fingerprint")
    if stamp != vocab.fingerprint:
        raise VocabularyMismatchError(
            f"model {path} was trained against a different vocabulary "
            f"(model fingerprint {stamp}, supplied {vocab.fingerprint})"
        )
    label_cls = _LABEL_CLASSES[doc.get("task", "actionability")]
    kind = doc["type"]
    if kind == "binary_lr":
        return BinaryLogisticRegression.from_json_dict(doc)
    if kind == "ovr_lr":
        return OneVsRestLogisticRegression.from_json_dict(doc, label_cls)
    if kind == "naive_bayes":
        return MultinomialNaiveBayes.from_json_dict(doc, label_cls)
    if kind == "hierarchical":
        return HierarchicalClassifier.from_json_dict(doc)
    if kind == "hybrid":
        return HybridClassifier.from_json_dict(doc)
    raise ValueError(f"unknown model type {kind!r} in {path}")
