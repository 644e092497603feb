"""Training orchestration: corpus -> split -> vocabulary -> model -> report.

The trained model, its vocabulary, and the evaluation report are persisted
into the store's registry so the API and dashboard can serve them.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..classify import (
    HierarchicalClassifier,
    HybridClassifier,
    default_rule_candidates,
    filter_rules,
    fit_flat_classifier,
    load_model,
    save_model,
    score_rules,
)
from ..config import ModelConfig
from ..corpus import DatasetSplit, LabeledCorpus, stratified_split
from ..evaluation import (
    ActionabilityReport,
    ApplicabilityReport,
    evaluate_actionability,
    evaluate_applicability,
    save_report,
)
from ..features import Vocabulary, fit_vocabulary, vectorize
from ..labels import Provenance, Task
from .store import Store

MODES = ("flat", "hierarchical", "hybrid")
ALGOS = ("lr", "nb")


@dataclass
class TaskModels:
    """A trained model plus the vocabulary it speaks."""

    task: Task
    model: object
    vocab: Vocabulary

    def predict_text(self, text: str):
        """(label, confidence info) for one normalized document."""
        x = vectorize(text, self.vocab)
        prefix = self.task.value
        if isinstance(self.model, HybridClassifier):
            label = self.model.predict(text, x)
            info = {f"{prefix}_mode": "hybrid"}
            fallback = self.model.fallback
            if isinstance(fallback, HierarchicalClassifier):
                ml = fallback.predict(x)
                info[f"{prefix}_step1_prob"] = ml.step1_prob
                info[f"{prefix}_step2_prob"] = ml.step2_prob
            return label, info
        if isinstance(self.model, HierarchicalClassifier):
            pred = self.model.predict(x)
            return pred.label, {
                f"{prefix}_step1_prob": pred.step1_prob,
                f"{prefix}_step2_prob": pred.step2_prob,
            }
        label, scores = self.model.predict(x)
        return label, {
            f"{prefix}_scores": {cls.value: float(s) for cls, s in scores.items()}
        }

    @classmethod
    def load_from_store(cls, store: Store, task: Task) -> "TaskModels | None":
        model_path = store.model_path(task)
        vocab_path = store.vocab_path(task)
        if not model_path.exists() or not vocab_path.exists():
            return None
        vocab = Vocabulary.load(vocab_path)
        return cls(task=task, model=load_model(model_path, vocab), vocab=vocab)


def load_store_models(store: Store) -> dict[Task, TaskModels]:
    models = {}
    for task in Task:
        bundle = TaskModels.load_from_store(store, task)
        if bundle is not None:
            models[task] = bundle
    return models


def train_model(
    split: DatasetSplit,
    task: Task,
    algo: str = "lr",
    mode: str = "hierarchical",
    cfg: ModelConfig | None = None,
) -> TaskModels:
    cfg = cfg or ModelConfig()
    if algo not in ALGOS:
        raise ValueError(f"unknown algo {algo!r} (expected one of {ALGOS})")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r} (expected one of {MODES})")
    if task is Task.APPLICABILITY and mode != "flat":
        raise ValueError("applicability supports only the flat mode")

    train = list(split.train)
    texts = [ann.body for ann in train]
    labels = [ann.label_for(task) for ann in train]
    vocab = fit_vocabulary(texts)
    X = [vectorize(t, vocab) for t in texts]

    if mode == "flat":
        model = fit_flat_classifier(
            X,
            labels,
            algo=algo,
            l2_lambda=cfg.l2_lambda,
            max_epochs=cfg.max_epochs,
            tol=cfg.tol,
            alpha=cfg.nb_alpha,
        )
    else:
        hierarchical = HierarchicalClassifier(
            algo=algo,
            step1_threshold=cfg.step1_threshold,
            l2_lambda=cfg.l2_lambda,
            max_epochs=cfg.max_epochs,
            tol=cfg.tol,
            alpha=cfg.nb_alpha,
        ).fit(X, labels)
        if mode == "hierarchical":
            model = hierarchical
        else:
            scored = score_rules(default_rule_candidates(), train)
            ruleset = filter_rules(
                scored, threshold=cfg.rule_threshold, min_support=cfg.rule_min_support
            )
            model = HybridClassifier(ruleset=ruleset, fallback=hierarchical)

    return TaskModels(task=task, model=model, vocab=vocab)


def evaluate_split(bundle: TaskModels, split: DatasetSplit):
    gold = [ann.label_for(bundle.task) for ann in split.test]
    pred = [bundle.predict_text(ann.body)[0] for ann in split.test]
    if bundle.task is Task.ACTIONABILITY:
        return evaluate_actionability(gold, pred)
    return evaluate_applicability(gold, pred)


def train_and_evaluate(
    store: Store,
    task: Task,
    algo: str = "lr",
    mode: str = "hierarchical",
    cfg: ModelConfig | None = None,
    seed: int = 0,
    historical: LabeledCorpus | None = None,
) -> "ActionabilityReport | ApplicabilityReport":
    """Train on the store's gold+corrected data, persist model and report."""
    cfg = cfg or ModelConfig()
    sme = store.export_training_set(task)
    if len(sme) == 0:
        raise ValueError(f"store has no gold-labeled data for task {task.value!r}")
    if historical is None:
        historical = LabeledCorpus(provenance=Provenance.HISTORICAL, items=())
    split = stratified_split(sme, historical, cfg.test_fraction, seed, task)
    if not split.test:
        raise ValueError("test split is empty; not enough labeled data to evaluate")

    bundle = train_model(split, task, algo=algo, mode=mode, cfg=cfg)
    report = evaluate_split(bundle, split)

    save_model(bundle.model, bundle.vocab, store.model_path(task), task)
    bundle.vocab.save(store.vocab_path(task))
    save_report(report, store.report_path(task))
    return report
