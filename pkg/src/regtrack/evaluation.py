"""Confusion matrices, per-class precision/recall/F1, and report tables.

Conventions baked in here:
  - any 0/0 division yields 0 (so a never-predicted class reports 0/0/0);
  - the synthetic Relevant class merges ActionRequired and InformationOnly
    in both gold and predicted labels before binary scoring;
  - the actionability Average column is the macro mean over the three
    original classes only, never the synthetic Relevant column;
  - display rounding is round-half-up, 2 decimals for P/R/F and whole
    percent for accuracy.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .corpus import round_half_up
from .labels import ActionabilityLabel, ApplicabilityLabel, RelevanceLabel, to_relevance

AR = ActionabilityLabel.ACTION_REQUIRED
IO = ActionabilityLabel.INFORMATION_ONLY
IRR = ActionabilityLabel.IRRELEVANT


@dataclass(frozen=True)
class ConfusionMatrix:
    classes: tuple
    counts: tuple[tuple[int, ...], ...]  # counts[gold][pred]

    def index(self, label) -> int:
        return self.classes.index(label)

    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def gold_count(self, label) -> int:
        return sum(self.counts[self.index(label)])

    def predicted_count(self, label) -> int:
        j = self.index(label)
        return sum(row[j] for row in self.counts)

    def tp(self, label) -> int:
        i = self.index(label)
        return self.counts[i][i]


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float

    def rounded(self) -> tuple[float, float, float]:
        return (
            round_half_up(self.precision, 2),
            round_half_up(self.recall, 2),
            round_half_up(self.f1, 2),
        )

    def cell(self) -> str:
        p, r, f = self.rounded()
        return f"{p:.2f}/{r:.2f}/{f:.2f}"


def confusion(gold: Sequence, pred: Sequence, classes: Sequence) -> ConfusionMatrix:
    if len(gold) == 0:
        raise ValueError("cannot build a confusion matrix from zero items")
    if len(gold) != len(pred):
        raise ValueError(f"gold/pred length mismatch: {len(gold)} != {len(pred)}")
    classes = tuple(classes)
    index = {label: i for i, label in enumerate(classes)}
    counts = [[0] * len(classes) for _ in classes]
    for g, p in zip(gold, pred):
        if g not in index:
            raise ValueError(f"gold label {g!r} not in class list")
        if p not in index:
            raise ValueError(f"predicted label {p!r} not in class list")
        counts[index[g]][index[p]] += 1
    return ConfusionMatrix(classes=classes, counts=tuple(tuple(row) for row in counts))


def prf(tp: int, fp: int, fn: int) -> ClassMetrics:
    """Precision/recall/F1 with the 0/0 -> 0 convention."""
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return ClassMetrics(precision=precision, recall=recall, f1=f1)


def class_prf(cm: ConfusionMatrix, label) -> ClassMetrics:
    tp = cm.tp(label)
    fp = cm.predicted_count(label) - tp
    fn = cm.gold_count(label) - tp
    return prf(tp, fp, fn)


def accuracy(cm: ConfusionMatrix) -> float:
    total = cm.total()
    if total == 0:
        raise ValueError("empty confusion matrix")
    trace = sum(cm.counts[i][i] for i in range(len(cm.classes)))
    return trace / total


def relevant_metrics(
    gold: Sequence[ActionabilityLabel], pred: Sequence[ActionabilityLabel]
) -> ClassMetrics:
    """Binary P/R/F for the merged Relevant class (AR+IO on both sides)."""
    g = [to_relevance(label) for label in gold]
    p = [to_relevance(label) for label in pred]
    tp = sum(
        1
        for a, b in zip(g, p)
        if a is RelevanceLabel.RELEVANT and b is RelevanceLabel.RELEVANT
    )
    fp = sum(
        1
        for a, b in zip(g, p)
        if a is RelevanceLabel.IRRELEVANT and b is RelevanceLabel.RELEVANT
    )
    fn = sum(
        1
        for a, b in zip(g, p)
        if a is RelevanceLabel.RELEVANT and b is RelevanceLabel.IRRELEVANT
    )
    return prf(tp, fp, fn)


def macro_average(per_class: Sequence[ClassMetrics]) -> ClassMetrics:
    """Arithmetic mean of precision, recall, and F1, each independently.

    fsum keeps the result independent of class order.
    """
    n = len(per_class)
    if n == 0:
        raise ValueError("macro average needs at least one class")
    return ClassMetrics(
        precision=math.fsum(m.precision for m in per_class) / n,
        recall=math.fsum(m.recall for m in per_class) / n,
        f1=math.fsum(m.f1 for m in per_class) / n,
    )


@dataclass(frozen=True)
class ActionabilityReport:
    accuracy: float
    action_required: ClassMetrics
    information_only: ClassMetrics
    irrelevant: ClassMetrics
    relevant: ClassMetrics
    average: ClassMetrics  # macro over the three original classes only

    def per_class(self, label: ActionabilityLabel) -> ClassMetrics:
        return {
            AR: self.action_required,
            IO: self.information_only,
            IRR: self.irrelevant,
        }[label]

    def accuracy_percent(self) -> int:
        return int(round_half_up(self.accuracy * 100))

    def to_json_dict(self) -> dict:
        return {
            "task": "actionability",
            "accuracy": self.accuracy,
            "classes": {
                "ActionRequired": _metrics_dict(self.action_required),
                "InformationOnly": _metrics_dict(self.information_only),
                "Relevant": _metrics_dict(self.relevant),
                "Irrelevant": _metrics_dict(self.irrelevant),
            },
            "average": _metrics_dict(self.average),
        }

    def render_table(self) -> str:
        headers = [
            "Accuracy",
            "ActionRequired (P/R/F)",
            "InformationOnly",
            "Relevant",
            "Irrelevant",
            "Average",
        ]
        row = [
            f"{self.accuracy_percent()}%",
            self.action_required.cell(),
            self.information_only.cell(),
            self.relevant.cell(),
            self.irrelevant.cell(),
            self.average.cell(),
        ]
        return _render_aligned(headers, [row])


@dataclass(frozen=True)
class ApplicabilityReport:
    accuracy: float
    per_class: dict  # ApplicabilityLabel -> ClassMetrics, canonical order
    average: ClassMetrics  # macro over all six classes

    def accuracy_percent(self) -> int:
        return int(round_half_up(self.accuracy * 100))

    def to_json_dict(self) -> dict:
        return {
            "task": "applicability",
            "accuracy": self.accuracy,
            "classes": {
                label.value: _metrics_dict(m) for label, m in self.per_class.items()
            },
            "average": _metrics_dict(self.average),
        }

    def render_table(self) -> str:
        headers = ["Accuracy"] + [label.value for label in self.per_class] + ["Average"]
        row = [f"{self.accuracy_percent()}%"]
        row.extend(m.cell() for m in self.per_class.values())
        row.append(self.average.cell())
        return _render_aligned(headers, [row])


def _metrics_dict(m: ClassMetrics) -> dict:
    return {"precision": m.precision, "recall": m.recall, "f1": m.f1}


def _metrics_from_dict(obj: dict) -> ClassMetrics:
    return ClassMetrics(
        precision=float(obj["precision"]),
        recall=float(obj["recall"]),
        f1=float(obj["f1"]),
    )


def _render_aligned(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        " | ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "-+-".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append(" | ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
    return "\n".join(lines)


def evaluate_actionability(
    gold: Sequence[ActionabilityLabel], pred: Sequence[ActionabilityLabel]
) -> ActionabilityReport:
    """Score final composite labels against the original gold labels.

    Hierarchical and hybrid predictions are passed in as their final labels,
    so a step-1 false negative shows up as both an ActionRequired (or
    InformationOnly) miss and a Relevant miss.
    """
    cm = confusion(gold, pred, list(ActionabilityLabel))
    per_class = {label: class_prf(cm, label) for label in ActionabilityLabel}
    return ActionabilityReport(
        accuracy=accuracy(cm),
        action_required=per_class[AR],
        information_only=per_class[IO],
        irrelevant=per_class[IRR],
        relevant=relevant_metrics(gold, pred),
        average=macro_average([per_class[AR], per_class[IO], per_class[IRR]]),
    )


def evaluate_applicability(
    gold: Sequence[ApplicabilityLabel], pred: Sequence[ApplicabilityLabel]
) -> ApplicabilityReport:
    """Six-class report; the Average column macro-averages all six classes,
    including any 0/0/0 ones."""
    cm = confusion(gold, pred, list(ApplicabilityLabel))
    per_class = {label: class_prf(cm, label) for label in ApplicabilityLabel}
    return ApplicabilityReport(
        accuracy=accuracy(cm),
        per_class=per_class,
        average=macro_average(list(per_class.values())),
    )


def save_report(report, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report.to_json_dict(), indent=2), encoding="utf-8")


def load_report(path: str | Path):
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    return report_from_json_dict(obj)


def report_from_json_dict(obj: dict):
    if obj.get("task") == "applicability":
        return ApplicabilityReport(
            accuracy=float(obj["accuracy"]),
            per_class={
                label: _metrics_from_dict(obj["classes"][label.value])
                for label in ApplicabilityLabel
            },
            average=_metrics_from_dict(obj["average"]),
        )
    return ActionabilityReport(
        accuracy=float(obj["accuracy"]),
        action_required=_metrics_from_dict(obj["classes"]["ActionRequired"]),
        information_only=_metrics_from_dict(obj["classes"]["InformationOnly"]),
        relevant=_metrics_from_dict(obj["classes"]["Relevant"]),
        irrelevant=_metrics_from_dict(obj["classes"]["Irrelevant"]),
        average=_metrics_from_dict(obj["average"]),
    )
