"""Announcement records, labeled corpora, and the stratified train/test split.

Corpora are exchanged as JSONL: one announcement object per line with the
field names fixed by the schema below. Splits hold 100% of historical items
in train and a seeded, per-class share (30% by default) of SME items in
test; test data only ever comes from SME-annotated documents because that
is what the deployed classifier sees.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field, replace
from datetime import date, datetime, timezone
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import IO, Iterable, Iterator

from .errors import CorpusFormatError
from .labels import (
    ActionabilityLabel,
    ApplicabilityLabel,
    LabelSource,
    Provenance,
    Task,
    canonical_index,
    parse_label,
)

# JSONL field order; names are part of the interchange contract.
ANNOUNCEMENT_FIELDS = (
    "id",
    "source_id",
    "region",
    "url",
    "title",
    "body",
    "published_date",
    "fetched_at",
    "content_length",
    "effective_date",
    "actionability",
    "applicability",
    "label_source",
)


@dataclass
class Announcement:
    """One regulatory news document, possibly labeled."""

    id: str
    source_id: str
    region: str
    url: str
    title: str
    body: str
    published_date: date | None = None
    fetched_at: datetime = field(
        default_factory=lambda: datetime.now(timezone.utc).replace(microsecond=0)
    )
    content_length: int = 0
    effective_date: date | None = None
    actionability: ActionabilityLabel | None = None
    applicability: ApplicabilityLabel | None = None
    label_source: LabelSource | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("announcement id must be non-empty")
        if self.content_length < 0:
            raise ValueError(f"content_length must be >= 0, got {self.content_length}")

    def label_for(self, task: Task):
        if task is Task.ACTIONABILITY:
            return self.actionability
        return self.applicability

    def with_label(self, task: Task, label, source: LabelSource) -> "Announcement":
        if task is Task.ACTIONABILITY:
            return replace(self, actionability=label, label_source=source)
        return replace(self, applicability=label, label_source=source)

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "source_id": self.source_id,
            "region": self.region,
            "url": self.url,
            "title": self.title,
            "body": self.body,
            "published_date": self.published_date.isoformat() if self.published_date else None,
            "fetched_at": self.fetched_at.isoformat(),
            "content_length": self.content_length,
            "effective_date": self.effective_date.isoformat() if self.effective_date else None,
            "actionability": self.actionability.value if self.actionability else None,
            "applicability": self.applicability.value if self.applicability else None,
            "label_source": self.label_source.value if self.label_source else None,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Announcement":
        missing = [k for k in ("id", "source_id", "region", "url", "title", "body") if k not in obj]
        if missing:
            raise ValueError(f"missing required fields: {', '.join(missing)}")
        return cls(
            id=str(obj["id"]),
            source_id=str(obj["source_id"]),
            region=str(obj["region"]),
            url=str(obj["url"]),
            title=str(obj["title"]),
            body=str(obj["body"]),
            published_date=_parse_date(obj.get("published_date")),
            fetched_at=_parse_datetime(obj.get("fetched_at")),
            content_length=int(obj.get("content_length") or 0),
            effective_date=_parse_date(obj.get("effective_date")),
            actionability=(
                parse_label(ActionabilityLabel, obj["actionability"])
                if obj.get("actionability") is not None
                else None
            ),
            applicability=(
                parse_label(ApplicabilityLabel, obj["applicability"])
                if obj.get("applicability") is not None
                else None
            ),
            label_source=(
                parse_label(LabelSource, obj["label_source"])
                if obj.get("label_source") is not None
                else None
            ),
        )


def _parse_date(raw) -> date | None:
    if raw is None or raw == "":
        return None
    return date.fromisoformat(raw)


def _parse_datetime(raw) -> datetime:
    if raw is None or raw == "":
        return datetime.now(timezone.utc).replace(microsecond=0)
    return datetime.fromisoformat(raw)


@dataclass(frozen=True)
class LabeledCorpus:
    """Gold-labeled announcements of homogeneous provenance."""

    provenance: Provenance
    items: tuple[Announcement, ...]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Announcement]:
        return iter(self.items)

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        for item in self.items:
            h.update(item.id.encode("utf-8"))
            h.update(b"\x00")
        return h.hexdigest()


@dataclass(frozen=True)
class DatasetSplit:
    """Disjoint train/test partition of labeled announcements."""

    train: tuple[Announcement, ...]
    test: tuple[Announcement, ...]


def load_corpus(path: str | Path, provenance: Provenance) -> LabeledCorpus:
    """Read a JSONL corpus file; every record must carry at least one gold label.

    Parse failures and unknown label strings raise CorpusFormatError carrying
    the offending 1-based line number.
    """
    items = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(line_no, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(obj, dict):
                raise CorpusFormatError(line_no, "expected a JSON object")
            try:
                ann = Announcement.from_json_dict(obj)
            except ValueError as exc:
                raise CorpusFormatError(line_no, str(exc)) from exc
            if ann.actionability is None and ann.applicability is None:
                raise CorpusFormatError(
                    line_no, f"record {ann.id!r} has no gold label for any task"
                )
            items.append(ann)
    return LabeledCorpus(provenance=provenance, items=tuple(items))


def save_corpus(items: Iterable[Announcement], fh: IO[str]) -> int:
    """Write announcements as JSONL; returns the record count."""
    n = 0
    for ann in items:
        fh.write(json.dumps(ann.to_json_dict(), ensure_ascii=False) + "\n")
        n += 1
    return n


def class_counts(corpus: LabeledCorpus, task: Task) -> dict:
    """Per-label item counts (zero-filled over the task's full label set)."""
    counts = {label: 0 for label in task.labels}
    for ann in corpus:
        label = ann.label_for(task)
        if label is None:
            raise ValueError(f"announcement {ann.id!r} has no {task.value} label")
        counts[label] += 1
    return counts


def round_half_up(x: float, ndigits: int = 0) -> float:
    """Decimal round-half-up (0.5 always rounds away from zero toward +inf)."""
    q = Decimal(1).scaleb(-ndigits)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


def stratified_split(
    sme: LabeledCorpus,
    historical: LabeledCorpus,
    test_fraction: float,
    seed: int,
    task: Task,
) -> DatasetSplit:
    """Seeded per-class split: test gets round-half-up(test_fraction * n_k)
    SME items of each class k; everything else, plus all historical items,
    trains. Historical items never reach the test side.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")

    by_class: dict = {label: [] for label in task.labels}
    for ann in sme:
        label = ann.label_for(task)
        if label is None:
            raise ValueError(f"SME announcement {ann.id!r} has no {task.value} label")
        by_class[label].append(ann)
    for ann in historical:
        if ann.label_for(task) is None:
            raise ValueError(f"historical announcement {ann.id!r} has no {task.value} label")

    rng = random.Random(seed)
    test: list[Announcement] = []
    train: list[Announcement] = []
    for label in task.labels:  # canonical order keeps the draw deterministic
        members = sorted(by_class[label], key=lambda a: a.id)
        n_test = int(round_half_up(test_fraction * len(members)))
        chosen = set(rng.sample(range(len(members)), n_test)) if n_test else set()
        for i, ann in enumerate(members):
            (test if i in chosen else train).append(ann)
    train.extend(historical.items)
    return DatasetSplit(train=tuple(train), test=tuple(test))


def sort_canonical(labels) -> list:
    """Sort labels by their taxonomy's canonical tie-break order.

    Non-taxonomy labels (e.g. 0/1 targets) fall back to natural ordering.
    """
    items = list(labels)
    try:
        return sorted(items, key=canonical_index)
    except KeyError:
        return sorted(items)
