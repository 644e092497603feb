"""Poll -> detect change -> normalize -> classify -> store, per source.

Fetch failures are recorded per source and never abort the batch. Sources
may be polled concurrently (they touch disjoint snapshots); all writes
funnel through the store's single writer lock.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from ..corpus import Announcement
from ..errors import RegtrackError
from ..ingest import (
    ChangeKind,
    FetchedItem,
    Fetcher,
    SourceDescriptor,
    SourceRegistry,
    detect_change,
    extract_effective_date,
    normalize,
    poll_source,
    tag_jurisdiction,
    take_snapshot,
)
from ..labels import LabelSource, Task
from .store import Store
from .training import TaskModels


@dataclass
class PipelineSummary:
    new: int = 0
    updated: int = 0
    unchanged: int = 0
    stored: int = 0
    predicted: dict = field(default_factory=dict)  # label value -> count
    errors: list = field(default_factory=list)  # [{source_id, error}]

    def count(self, kind: ChangeKind) -> None:
        if kind is ChangeKind.NEW:
            self.new += 1
        elif kind is ChangeKind.UPDATED:
            self.updated += 1
        else:
            self.unchanged += 1

    def to_json_dict(self) -> dict:
        return {
            "new": self.new,
            "updated": self.updated,
            "unchanged": self.unchanged,
            "stored": self.stored,
            "predicted": dict(self.predicted),
            "errors": list(self.errors),
        }


def announcement_id_for(source_id: str, url: str) -> str:
    """Stable id so re-ingesting an updated page upserts the same record."""
    return hashlib.sha256(f"{source_id}\x00{url}".encode("utf-8")).hexdigest()[:16]


def run_pipeline(
    store: Store,
    registry: SourceRegistry,
    fetcher: Fetcher,
    models: dict[Task, TaskModels] | None = None,
    gazetteer: dict | None = None,
    workers: int = 1,
) -> PipelineSummary:
    """One crawl pass over every registered source."""
    summary = PipelineSummary()
    sources = sorted(registry, key=lambda d: d.source_id)

    def poll(descriptor: SourceDescriptor):
        try:
            return descriptor, poll_source(descriptor, fetcher), None
        except RegtrackError as exc:
            return descriptor, [], exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            polled = list(pool.map(poll, sources))
    else:
        polled = [poll(d) for d in sources]

    for descriptor, items, error in polled:
        if error is not None:
            summary.errors.append({"source_id": descriptor.source_id, "error": str(error)})
            continue
        for item in items:
            try:
                _process_item(store, registry, descriptor, item, models, gazetteer, summary)
            except RegtrackError as exc:
                summary.errors.append({"source_id": descriptor.source_id, "error": str(exc)})
    return summary


def _process_item(
    store: Store,
    registry: SourceRegistry,
    descriptor: SourceDescriptor,
    item: FetchedItem,
    models: dict[Task, TaskModels] | None,
    gazetteer: dict | None,
    summary: PipelineSummary,
) -> None:
    text = normalize(item.content, url=item.url)
    curr = take_snapshot(descriptor.source_id, item, text)
    prev = store.get_snapshot(descriptor.source_id, item.url)
    event = detect_change(prev, curr)
    store.put_snapshot(curr)
    summary.count(event.kind)
    if event.kind is ChangeKind.UNCHANGED:
        return

    ann = Announcement(
        id=announcement_id_for(descriptor.source_id, item.url),
        source_id=descriptor.source_id,
        region=tag_jurisdiction(text, descriptor.source_id, registry, gazetteer),
        url=item.url,
        title=item.title or (text[:80].rstrip() + ("..." if len(text) > 80 else "")),
        body=text,
        published_date=item.published_date,
        content_length=len(item.content.data),
        effective_date=extract_effective_date(text),
    )

    if item.gold_actionability is not None or item.gold_applicability is not None:
        # fixture sidecars carrying expert labels import as gold data
        ann = replace(
            ann,
            actionability=item.gold_actionability,
            applicability=item.gold_applicability,
            label_source=LabelSource.GOLD,
        )
    elif models:
        prediction: dict = {}
        for task in (Task.ACTIONABILITY, Task.APPLICABILITY):
            task_models = models.get(task)
            if task_models is None:
                continue
            label, info = task_models.predict_text(text)
            ann = ann.with_label(task, label, LabelSource.PREDICTED)
            prediction.update(info)
            summary.predicted[label.value] = summary.predicted.get(label.value, 0) + 1
        if prediction:
            store.record_prediction(ann.id, prediction)

    store.put_announcement(ann)
    summary.stored += 1
