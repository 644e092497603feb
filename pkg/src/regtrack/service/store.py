"""File-backed announcement store: append-only JSONL segments plus an
in-memory index.

All mutations funnel through a single lock; reads are lock-free over
immutable records. Replaying the segments at startup rebuilds the exact
store state (upsert logs keep the latest record per key, the annotation log
is append-only by construction).
"""

from __future__ import annotations

import csv
import enum
import io
import json
import threading
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path

from ..corpus import Announcement, LabeledCorpus
from ..errors import ScopeError, StoreError
from ..ingest import Snapshot
from ..labels import (
    ActionabilityLabel,
    ApplicabilityLabel,
    LabelSource,
    Provenance,
    Task,
)
from .auth import UserProfile, make_user

CSV_COLUMNS = (
    "id",
    "source_id",
    "region",
    "url",
    "title",
    "published_date",
    "effective_date",
    "actionability",
    "applicability",
    "label_source",
)


class Verdict(enum.Enum):
    CORRECT = "Correct"
    INCORRECT = "Incorrect"


@dataclass(frozen=True)
class AnnotationRecord:
    announcement_id: str
    user_id: str
    verdict: Verdict
    corrected_actionability: ActionabilityLabel | None = None
    corrected_applicability: ApplicabilityLabel | None = None
    reason: str = ""
    created_at: datetime = field(
        default_factory=lambda: datetime.now(timezone.utc).replace(microsecond=0)
    )

    def __post_init__(self) -> None:
        has_correction = (
            self.corrected_actionability is not None or self.corrected_applicability is not None
        )
        if self.verdict is Verdict.INCORRECT:
            if not has_correction:
                raise ValueError("an Incorrect verdict must supply a corrected label")
            if not self.reason.strip():
                raise ValueError("an Incorrect verdict must supply a reason")
        elif has_correction:
            raise ValueError("a Correct verdict must not carry corrected labels")

    def to_json_dict(self) -> dict:
        return {
            "announcement_id": self.announcement_id,
            "user_id": self.user_id,
            "verdict": self.verdict.value,
            "corrected_actionability": (
                self.corrected_actionability.value if self.corrected_actionability else None
            ),
            "corrected_applicability": (
                self.corrected_applicability.value if self.corrected_applicability else None
            ),
            "reason": self.reason,
            "created_at": self.created_at.isoformat(),
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "AnnotationRecord":
        return cls(
            announcement_id=obj["announcement_id"],
            user_id=obj["user_id"],
            verdict=Verdict(obj["verdict"]),
            corrected_actionability=(
                ActionabilityLabel(obj["corrected_actionability"])
                if obj.get("corrected_actionability")
                else None
            ),
            corrected_applicability=(
                ApplicabilityLabel(obj["corrected_applicability"])
                if obj.get("corrected_applicability")
                else None
            ),
            reason=obj.get("reason", ""),
            created_at=datetime.fromisoformat(obj["created_at"]),
        )


@dataclass(frozen=True)
class QueryFilter:
    region: str | None = None
    actionability: ActionabilityLabel | None = None
    applicability: ApplicabilityLabel | None = None
    effective_from: date | None = None
    effective_to: date | None = None
    text_query: str | None = None

    def matches(self, ann: Announcement) -> bool:
        if self.region is not None and ann.region != self.region:
            return False
        if self.actionability is not None and ann.actionability is not self.actionability:
            return False
        if self.applicability is not None and ann.applicability is not self.applicability:
            return False
        if self.effective_from is not None or self.effective_to is not None:
            # date-range filters never match records without an effective date
            if ann.effective_date is None:
                return False
            if self.effective_from is not None and ann.effective_date < self.effective_from:
                return False
            if self.effective_to is not None and ann.effective_date > self.effective_to:
                return False
        if self.text_query:
            needle = self.text_query.lower()
            if needle not in ann.title.lower() and needle not in ann.body.lower():
                return False
        return True


class Store:
    """Single-writer persistent state: announcements, snapshots, annotations,
    users, predictions, and the model/report registry directories."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.models_dir = self.root / "models"
        self.models_dir.mkdir(exist_ok=True)
        self.reports_dir = self.root / "reports"
        self.reports_dir.mkdir(exist_ok=True)
        self._lock = threading.Lock()
        self._announcements: dict[str, Announcement] = {}
        self._annotations: list[AnnotationRecord] = []
        self._snapshots: dict[tuple[str, str], Snapshot] = {}
        self._predictions: dict[str, dict] = {}
        self._users: dict[str, UserProfile] = {}
        self._replay()

    # --- segment plumbing -------------------------------------------------

    def _segment(self, name: str) -> Path:
        return self.root / f"{name}.jsonl"

    def _replay(self) -> None:
        for obj in self._read_segment("announcements"):
            ann = Announcement.from_json_dict(obj)
            self._announcements[ann.id] = ann
        for obj in self._read_segment("annotations"):
            self._annotations.append(AnnotationRecord.from_json_dict(obj))
        for obj in self._read_segment("snapshots"):
            snap = Snapshot.from_json_dict(obj)
            self._snapshots[(snap.source_id, snap.url)] = snap
        for obj in self._read_segment("predictions"):
            self._predictions[obj["announcement_id"]] = obj
        for obj in self._read_segment("users"):
            profile = UserProfile.from_json_dict(obj)
            self._users[profile.user_id] = profile

    def _read_segment(self, name: str):
        path = self._segment(name)
        if not path.exists():
            return
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    yield json.loads(line)

    def _append(self, name: str, obj: dict) -> None:
        with open(self._segment(name), "a", encoding="utf-8") as fh:
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")

    # --- announcements ----------------------------------------------------

    def put_announcement(self, ann: Announcement) -> None:
        """Upsert by id; existing annotations for the id are untouched."""
        if not isinstance(ann, Announcement):
            raise StoreError("expected an Announcement")
        with self._lock:
            self._announcements[ann.id] = ann
            self._append("announcements", ann.to_json_dict())

    def get(self, announcement_id: str) -> Announcement | None:
        return self._announcements.get(announcement_id)

    def all_announcements(self) -> list[Announcement]:
        return list(self._announcements.values())

    def __len__(self) -> int:
        return len(self._announcements)

    def query(self, filter: QueryFilter, requester: UserProfile) -> list[Announcement]:
        """Conjunction of filters, intersected with the requester's region
        scope; newest published first, id as tie-break."""
        if filter.region is not None and not requester.can_see_region(filter.region):
            raise ScopeError(
                f"user {requester.user_id!r} has no access to region {filter.region!r}"
            )
        results = []
        for ann in self._announcements.values():
            if not requester.can_see_region(ann.region):
                continue
            if filter.matches(ann):
                results.append(ann)
        results.sort(
            key=lambda a: (
                a.published_date is None,
                -(a.published_date.toordinal() if a.published_date else 0),
                a.id,
            )
        )
        return results

    # --- annotations --------------------------------------------------------

    def record_annotation(self, record: AnnotationRecord) -> Announcement:
        """Append to the annotation log; an Incorrect verdict replaces the
        announcement's labels and marks them Corrected."""
        with self._lock:
            ann = self._announcements.get(record.announcement_id)
            if ann is None:
                raise StoreError(f"announcement {record.announcement_id!r} does not exist")
            self._annotations.append(record)
            self._append("annotations", record.to_json_dict())
            if record.verdict is Verdict.INCORRECT:
                if record.corrected_actionability is not None:
                    ann = ann.with_label(
                        Task.ACTIONABILITY, record.corrected_actionability, LabelSource.CORRECTED
                    )
                if record.corrected_applicability is not None:
                    ann = ann.with_label(
                        Task.APPLICABILITY, record.corrected_applicability, LabelSource.CORRECTED
                    )
                self._announcements[ann.id] = ann
                self._append("announcements", ann.to_json_dict())
            return ann

    def annotations_for(self, announcement_id: str) -> list[AnnotationRecord]:
        return [a for a in self._annotations if a.announcement_id == announcement_id]

    @property
    def annotation_count(self) -> int:
        return len(self._annotations)

    # --- snapshots ----------------------------------------------------------

    def get_snapshot(self, source_id: str, url: str) -> Snapshot | None:
        return self._snapshots.get((source_id, url))

    def put_snapshot(self, snap: Snapshot) -> None:
        with self._lock:
            self._snapshots[(snap.source_id, snap.url)] = snap
            self._append("snapshots", snap.to_json_dict())

    # --- predictions ----------------------------------------------------------

    def record_prediction(self, announcement_id: str, info: dict) -> None:
        with self._lock:
            obj = {"announcement_id": announcement_id, **info}
            self._predictions[announcement_id] = obj
            self._append("predictions", obj)

    def prediction_for(self, announcement_id: str) -> dict | None:
        return self._predictions.get(announcement_id)

    # --- users ----------------------------------------------------------------

    def add_user(self, profile: UserProfile) -> None:
        with self._lock:
            self._users[profile.user_id] = profile
            self._append("users", profile.to_json_dict())

    def seed_users(self, entries) -> None:
        """Load config-declared users without persisting them to the log."""
        with self._lock:
            for entry in entries:
                profile = make_user(
                    entry.user_id, entry.display_name, entry.role, entry.region_scopes, entry.token
                )
                self._users[profile.user_id] = profile

    @property
    def users(self) -> list[UserProfile]:
        return list(self._users.values())

    # --- exports ----------------------------------------------------------------

    def export_training_set(self, task: Task) -> LabeledCorpus:
        """Gold and corrected labels become SME-provenance training data."""
        items = [
            ann
            for ann in self._announcements.values()
            if ann.label_source in (LabelSource.GOLD, LabelSource.CORRECTED)
            and ann.label_for(task) is not None
        ]
        items.sort(key=lambda a: a.id)
        return LabeledCorpus(provenance=Provenance.SME, items=tuple(items))

    def export_csv(self, filter: QueryFilter, requester: UserProfile) -> str:
        """Same row set as query(), rendered as RFC-4180 CSV."""
        rows = self.query(filter, requester)
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(CSV_COLUMNS)
        for ann in rows:
            writer.writerow(
                [
                    ann.id,
                    ann.source_id,
                    ann.region,
                    ann.url,
                    ann.title,
                    ann.published_date.isoformat() if ann.published_date else "",
                    ann.effective_date.isoformat() if ann.effective_date else "",
                    ann.actionability.value if ann.actionability else "",
                    ann.applicability.value if ann.applicability else "",
                    ann.label_source.value if ann.label_source else "",
                ]
            )
        return buf.getvalue()

    # --- model/report registry ---------------------------------------------------

    def model_path(self, task: Task) -> Path:
        return self.models_dir / f"{task.value}.json"

    def vocab_path(self, task: Task) -> Path:
        return self.models_dir / f"{task.value}.vocab.json"

    def report_path(self, task: Task) -> Path:
        return self.reports_dir / f"{task.value}.json"
