"""Source polling, change detection, and raw-content normalization.

New and updated announcements are detected by comparing raw content length
and published date between crawls. That heuristic deliberately does not use
the content hash, which is stored on snapshots for diagnostics only: length
plus date is what catches silent edits on pages that never update their
metadata.
"""

from __future__ import annotations

import enum
import json
import re
import zlib
from dataclasses import dataclass
from datetime import date, datetime, timezone
from hashlib import sha256
from html.parser import HTMLParser
from importlib import resources
from pathlib import Path
from typing import Iterable, Protocol

import requests

from .errors import FetchError, NormalizeError
from .labels import ActionabilityLabel, ApplicabilityLabel, parse_label


class SourceKind(enum.Enum):
    WEB = "Web"
    EMAIL_FEED = "EmailFeed"
    FILE_FIXTURE = "FileFixture"


class MediaKind(enum.Enum):
    HTML = "Html"
    PDF = "Pdf"
    PLAIN_TEXT = "PlainText"


class ChangeKind(enum.Enum):
    NEW = "New"
    UPDATED = "Updated"
    UNCHANGED = "Unchanged"


@dataclass(frozen=True)
class SourceDescriptor:
    source_id: str
    region: str
    kind: SourceKind
    locator: str
    notes: str = ""

    def __post_init__(self) -> None:
        if not self.source_id:
            raise ValueError("source_id must be non-empty")
        if not self.locator:
            raise ValueError(f"source {self.source_id!r} has an empty locator")

    def to_json_dict(self) -> dict:
        return {
            "source_id": self.source_id,
            "region": self.region,
            "kind": self.kind.value,
            "locator": self.locator,
            "notes": self.notes,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "SourceDescriptor":
        return cls(
            source_id=str(obj["source_id"]),
            region=str(obj["region"]),
            kind=SourceKind(obj["kind"]),
            locator=str(obj["locator"]),
            notes=str(obj.get("notes", "")),
        )


class SourceRegistry:
    """Registered sources keyed by source_id; re-registration replaces."""

    def __init__(self) -> None:
        self._sources: dict[str, SourceDescriptor] = {}

    def __len__(self) -> int:
        return len(self._sources)

    def __iter__(self):
        return iter(self._sources.values())

    def register(self, descriptor: SourceDescriptor) -> None:
        self._sources[descriptor.source_id] = descriptor

    def get(self, source_id: str) -> SourceDescriptor:
        try:
            return self._sources[source_id]
        except KeyError:
            raise KeyError(f"source {source_id!r} is not registered") from None

    def regions(self) -> set[str]:
        return {d.region for d in self._sources.values()}

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for descriptor in self._sources.values():
                fh.write(json.dumps(descriptor.to_json_dict()) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "SourceRegistry":
        registry = cls()
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    registry.register(SourceDescriptor.from_json_dict(json.loads(line)))
        return registry


@dataclass(frozen=True)
class RawContent:
    data: bytes
    media_kind: MediaKind


@dataclass(frozen=True)
class Snapshot:
    """What we remember about one (source, url) from the previous crawl."""

    source_id: str
    url: str
    content_length: int
    published_date: date | None
    content_hash: str
    taken_at: datetime

    def to_json_dict(self) -> dict:
        return {
            "source_id": self.source_id,
            "url": self.url,
            "content_length": self.content_length,
            "published_date": self.published_date.isoformat() if self.published_date else None,
            "content_hash": self.content_hash,
            "taken_at": self.taken_at.isoformat(),
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Snapshot":
        return cls(
            source_id=obj["source_id"],
            url=obj["url"],
            content_length=int(obj["content_length"]),
            published_date=(
                date.fromisoformat(obj["published_date"]) if obj.get("published_date") else None
            ),
            content_hash=obj["content_hash"],
            taken_at=datetime.fromisoformat(obj["taken_at"]),
        )


@dataclass(frozen=True)
class ChangeEvent:
    kind: ChangeKind
    url: str
    prev: Snapshot | None
    curr: Snapshot


@dataclass(frozen=True)
class FetchedItem:
    """One announcement-like item returned by a fetcher.

    Fixture sidecars may carry gold labels (annotated imports); live fetchers
    leave them unset.
    """

    url: str
    content: RawContent
    published_date: date | None = None
    title: str | None = None
    gold_actionability: ActionabilityLabel | None = None
    gold_applicability: ApplicabilityLabel | None = None


class Fetcher(Protocol):
    def __call__(self, descriptor: SourceDescriptor) -> Iterable[FetchedItem]: ...


_EXTENSION_KINDS = {
    ".html": MediaKind.HTML,
    ".htm": MediaKind.HTML,
    ".pdf": MediaKind.PDF,
    ".txt": MediaKind.PLAIN_TEXT,
}


class FixtureFetcher:
    """Reads announcement files from a per-source directory tree.

    Layout: <locator>/ holds one file per item plus optional sidecar
    metadata named "<file>.meta.json". When replaying multi-day fixtures,
    a "day-N/" subdirectory is selected via the `day` argument; item urls
    stay stable across days so change detection can compare crawls.
    """

    def __init__(self, day: int | None = None):
        self.day = day

    def __call__(self, descriptor: SourceDescriptor) -> list[FetchedItem]:
        root = Path(descriptor.locator)
        if self.day is not None:
            day_dir = root / f"day-{self.day}"
            root = day_dir if day_dir.exists() else root
        if not root.is_dir():
            raise FetchError(f"fixture directory {root} does not exist")
        items = []
        for path in sorted(root.iterdir()):
            if not path.is_file() or path.name.endswith(".meta.json"):
                continue
            meta = _read_sidecar(path)
            kind = _EXTENSION_KINDS.get(path.suffix.lower(), MediaKind.PLAIN_TEXT)
            items.append(
                FetchedItem(
                    url=f"fixture://{descriptor.source_id}/{path.name}",
                    content=RawContent(data=path.read_bytes(), media_kind=kind),
                    published_date=meta.get("published_date"),
                    title=meta.get("title"),
                    gold_actionability=meta.get("actionability"),
                    gold_applicability=meta.get("applicability"),
                )
            )
        return items


def _read_sidecar(item_path: Path) -> dict:
    sidecar = item_path.with_name(item_path.name + ".meta.json")
    if not sidecar.exists():
        return {}
    obj = json.loads(sidecar.read_text(encoding="utf-8"))
    meta: dict = {"title": obj.get("title")}
    if obj.get("published_date"):
        meta["published_date"] = date.fromisoformat(obj["published_date"])
    if obj.get("actionability"):
        meta["actionability"] = parse_label(ActionabilityLabel, obj["actionability"])
    if obj.get("applicability"):
        meta["applicability"] = parse_label(ApplicabilityLabel, obj["applicability"])
    return meta


class HttpFetcher:
    """Plain GET of the locator; one fetched item per source."""

    def __init__(self, timeout_secs: float = 30.0, user_agent: str = "regtrack/0.1"):
        self.timeout_secs = timeout_secs
        self.user_agent = user_agent

    def __call__(self, descriptor: SourceDescriptor) -> list[FetchedItem]:
        try:
            response = requests.get(
                descriptor.locator,
                timeout=self.timeout_secs,
                headers={"User-Agent": self.user_agent},
            )
            response.raise_for_status()
        except requests.RequestException as exc:
            raise FetchError(f"GET {descriptor.locator} failed: {exc}") from exc
        content_type = response.headers.get("Content-Type", "").lower()
        if "pdf" in content_type:
            kind = MediaKind.PDF
        elif "html" in content_type:
            kind = MediaKind.HTML
        else:
            kind = MediaKind.PLAIN_TEXT
        return [FetchedItem(url=descriptor.locator, content=RawContent(response.content, kind))]


def poll_source(descriptor: SourceDescriptor, fetcher: Fetcher) -> list[FetchedItem]:
    """All items the fetcher finds for a source, in deterministic url order."""
    try:
        items = list(fetcher(descriptor))
    except FetchError:
        raise
    except Exception as exc:
        raise FetchError(f"polling source {descriptor.source_id!r} failed: {exc}") from exc
    return sorted(items, key=lambda item: item.url)


def take_snapshot(source_id: str, item: FetchedItem, normalized_text: str) -> Snapshot:
    return Snapshot(
        source_id=source_id,
        url=item.url,
        content_length=len(item.content.data),
        published_date=item.published_date,
        content_hash=sha256(normalized_text.encode("utf-8")).hexdigest(),
        taken_at=datetime.now(timezone.utc).replace(microsecond=0),
    )


def detect_change(prev: Snapshot | None, curr: Snapshot) -> ChangeEvent:
    """New when never seen; Updated when length or published date moved
    (including one side missing a date); Unchanged otherwise."""
    if prev is not None and (prev.url != curr.url or prev.source_id != curr.source_id):
        raise ValueError(
            f"snapshot mismatch: prev is {prev.source_id}/{prev.url}, "
            f"curr is {curr.source_id}/{curr.url}"
        )
    if prev is None:
        kind = ChangeKind.NEW
    elif (
        prev.content_length != curr.content_length
        or prev.published_date != curr.published_date
    ):
        kind = ChangeKind.UPDATED
    else:
        kind = ChangeKind.UNCHANGED
    return ChangeEvent(kind=kind, url=curr.url, prev=prev, curr=curr)


class _TextExtractor(HTMLParser):
    _SKIP = {"script", "style"}

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.chunks: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in self._SKIP:
            self._skip_depth += 1

    def handle_endtag(self, tag):
        if tag in self._SKIP and self._skip_depth > 0:
            self._skip_depth -= 1

    def handle_data(self, data):
        if self._skip_depth == 0:
            self.chunks.append(data)


def _collapse_whitespace(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def normalize(raw: RawContent, url: str = "") -> str:
    """Raw bytes to plain text: tags stripped, whitespace runs collapsed."""
    where = f" ({url})" if url else ""
    if not raw.data:
        raise NormalizeError(f"empty content{where}")
    if raw.media_kind is MediaKind.PDF:
        text = extract_pdf_text(raw.data)
    else:
        decoded = raw.data.decode("utf-8", errors="replace")
        if raw.media_kind is MediaKind.HTML:
            parser = _TextExtractor()
            parser.feed(decoded)
            parser.close()
            text = " ".join(parser.chunks)
        else:
            text = decoded
    text = _collapse_whitespace(text)
    if not text:
        raise NormalizeError(f"no extractable text{where}")
    return text


# --- PDF text extraction -------------------------------------------------
#
# No PDF library is available in the deployment environment, so this is a
# deliberately small extractor for the simple announcement PDFs we see:
# optionally Flate-compressed content streams with Tj / TJ / ' / " text
# operators and parenthesis string literals.

_STREAM_RE = re.compile(rb"stream\r?\n(.*?)endstream", re.DOTALL)
_TEXT_OP_RE = re.compile(rb"\((?P<lit>(?:\\.|[^()\\])*)\)\s*(?:Tj|'|\")|\[(?P<arr>[^\]]*)\]\s*TJ")
_ARRAY_LIT_RE = re.compile(rb"\((?:\\.|[^()\\])*\)")
_PDF_ESCAPES = {
    b"n": b"\n",
    b"r": b"\r",
    b"t": b"\t",
    b"b": b"\b",
    b"f": b"\f",
    b"(": b"(",
    b")": b")",
    b"\\": b"\\",
}


def _unescape_pdf_literal(lit: bytes) -> bytes:
    out = bytearray()
    i = 0
    while i < len(lit):
        ch = lit[i : i + 1]
        if ch == b"\\" and i + 1 < len(lit):
            nxt = lit[i + 1 : i + 2]
            if nxt.isdigit():
                octal = lit[i + 1 : i + 4]
                j = 1
                while j < 3 and i + 1 + j < len(lit) and lit[i + 1 + j : i + 2 + j].isdigit():
                    j += 1
                out += bytes([int(lit[i + 1 : i + 1 + j], 8) & 0xFF])
                i += 1 + j
                continue
            out += _PDF_ESCAPES.get(nxt, nxt)
            i += 2
            continue
        out += ch
        i += 1
    return bytes(out)


def extract_pdf_text(data: bytes) -> str:
    pieces: list[str] = []
    for match in _STREAM_RE.finditer(data):
        stream = match.group(1)
        try:
            stream = zlib.decompress(stream)
        except zlib.error:
            pass  # stream was not Flate-compressed
        for op in _TEXT_OP_RE.finditer(stream):
            if op.group("lit") is not None:
                pieces.append(_unescape_pdf_literal(op.group("lit")).decode("latin-1"))
            else:
                for lit in _ARRAY_LIT_RE.findall(op.group("arr")):
                    pieces.append(_unescape_pdf_literal(lit[1:-1]).decode("latin-1"))
    return " ".join(pieces)


# --- metadata extraction --------------------------------------------------

_MONTHS = (
    "january february march april may june july august "
    "september october november december"
).split()
_MONTH_INDEX = {name: i + 1 for i, name in enumerate(_MONTHS)}
_MONTH_PATTERN = "|".join(_MONTHS)

_DATE_RE = re.compile(
    rf"(?P<mdy>(?P<mdy_month>{_MONTH_PATTERN})\s+(?P<mdy_day>\d{{1,2}}),\s*(?P<mdy_year>\d{{4}}))"
    rf"|(?P<dmy>(?P<dmy_day>\d{{1,2}})\s+(?P<dmy_month>{_MONTH_PATTERN})\s+(?P<dmy_year>\d{{4}}))"
    r"|(?P<slash>(?P<s_month>\d{1,2})/(?P<s_day>\d{1,2})/(?P<s_year>\d{4}))"
    r"|(?P<iso>(?P<i_year>\d{4})-(?P<i_month>\d{2})-(?P<i_day>\d{2}))",
    re.IGNORECASE,
)

_TRIGGER_RE = re.compile(r"\b(effective|beginning|as of|starting)\b", re.IGNORECASE)

_TRIGGER_WINDOW_TOKENS = 6


def _date_from_match(match: re.Match) -> date | None:
    try:
        if match.group("mdy"):
            return date(
                int(match.group("mdy_year")),
                _MONTH_INDEX[match.group("mdy_month").lower()],
                int(match.group("mdy_day")),
            )
        if match.group("dmy"):
            return date(
                int(match.group("dmy_year")),
                _MONTH_INDEX[match.group("dmy_month").lower()],
                int(match.group("dmy_day")),
            )
        if match.group("slash"):
            return date(
                int(match.group("s_year")), int(match.group("s_month")), int(match.group("s_day"))
            )
        return date(
            int(match.group("i_year")), int(match.group("i_month")), int(match.group("i_day"))
        )
    except ValueError:
        return None  # not a real calendar date


def extract_effective_date(text: str) -> date | None:
    """First date following a trigger phrase within a few tokens, if any.

    Triggers are "effective", "beginning", "as of", "starting"; the date must
    start within the next 6 whitespace tokens and literally appear in one of
    the accepted formats.
    """
    date_matches = list(_DATE_RE.finditer(text))
    for trigger in _TRIGGER_RE.finditer(text):
        window_start = trigger.end()
        window_end = window_start
        for i, token in enumerate(re.finditer(r"\S+", text[window_start:])):
            if i >= _TRIGGER_WINDOW_TOKENS:
                break
            window_end = window_start + token.end()
        for candidate in date_matches:
            # the date must START inside the token window; it may extend past
            if candidate.start() < window_start:
                continue
            if candidate.start() >= window_end:
                break
            parsed = _date_from_match(candidate)
            if parsed is not None:
                return parsed
    return None


# --- jurisdiction tagging -------------------------------------------------


def load_default_gazetteer() -> dict[str, list[str]]:
    raw = resources.files("regtrack.data").joinpath("gazetteer.json").read_text("utf-8")
    return json.loads(raw)


def find_jurisdiction_mentions(text: str, gazetteer: dict[str, list[str]]) -> set[str]:
    """Region codes whose place names appear in the text.

    Longer names are matched (and masked) first, so "West Virginia" does not
    also count as a "Virginia" mention.
    """
    lowered = text.lower()
    names = []
    for region, entries in gazetteer.items():
        for name in entries:
            names.append((name.lower(), region))
    names.sort(key=lambda pair: len(pair[0]), reverse=True)
    mentioned: set[str] = set()
    for name, region in names:
        pattern = re.compile(r"(?<![a-z0-9])" + re.escape(name) + r"(?![a-z0-9])")
        found = False
        def _mask(match):
            nonlocal found
            found = True
            return "\x00" * len(match.group(0))
        lowered = pattern.sub(_mask, lowered)
        if found:
            mentioned.add(region)
    return mentioned


def tag_jurisdiction(
    body: str,
    source_id: str,
    registry: SourceRegistry,
    gazetteer: dict[str, list[str]] | None = None,
) -> str:
    """Source region by default; a single unambiguous place mention overrides."""
    descriptor = registry.get(source_id)
    if gazetteer is None:
        gazetteer = load_default_gazetteer()
    mentions = find_jurisdiction_mentions(body, gazetteer)
    if len(mentions) == 1:
        return next(iter(mentions))
    return descriptor.region
