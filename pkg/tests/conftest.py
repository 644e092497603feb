from __future__ import annotations

import json
import shutil
import zlib
from datetime import date, datetime, timezone
from importlib import resources
from pathlib import Path

import pytest

from regtrack.corpus import Announcement, LabeledCorpus
from regtrack.labels import ActionabilityLabel, ApplicabilityLabel, LabelSource, Provenance

FIXTURES = Path(str(resources.files("regtrack.data").joinpath("fixtures")))

FETCHED = datetime(2019, 6, 1, tzinfo=timezone.utc)


def make_announcement(
    ann_id: str,
    body: str = "Increases the maximum wage base from $45,252 to $46,694.",
    region: str = "US-CA",
    actionability: ActionabilityLabel | None = None,
    applicability: ApplicabilityLabel | None = None,
    label_source: LabelSource | None = LabelSource.GOLD,
    published: date | None = date(2019, 3, 1),
    **kwargs,
) -> Announcement:
    if actionability is None and applicability is None and label_source is LabelSource.GOLD:
        actionability = ActionabilityLabel.ACTION_REQUIRED
    return Announcement(
        id=ann_id,
        source_id=kwargs.pop("source_id", "src-1"),
        region=region,
        url=kwargs.pop("url", f"https://example.gov/{ann_id}"),
        title=kwargs.pop("title", f"Announcement {ann_id}"),
        body=body,
        published_date=published,
        fetched_at=FETCHED,
        content_length=len(body.encode("utf-8")),
        actionability=actionability,
        applicability=applicability,
        label_source=label_source,
        **kwargs,
    )


def corpus_of(items, provenance=Provenance.SME) -> LabeledCorpus:
    return LabeledCorpus(provenance=provenance, items=tuple(items))


def make_simple_pdf(text: str) -> bytes:
    """Minimal one-page PDF with a Flate-compressed content stream."""
    content = f"BT /F1 12 Tf 72 720 Td ({text}) Tj ET".encode("latin-1")
    stream = zlib.compress(content)
    objects = [
        b"<< /Type /Catalog /Pages 2 0 R >>",
        b"<< /Type /Pages /Kids [3 0 R] /Count 1 >>",
        b"<< /Type /Page /Parent 2 0 R /MediaBox [0 0 612 792] "
        b"/Contents 4 0 R /Resources << /Font << /F1 5 0 R >> >> >>",
        b"<< /Length %d /Filter /FlateDecode >>\nstream\n" % len(stream)
        + stream
        + b"\nendstream",
        b"<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica >>",
    ]
    out = bytearray(b"%PDF-1.4\n")
    offsets = []
    for i, body in enumerate(objects, start=1):
        offsets.append(len(out))
        out += b"%d 0 obj\n" % i + body + b"\nendobj\n"
    xref_at = len(out)
    out += b"xref\n0 %d\n" % (len(objects) + 1)
    out += b"0000000000 65535 f \n"
    for off in offsets:
        out += b"%010d 00000 n \n" % off
    out += b"trailer\n<< /Size %d /Root 1 0 R >>\nstartxref\n%d\n%%%%EOF\n" % (
        len(objects) + 1,
        xref_at,
    )
    return bytes(out)


@pytest.fixture
def replay_copy(tmp_path):
    """Writable copy of the bundled 3-day replay fixture."""
    dest = tmp_path / "replay" / "us-ca-edd"
    shutil.copytree(FIXTURES / "replay" / "us-ca-edd", dest)
    return dest


@pytest.fixture
def e2e_copy(tmp_path):
    """Writable copy of the bundled end-to-end fixture."""
    dest = tmp_path / "e2e"
    shutil.copytree(FIXTURES / "e2e", dest)
    return dest


def write_jsonl(path: Path, records: list[dict]) -> Path:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
    return path
