#!/usr/bin/env python3
"""Regenerate the synthetic fixtures bundled under regtrack/data/fixtures.

Everything here is deterministic (fixed seed) so the committed fixtures are
reproducible. Per-class counts are frozen constants that the test suite
asserts; the applicability SME/historical breakdown is chosen so that a
round-half-up 30% stratified draw lands on the expected train/test totals
exactly.
"""

from __future__ import annotations

import json
import random
import zlib
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "regtrack" / "data" / "fixtures"

FETCHED_AT = "2019-06-01T00:00:00+00:00"

STATES = [
    ("US-AL", "Alabama"), ("US-AK", "Alaska"), ("US-AZ", "Arizona"), ("US-AR", "Arkansas"),
    ("US-CA", "California"), ("US-CO", "Colorado"), ("US-CT", "Connecticut"), ("US-DE", "Delaware"),
    ("US-FL", "Florida"), ("US-GA", "Georgia"), ("US-HI", "Hawaii"), ("US-ID", "Idaho"),
    ("US-IL", "Illinois"), ("US-IN", "Indiana"), ("US-IA", "Iowa"), ("US-KS", "Kansas"),
    ("US-KY", "Kentucky"), ("US-LA", "Louisiana"), ("US-ME", "Maine"), ("US-MD", "Maryland"),
    ("US-MA", "Massachusetts"), ("US-MI", "Michigan"), ("US-MN", "Minnesota"),
    ("US-MS", "Mississippi"), ("US-MO", "Missouri"), ("US-MT", "Montana"), ("US-NE", "Nebraska"),
    ("US-NV", "Nevada"), ("US-NH", "New Hampshire"), ("US-NJ", "New Jersey"),
    ("US-NM", "New Mexico"), ("US-NY", "New York"), ("US-NC", "North Carolina"),
    ("US-ND", "North Dakota"), ("US-OH", "Ohio"), ("US-OK", "Oklahoma"), ("US-OR", "Oregon"),
    ("US-PA", "Pennsylvania"), ("US-RI", "Rhode Island"), ("US-SC", "South Carolina"),
    ("US-SD", "South Dakota"), ("US-TN", "Tennessee"), ("US-TX", "Texas"), ("US-UT", "Utah"),
    ("US-VT", "Vermont"), ("US-VA", "Virginia"), ("US-WA", "Washington"),
    ("US-WV", "West Virginia"), ("US-WI", "Wisconsin"), ("US-WY", "Wyoming"),
]

REGIONS = [code for code, _ in STATES] + ["IN", "UK", "IE", "BR", "AR", "CL", "ZA", "KE"]

NEUTRAL = [
    "The department posted the notice on its public website.",
    "Questions may be directed to the agency help desk.",
    "The bulletin applies to employers operating in the jurisdiction.",
    "A copy of the circular is available from the records office.",
    "The agency updated its frequently asked questions page.",
]

ACTIONABILITY_SENTENCES = {
    "ActionRequired": [
        "Increases the maximum wage base from ${lo} to ${hi}.",
        "The withholding tables are revised effective January 1, {year}.",
        "Employers must apply the new supplemental wage rate of {rate} percent.",
        "The unemployment insurance taxable wage base rises to ${hi} for {year}.",
        "Updated payroll withholding formulas must be implemented by {month} {day}, {year}.",
        "The personal exemption amount changes to ${lo} per allowance.",
        "New tax rate schedules replace the prior tables for all employee wages.",
        "The minimum wage increases to {rate} dollars per hour starting {month} {day}, {year}.",
    ],
    "InformationOnly": [
        "The agency published its annual report on benefit utilization.",
        "A proposed rule on family leave benefits is open for comment.",
        "The legislature may pay a supplemental credit subject to approval of the budget.",
        "The change will not change the resident tax rates for the coming year.",
        "Guidance on leave accrual was published for informational purposes.",
        "The department announced a study of proposed benefit changes.",
        "Officials publish quarterly statistics on benefit claims.",
    ],
    "Irrelevant": [
        "The commission adopted new drilling rules for exploratory wells.",
        "A sales tax holiday on school supplies begins next month.",
        "Renewal fees for a professional license are unchanged.",
        "The municipal hotelroom tax ordinance was amended by the council.",
        "The cigarette floor tax return is due with the monthly report.",
        "Corporation business tax filing portals will be offline for maintenance.",
        "Applicants for an occupational permit must schedule an inspection.",
        "The gift or estate tax bulletin was reissued without change.",
    ],
}

APPLICABILITY_SENTENCES = {
    "Benefits": [
        "Health benefit premium contributions change for the plan year.",
        "The retirement plan contribution limit increases next year.",
        "Dependent care benefit reimbursements follow the new schedule.",
        "Group insurance benefit enrollment opens in October.",
    ],
    "Expats": [
        "Expatriate workers must file the foreign assignment declaration.",
        "The cross-border commuter exemption applies to expatriate staff.",
        "New visa documentation rules affect inbound expatriate employees.",
        "Tax equalization guidance for expatriates was revised.",
    ],
    "HR": [
        "The workplace posting requirements for employers were updated.",
        "New hire reporting must include the employee handbook acknowledgment.",
        "Anti-harassment training hours are extended for supervisors.",
        "The human resources recordkeeping retention period changes.",
    ],
    "Others": [
        "The court published an opinion on administrative procedure.",
        "The agency reorganized its regional field offices.",
        "A public hearing on rulemaking procedure is scheduled.",
        "General administrative fees are adjusted for inflation.",
    ],
    "Payroll": [
        "Payroll withholding tables change for all wage payments.",
        "The supplemental wage withholding rate is revised.",
        "Employers adjust payroll deposits under the new schedule.",
        "The payroll wage base for contributions increases.",
    ],
    "TaxFiling": [
        "The quarterly tax return filing deadline moves to the last day of the month.",
        "Electronic filing of annual reconciliation forms becomes mandatory.",
        "The tax filing portal accepts the new form revision.",
        "Late filing penalties for the annual return are restated.",
    ],
}

MONTHS = ["January", "February", "March", "April", "June", "July", "September", "October"]


def make_body(rng: random.Random, pool: list[str]) -> str:
    n_class = rng.randint(2, 3)
    n_neutral = rng.randint(0, 2)
    sentences = rng.sample(pool, n_class) + rng.sample(NEUTRAL, n_neutral)
    rng.shuffle(sentences)
    out = []
    for s in sentences:
        lo = rng.randrange(30000, 48000, 4)
        out.append(
            s.format(
                lo=f"{lo:,}",
                hi=f"{lo + rng.randrange(400, 2400, 8):,}",
                rate=rng.choice(["1.5", "2.0", "3.1", "4.25", "6.2"]),
                year=rng.choice([2018, 2019, 2020]),
                month=rng.choice(MONTHS),
                day=rng.randint(1, 28),
            )
        )
    return " ".join(out)


def make_record(rng, idx, prefix, actionability=None, applicability=None):
    pool = (
        ACTIONABILITY_SENTENCES[actionability]
        if actionability
        else APPLICABILITY_SENTENCES[applicability]
    )
    body = make_body(rng, pool)
    region = rng.choice(REGIONS)
    record_id = f"{prefix}-{idx:04d}"
    year = rng.choice([2018, 2019])
    month = rng.randint(1, 12)
    day = rng.randint(1, 28)
    return {
        "id": record_id,
        "source_id": f"seed-{region.lower()}",
        "region": region,
        "url": f"https://example.gov/{prefix}/{idx:04d}",
        "title": body.split(". ")[0][:90],
        "body": body,
        "published_date": f"{year}-{month:02d}-{day:02d}",
        "fetched_at": FETCHED_AT,
        "content_length": len(body.encode("utf-8")),
        "effective_date": None,
        "actionability": actionability,
        "applicability": applicability,
        "label_source": "Gold",
    }


def write_jsonl(path: Path, records: list[dict]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    print(f"{path.relative_to(FIXTURES.parent)}: {len(records)} records")


def build_actionability(rng):
    plans = {
        "actionability_historical.jsonl": (
            "hist-act",
            [("ActionRequired", 100), ("InformationOnly", 256), ("Irrelevant", 64)],
        ),
        "actionability_sme.jsonl": (
            "sme-act",
            [("ActionRequired", 32), ("InformationOnly", 117), ("Irrelevant", 283)],
        ),
    }
    for filename, (prefix, counts) in plans.items():
        records = []
        idx = 0
        for label, n in counts:
            for _ in range(n):
                records.append(make_record(rng, idx, prefix, actionability=label))
                idx += 1
        write_jsonl(FIXTURES / filename, records)


def build_applicability(rng):
    # per-class SME counts chosen so round-half-up(0.3 * n) hits the expected
    # per-class test sizes, with totals 620 SME / 811 historical
    plans = {
        "applicability_historical.jsonl": (
            "hist-app",
            [("Benefits", 51), ("Expats", 2), ("HR", 3), ("Others", 0),
             ("Payroll", 575), ("TaxFiling", 180)],
        ),
        "applicability_sme.jsonl": (
            "sme-app",
            [("Benefits", 37), ("Expats", 10), ("HR", 6), ("Others", 129),
             ("Payroll", 287), ("TaxFiling", 151)],
        ),
    }
    for filename, (prefix, counts) in plans.items():
        records = []
        idx = 0
        for label, n in counts:
            for _ in range(n):
                records.append(make_record(rng, idx, prefix, applicability=label))
                idx += 1
        write_jsonl(FIXTURES / filename, records)


def build_registry():
    """31 state web sources + 28 state subscription feeds, 9 states in both."""
    entries = []
    for code, name in STATES[:31]:
        entries.append(
            {
                "source_id": f"{code.lower()}-web",
                "region": code,
                "kind": "Web",
                "locator": f"https://payroll.{code[3:].lower()}.example.gov/announcements",
                "notes": f"{name} department of revenue",
            }
        )
    for code, name in STATES[22:]:
        entries.append(
            {
                "source_id": f"{code.lower()}-mail",
                "region": code,
                "kind": "EmailFeed",
                "locator": f"fixtures/mail/{code.lower()}",
                "notes": f"{name} subscription digest",
            }
        )
    path = FIXTURES / "sources_us_states.jsonl"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for entry in entries:
            fh.write(json.dumps(entry) + "\n")
    regions = {e["region"] for e in entries}
    print(f"{path.name}: {len(entries)} sources over {len(regions)} states")


PAGE_A = """<html><head><title>Withholding tables</title>
<style>body {{ font-family: serif; }}</style></head>
<body><h1>Revised withholding tables</h1>
<p>The withholding tables are revised effective January 1, 2020. Employers must
apply the new rates to all wage payments.</p><p>Bulletin {n}.</p></body></html>
"""

PAGE_B_DAY1 = """<html><body><h1>Wage base announcement</h1>
<p>Increases the maximum wage base from $45,252 to $46,694.</p>
</body></html>
"""

PAGE_B_DAY2 = """<html><body><h1>Wage base announcement</h1>
<p>Increases the maximum wage base from $45,252 to $46,694. The supplemental
rate is unchanged.</p>
</body></html>
"""

PAGE_C = """<html><body><h1>Benefit report published</h1>
<p>The agency published its annual report on benefit utilization.</p>
</body></html>
"""


def build_replay():
    root = FIXTURES / "replay" / "us-ca-edd"
    for day in (1, 2, 3):
        (root / f"day-{day}").mkdir(parents=True, exist_ok=True)
    meta_a = {"published_date": "2019-12-02", "title": "Revised withholding tables"}
    meta_c = {"published_date": "2019-11-20", "title": "Benefit report published"}
    for day in (1, 2, 3):
        d = root / f"day-{day}"
        (d / "page-a.html").write_text(PAGE_A.format(n=17), encoding="utf-8")
        (d / "page-a.html.meta.json").write_text(json.dumps(meta_a), encoding="utf-8")
        # page-b has no sidecar at all: the silent-edit scenario
        (d / "page-b.html").write_text(
            PAGE_B_DAY1 if day == 1 else PAGE_B_DAY2, encoding="utf-8"
        )
        (d / "page-c.html").write_text(PAGE_C, encoding="utf-8")
        (d / "page-c.html.meta.json").write_text(json.dumps(meta_c), encoding="utf-8")
    print("replay/us-ca-edd: 3 days x 3 pages")


def make_simple_pdf(text: str) -> bytes:
    """One-page PDF with Flate-compressed content, enough for the extractor."""
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


E2E_SOURCES = [
    {"source_id": "us-ca-edd", "region": "US-CA"},
    {"source_id": "us-ny-dol", "region": "US-NY"},
    {"source_id": "in-mof", "region": "IN"},
]

E2E_APPLICABILITY = {
    "ActionRequired": ["Payroll", "Payroll", "TaxFiling"],
    "InformationOnly": ["Benefits", "Others", "Benefits"],
    "Irrelevant": ["Others", "Others", "TaxFiling"],
}


def build_e2e(rng):
    root = FIXTURES / "e2e"
    docs = root / "docs"
    plan = [("ActionRequired", 15), ("InformationOnly", 20), ("Irrelevant", 25)]
    sources = []
    for source in E2E_SOURCES:
        d = docs / source["source_id"] / "day-1"
        d.mkdir(parents=True, exist_ok=True)
        sources.append(
            {
                "source_id": source["source_id"],
                "region": source["region"],
                "kind": "FileFixture",
                "locator": f"docs/{source['source_id']}",
                "notes": "bundled end-to-end fixture",
            }
        )
    idx = 0
    for label, n in plan:
        for _ in range(n):
            source = E2E_SOURCES[idx % len(E2E_SOURCES)]
            d = docs / source["source_id"] / "day-1"
            body = make_body(rng, ACTIONABILITY_SENTENCES[label])
            applicability = rng.choice(E2E_APPLICABILITY[label])
            meta = {
                "published_date": f"2019-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}",
                "title": body.split(". ")[0][:90],
                "actionability": label,
                "applicability": applicability,
            }
            if idx % 20 == 7:
                (d / f"doc-{idx:03d}.pdf").write_bytes(make_simple_pdf(body))
                (d / f"doc-{idx:03d}.pdf.meta.json").write_text(json.dumps(meta))
            elif idx % 3 == 0:
                (d / f"doc-{idx:03d}.txt").write_text(body, encoding="utf-8")
                (d / f"doc-{idx:03d}.txt.meta.json").write_text(json.dumps(meta))
            else:
                html = f"<html><body><h1>{meta['title']}</h1><p>{body}</p></body></html>"
                (d / f"doc-{idx:03d}.html").write_text(html, encoding="utf-8")
                (d / f"doc-{idx:03d}.html.meta.json").write_text(json.dumps(meta))
            idx += 1

    with open(root / "sources.jsonl", "w", encoding="utf-8") as fh:
        for entry in sources:
            fh.write(json.dumps(entry) + "\n")

    (root / "config.toml").write_text(
        """\
[server]
bind = "127.0.0.1"
port = 8765

[ingest]
timeout_secs = 10.0
user_agent = "regtrack-e2e/0.1"
workers = 2
registry = "sources.jsonl"
fixture_root = "."
day = 1

[model]
l2_lambda = 1.0
max_epochs = 1000
tol = 1e-6
step1_threshold = 0.5
rule_threshold = 0.5
rule_min_support = 3
nb_alpha = 1.0
test_fraction = 0.3

[[auth.users]]
user_id = "admin"
display_name = "Site Admin"
role = "Admin"
region_scopes = []
token = "admin-test-token"

[[auth.users]]
user_id = "officer-ca"
display_name = "CA Officer"
role = "Officer"
region_scopes = ["US-CA"]
token = "officer-test-token"
""",
        encoding="utf-8",
    )
    print(f"e2e: {idx} docs across {len(E2E_SOURCES)} sources")


def main():
    rng = random.Random(20190601)
    build_actionability(rng)
    build_applicability(rng)
    build_registry()
    build_replay()
    build_e2e(rng)


if __name__ == "__main__":
    main()
