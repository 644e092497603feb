/**
 * Round-trip against a live service instance: spawns the Python API over a
 * freshly ingested+trained store, then drives it with the same ApiClient the
 * browser uses. Skips when the service package is not importable.
 */
import assert from "node:assert/strict";
import { execFileSync, spawn } from "node:child_process";
import { cpSync, mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { after, before, test } from "node:test";
import { ApiClient } from "../src/api.js";
import { buildReportTable } from "../src/format.js";
const PYTHON = process.env.PYTHON ?? "python3";
const PORT = 8900 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;
const ADMIN_TOKEN = "admin-test-token";
const OFFICER_TOKEN = "officer-test-token";
function serviceAvailable() {
    try {
        execFileSync(PYTHON, ["-c", "import regtrack"], { stdio: "ignore" });
        return true;
    }
    catch {
        return false;
    }
}
const available = serviceAvailable();
let work = "";
let server = null;
function run(args) {
    execFileSync(PYTHON, ["-m", "regtrack", ...args], { stdio: "pipe" });
}
async function waitForHealth(timeoutMs = 20000) {
    const deadline = Date.now() + timeoutMs;
    while (Date.now() < deadline) {
        try {
            const response = await fetch(`${BASE}/healthz`);
            if (response.ok)
                return;
        }
        catch {
            // not up yet
        }
        await new Promise((resolve) => setTimeout(resolve, 250));
    }
    throw new Error("service did not come up in time");
}
before(async () => {
    if (!available)
        return;
    work = mkdtempSync(join(tmpdir(), "regtrack-dash-"));
    const fixture = execFileSync(PYTHON, ["-c", "from importlib import resources; print(resources.files('regtrack.data').joinpath('fixtures/e2e'))"], { encoding: "utf-8" }).trim();
    const e2e = join(work, "e2e");
    cpSync(fixture, e2e, { recursive: true });
    const configPath = join(e2e, "config.toml");
    const config = readFileSync(configPath, "utf-8").replace(/port = \d+/, `port = ${PORT}`);
    writeFileSync(configPath, config);
    const base = ["--config", configPath, "--store", join(work, "store")];
    run([...base, "ingest"]);
    run([...base, "train"]);
    server = spawn(PYTHON, ["-m", "regtrack", ...base, "serve"], { stdio: "ignore" });
    await waitForHealth();
});
after(() => {
    if (server)
        server.kill("SIGTERM");
    if (work)
        rmSync(work, { recursive: true, force: true });
});
test("filtering by actionability shows only matching rows", { skip: !available }, async () => {
    const admin = new ApiClient(ADMIN_TOKEN, BASE);
    const all = await admin.announcements({});
    assert.equal(all.count, 60);
    const filtered = await admin.announcements({ actionability: "ActionRequired" });
    assert.ok(filtered.count > 0);
    assert.ok(filtered.items.every((row) => row.actionability === "ActionRequired"));
    assert.ok(filtered.count < all.count);
});
test("officer sees only scoped regions", { skip: !available }, async () => {
    const officer = new ApiClient(OFFICER_TOKEN, BASE);
    const session = await officer.session();
    assert.equal(session.role, "Officer");
    assert.deepEqual(session.region_scopes, ["US-CA"]);
    const listed = await officer.announcements({});
    assert.ok(listed.count > 0);
    assert.ok(listed.items.every((row) => row.region === "US-CA"));
});
test("incorrect annotation flips the displayed label on refetch", { skip: !available }, async () => {
    const officer = new ApiClient(OFFICER_TOKEN, BASE);
    const listed = await officer.announcements({});
    const target = listed.items[0];
    const flipTo = target.actionability === "ActionRequired" ? "InformationOnly" : "ActionRequired";
    await officer.annotate(target.id, {
        verdict: "Incorrect",
        corrected_actionability: flipTo,
        reason: "dashboard round-trip check",
    });
    const refetched = await officer.announcement(target.id);
    assert.equal(refetched.actionability, flipTo);
    assert.equal(refetched.label_source, "Corrected");
    assert.equal(refetched.annotation_count, 1);
});
test("metrics table renders the latest report with 2-decimal cells", { skip: !available }, async () => {
    const admin = new ApiClient(ADMIN_TOKEN, BASE);
    const report = await admin.latestReport("actionability");
    const table = buildReportTable(report);
    assert.equal(table.headers[0], "Accuracy");
    assert.equal(table.headers.length, 6);
    assert.match(table.row[0], /^\d+%$/);
    for (const cell of table.row.slice(1)) {
        assert.match(cell, /^\d\.\d{2}\/\d\.\d{2}\/\d\.\d{2}$/);
    }
});
test("csv export carries the current filters", { skip: !available }, async () => {
    const admin = new ApiClient(ADMIN_TOKEN, BASE);
    const blob = await admin.exportCsv({ actionability: "ActionRequired" });
    const text = await blob.text();
    const lines = text.trim().split(/\r?\n/);
    assert.ok(lines[0].startsWith("id,source_id,region"));
    const filtered = await admin.announcements({ actionability: "ActionRequired" });
    assert.equal(lines.length, filtered.count + 1);
});
test("bad token cannot read announcements", { skip: !available }, async () => {
    const intruder = new ApiClient("not-a-token", BASE);
    await assert.rejects(() => intruder.announcements({}), (error) => error.status === 401);
});
