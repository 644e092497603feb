import assert from "node:assert/strict";
import { test } from "node:test";
import { buildQuery } from "../src/api.js";
import { accuracyPercent, buildReportTable, metricCell, twoDecimals } from "../src/format.js";
import { MemoryStorage, RequestSequencer, SessionState } from "../src/state.js";
import { annotationProblems, canSubmit, toRequest } from "../src/validate.js";
test("buildQuery includes only set filters", () => {
    assert.equal(buildQuery({}), "");
    assert.equal(buildQuery({ actionability: "ActionRequired" }), "?actionability=ActionRequired");
    assert.equal(buildQuery({ region: "US-CA", q: "wage base", effective_from: "2019-01-01" }), "?region=US-CA&effective_from=2019-01-01&q=wage+base");
    assert.equal(buildQuery({ region: "" }), "");
});
test("two-decimal formatting rounds half up", () => {
    assert.equal(twoDecimals(0.625), "0.63");
    assert.equal(twoDecimals(2 / 3), "0.67");
    assert.equal(twoDecimals(0.6233), "0.62");
    assert.equal(twoDecimals(0), "0.00");
    assert.equal(twoDecimals(1), "1.00");
    assert.equal(metricCell({ precision: 0.6, recall: 0.6, f1: 0.6 }), "0.60/0.60/0.60");
    assert.equal(accuracyPercent(0.7077), "71%");
});
test("report table keeps the fixed actionability column order", () => {
    const report = {
        task: "actionability",
        accuracy: 0.71,
        classes: {
            ActionRequired: { precision: 0.6, recall: 0.6, f1: 0.6 },
            InformationOnly: { precision: 0.5, recall: 0.43, f1: 0.46 },
            Relevant: { precision: 0.65, recall: 0.58, f1: 0.61 },
            Irrelevant: { precision: 0.79, recall: 0.84, f1: 0.81 },
        },
        average: { precision: 0.63, recall: 0.6233, f1: 0.6233 },
    };
    const table = buildReportTable(report);
    assert.deepEqual(table.headers, [
        "Accuracy",
        "ActionRequired (P/R/F)",
        "InformationOnly (P/R/F)",
        "Relevant (P/R/F)",
        "Irrelevant (P/R/F)",
        "Average",
    ]);
    assert.deepEqual(table.row, [
        "71%",
        "0.60/0.60/0.60",
        "0.50/0.43/0.46",
        "0.65/0.58/0.61",
        "0.79/0.84/0.81",
        "0.63/0.62/0.62",
    ]);
});
test("annotation form guard", () => {
    assert.ok(canSubmit({ verdict: "Correct", correctedActionability: "", correctedApplicability: "", reason: "" }));
    // Incorrect with empty reason: submit stays disabled
    assert.ok(!canSubmit({
        verdict: "Incorrect",
        correctedActionability: "ActionRequired",
        correctedApplicability: "",
        reason: "   ",
    }));
    assert.ok(!canSubmit({ verdict: "Incorrect", correctedActionability: "", correctedApplicability: "", reason: "why" }));
    const problems = annotationProblems({
        verdict: "Incorrect",
        correctedActionability: "",
        correctedApplicability: "",
        reason: "",
    });
    assert.equal(problems.length, 2);
});
test("annotation request payload", () => {
    assert.deepEqual(toRequest({ verdict: "Correct", correctedActionability: "", correctedApplicability: "", reason: "" }), { verdict: "Correct" });
    assert.deepEqual(toRequest({
        verdict: "Incorrect",
        correctedActionability: "ActionRequired",
        correctedApplicability: "",
        reason: " new wage base ",
    }), { verdict: "Incorrect", reason: "new wage base", corrected_actionability: "ActionRequired" });
});
function profile(role, scopes) {
    return { user_id: "u", display_name: "U", role, region_scopes: scopes };
}
test("officer region choices restricted to own scopes", () => {
    const state = new SessionState(new MemoryStorage());
    state.signIn("tok", profile("Officer", ["US-CA", "US-NY"]));
    assert.deepEqual(state.regionChoices(), ["US-CA", "US-NY"]);
    assert.ok(!state.isAdmin);
});
test("admin filters freely and sees the admin page", () => {
    const state = new SessionState(new MemoryStorage());
    state.signIn("tok", profile("Admin", []));
    assert.equal(state.regionChoices(), null);
    assert.ok(state.isAdmin);
});
test("sign out clears token, profile, and filters", () => {
    const storage = new MemoryStorage();
    const state = new SessionState(storage);
    state.signIn("tok", profile("Officer", ["US-CA"]));
    state.setFilter("q", "wage");
    state.signOut();
    assert.equal(state.token, null);
    assert.equal(state.profile, null);
    assert.deepEqual(state.filters, {});
});
test("filters drop empty values", () => {
    const state = new SessionState(new MemoryStorage());
    state.setFilter("region", "US-CA");
    state.setFilter("region", "");
    assert.deepEqual(state.filters, {});
});
test("stale responses are discarded by sequence number", () => {
    const sequencer = new RequestSequencer();
    const first = sequencer.next("triage");
    const second = sequencer.next("triage");
    assert.ok(!sequencer.isCurrent("triage", first)); // superseded
    assert.ok(sequencer.isCurrent("triage", second));
    // other views keep independent counters
    const reports = sequencer.next("reports");
    assert.ok(sequencer.isCurrent("reports", reports));
    assert.ok(sequencer.isCurrent("triage", second));
});
