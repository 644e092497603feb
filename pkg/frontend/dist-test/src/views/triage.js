import { clear, el, option } from "../dom.js";
import { confidencePercent, dateOrDash } from "../format.js";
import { RequestSequencer } from "../state.js";
import { ACTIONABILITY_LABELS, APPLICABILITY_LABELS, } from "../types.js";
import { annotationProblems, canSubmit, toRequest } from "../validate.js";
const sequencer = new RequestSequencer();
export function triageView(api, state, onError) {
    const root = el("section", { class: "triage" });
    const filterBar = el("div", { class: "filter-bar" });
    const listPane = el("div", { class: "list-pane" });
    const detailPane = el("div", { class: "detail-pane" }, "Select an announcement.");
    function currentFilters() {
        return { ...state.filters };
    }
    async function refresh() {
        const seq = sequencer.next("triage");
        listPane.setAttribute("aria-busy", "true");
        try {
            const body = await api.announcements(currentFilters());
            if (!sequencer.isCurrent("triage", seq))
                return; // stale response
            renderList(body.items);
        }
        catch (error) {
            if (!sequencer.isCurrent("triage", seq))
                return;
            onError(error);
        }
        finally {
            listPane.removeAttribute("aria-busy");
        }
    }
    function renderList(rows) {
        clear(listPane);
        listPane.append(el("div", { class: "count" }, `${rows.length} announcements`));
        const table = el("table", { class: "triage-table" });
        table.append(el("tr", {}, ...["Title", "Region", "Published", "Effective", "Actionability", "Applicability", "Source"].map((h) => el("th", {}, h))));
        for (const row of rows) {
            const tr = el("tr", {
                class: row.actionability === "ActionRequired" ? "row action-required" : "row",
                onclick: () => showDetail(row.id),
            }, el("td", { class: "title" }, row.title), el("td", {}, row.region), el("td", {}, dateOrDash(row.published_date)), el("td", {}, dateOrDash(row.effective_date)), el("td", {}, row.actionability ?? "-"), el("td", {}, row.applicability ?? "-"), el("td", {}, row.label_source ?? "-"));
            table.append(tr);
        }
        listPane.append(table);
    }
    async function showDetail(id) {
        try {
            const row = await api.announcement(id);
            renderDetail(row);
        }
        catch (error) {
            onError(error);
        }
    }
    function renderDetail(row) {
        clear(detailPane);
        const badge = row.label_source
            ? el("span", { class: `badge badge-${row.label_source.toLowerCase()}` }, row.label_source)
            : null;
        detailPane.append(el("h2", {}, row.title), el("p", { class: "meta" }, `${row.region} · published ${dateOrDash(row.published_date)} · effective ${dateOrDash(row.effective_date)}`), el("p", { class: "labels" }, `Actionability: ${row.actionability ?? "-"} `, badge, ` · Applicability: ${row.applicability ?? "-"}`), confidenceLine(row), el("p", { class: "body-text" }, row.body ?? ""), el("p", {}, el("a", { href: row.url, target: "_blank", rel: "noopener" }, "source page")), annotationForm(row));
    }
    function confidenceLine(row) {
        const c = row.confidence;
        if (!c)
            return el("p", { class: "confidence" }, "No model confidence recorded.");
        const parts = [];
        if (typeof c.actionability_step1_prob === "number") {
            parts.push(`relevant ${confidencePercent(c.actionability_step1_prob)}`);
        }
        if (typeof c.actionability_step2_prob === "number") {
            parts.push(`action-required ${confidencePercent(c.actionability_step2_prob)}`);
        }
        return el("p", { class: "confidence" }, parts.length ? `Model confidence: ${parts.join(", ")}` : "No model confidence recorded.");
    }
    function annotationForm(row) {
        const draft = {
            verdict: "Correct",
            correctedActionability: "",
            correctedApplicability: "",
            reason: "",
        };
        const problems = el("p", { class: "problems" });
        const submit = el("button", { class: "submit" }, "Submit annotation");
        const actionabilityPicker = el("select", {
            onchange: (event) => {
                draft.correctedActionability = event.target.value;
                sync();
            },
        });
        actionabilityPicker.append(option("", "(unchanged)"));
        for (const label of ACTIONABILITY_LABELS)
            actionabilityPicker.append(option(label));
        const applicabilityPicker = el("select", {
            onchange: (event) => {
                draft.correctedApplicability = event.target.value;
                sync();
            },
        });
        applicabilityPicker.append(option("", "(unchanged)"));
        for (const label of APPLICABILITY_LABELS)
            applicabilityPicker.append(option(label));
        const reason = el("textarea", {
            placeholder: "Reason for the correction",
            oninput: (event) => {
                draft.reason = event.target.value;
                sync();
            },
        });
        const correctionFields = el("div", { class: "correction-fields hidden" }, el("label", {}, "Corrected actionability ", actionabilityPicker), el("label", {}, "Corrected applicability ", applicabilityPicker), el("label", {}, "Reason ", reason));
        function sync() {
            correctionFields.classList.toggle("hidden", draft.verdict === "Correct");
            const issues = annotationProblems(draft);
            problems.textContent = issues.join("; ");
            submit.disabled = !canSubmit(draft);
        }
        const verdictPicker = el("select", {
            onchange: (event) => {
                draft.verdict = event.target.value;
                sync();
            },
        });
        verdictPicker.append(option("Correct", "Correct (confirm label)"));
        verdictPicker.append(option("Incorrect", "Incorrect (correct it)"));
        submit.addEventListener("click", async () => {
            try {
                await api.annotate(row.id, toRequest(draft));
                // refetch so the rendered label always matches store state
                await showDetail(row.id);
                await refresh();
            }
            catch (error) {
                onError(error);
            }
        });
        sync();
        return el("div", { class: "annotation-form" }, el("h3", {}, `Annotate (${row.annotation_count} so far)`), el("label", {}, "Verdict ", verdictPicker), correctionFields, problems, submit);
    }
    function buildFilterBar() {
        clear(filterBar);
        const scopes = state.regionChoices();
        let regionControl;
        if (scopes === null) {
            regionControl = el("input", {
                placeholder: "region (e.g. US-CA)",
                value: state.filters.region ?? "",
                onchange: (event) => {
                    state.setFilter("region", event.target.value);
                    void refresh();
                },
            });
        }
        else {
            const select = el("select", {
                onchange: (event) => {
                    state.setFilter("region", event.target.value);
                    void refresh();
                },
            });
            select.append(option("", "all my regions"));
            for (const region of scopes)
                select.append(option(region));
            regionControl = select;
        }
        const actionability = el("select", {
            onchange: (event) => {
                state.setFilter("actionability", event.target.value);
                void refresh();
            },
        });
        actionability.append(option("", "any actionability"));
        for (const label of ACTIONABILITY_LABELS)
            actionability.append(option(label));
        const applicability = el("select", {
            onchange: (event) => {
                state.setFilter("applicability", event.target.value);
                void refresh();
            },
        });
        applicability.append(option("", "any applicability"));
        for (const label of APPLICABILITY_LABELS)
            applicability.append(option(label));
        const effectiveFrom = el("input", {
            type: "date",
            onchange: (event) => {
                state.setFilter("effective_from", event.target.value);
                void refresh();
            },
        });
        const effectiveTo = el("input", {
            type: "date",
            onchange: (event) => {
                state.setFilter("effective_to", event.target.value);
                void refresh();
            },
        });
        const search = el("input", {
            placeholder: "search text",
            value: state.filters.q ?? "",
            onchange: (event) => {
                state.setFilter("q", event.target.value);
                void refresh();
            },
        });
        const exportBtn = el("button", {}, "Export CSV");
        exportBtn.addEventListener("click", async () => {
            try {
                const blob = await api.exportCsv(currentFilters());
                const url = URL.createObjectURL(blob);
                const link = el("a", { href: url, download: "announcements.csv" });
                document.body.append(link);
                link.click();
                link.remove();
                URL.revokeObjectURL(url);
            }
            catch (error) {
                onError(error);
            }
        });
        const clearBtn = el("button", {
            onclick: () => {
                state.clearFilters();
                buildFilterBar();
                void refresh();
            },
        }, "Clear filters");
        filterBar.append(regionControl, actionability, applicability, el("label", {}, "effective from ", effectiveFrom), el("label", {}, "to ", effectiveTo), search, clearBtn, exportBtn);
    }
    buildFilterBar();
    void refresh();
    root.append(filterBar, el("div", { class: "panes" }, listPane, detailPane));
    return root;
}
