import { ApiError } from "../api.js";
import { clear, el, option } from "../dom.js";
import { buildReportTable } from "../format.js";
export function reportsView(api, onError) {
    const root = el("section", { class: "reports" });
    const tableHost = el("div", { class: "report-table" });
    let task = "actionability";
    async function refresh() {
        clear(tableHost);
        try {
            const report = await api.latestReport(task);
            const model = buildReportTable(report);
            const table = el("table", { class: "metrics" });
            table.append(el("tr", {}, ...model.headers.map((h) => el("th", {}, h))));
            table.append(el("tr", {}, ...model.row.map((cell) => el("td", {}, cell))));
            tableHost.append(table);
        }
        catch (error) {
            if (error instanceof ApiError && error.status === 404) {
                tableHost.append(el("p", { class: "empty" }, "No report yet. Train a model to see metrics here."));
                return;
            }
            onError(error);
        }
    }
    const picker = el("select", {
        onchange: (event) => {
            task = event.target.value;
            void refresh();
        },
    });
    picker.append(option("actionability"), option("applicability"));
    root.append(el("div", { class: "report-controls" }, el("label", {}, "Task ", picker), el("button", { onclick: () => void refresh() }, "Refresh")), tableHost);
    void refresh();
    return root;
}
