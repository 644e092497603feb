/** Round half up to two decimals, e.g. 0.625 -> "0.63". */
export function twoDecimals(value) {
    const scaled = Math.floor(value * 100 + 0.5) / 100;
    return scaled.toFixed(2);
}
/** "P/R/F" cell with two-decimal formatting, matching the result tables. */
export function metricCell(cell) {
    return `${twoDecimals(cell.precision)}/${twoDecimals(cell.recall)}/${twoDecimals(cell.f1)}`;
}
export function accuracyPercent(accuracy) {
    return `${Math.floor(accuracy * 100 + 0.5)}%`;
}
export function confidencePercent(p) {
    if (p === null || p === undefined)
        return "-";
    return `${Math.floor(p * 100 + 0.5)}%`;
}
export function dateOrDash(iso) {
    return iso ?? "-";
}
const ACTIONABILITY_COLUMNS = [
    "ActionRequired",
    "InformationOnly",
    "Relevant",
    "Irrelevant",
];
/**
 * Table model for the metrics view: Accuracy | per-class P/R/F | Average.
 * Actionability keeps the published column order with the merged Relevant
 * class between InformationOnly and Irrelevant.
 */
export function buildReportTable(report) {
    const classNames = report.task === "actionability"
        ? [...ACTIONABILITY_COLUMNS]
        : Object.keys(report.classes);
    return {
        headers: ["Accuracy", ...classNames.map((name) => `${name} (P/R/F)`), "Average"],
        row: [
            accuracyPercent(report.accuracy),
            ...classNames.map((name) => metricCell(report.classes[name])),
            metricCell(report.average),
        ],
    };
}
