export class ApiError extends Error {
    constructor(status, error, detail) {
        super(`${error}: ${detail}`);
        this.status = status;
        this.error = error;
        this.detail = detail;
    }
}
/** Query string for the announcement list / CSV export endpoints. */
export function buildQuery(filters) {
    const params = new URLSearchParams();
    for (const key of [
        "region",
        "actionability",
        "applicability",
        "effective_from",
        "effective_to",
        "q",
    ]) {
        const value = filters[key];
        if (value !== undefined && value !== "")
            params.set(key, value);
    }
    const encoded = params.toString();
    return encoded ? `?${encoded}` : "";
}
async function parseError(response) {
    let body = { error: "unknown", detail: response.statusText };
    try {
        body = (await response.json());
    }
    catch {
        // non-JSON error body; keep the status text
    }
    return new ApiError(response.status, body.error, body.detail);
}
export class ApiClient {
    constructor(token, baseUrl = "") {
        this.token = token;
        this.baseUrl = baseUrl;
    }
    headers(json = false) {
        const headers = { Authorization: `Bearer ${this.token}` };
        if (json)
            headers["Content-Type"] = "application/json";
        return headers;
    }
    async get(path) {
        const response = await fetch(this.baseUrl + path, { headers: this.headers() });
        if (!response.ok)
            throw await parseError(response);
        return (await response.json());
    }
    async post(path, body) {
        const response = await fetch(this.baseUrl + path, {
            method: "POST",
            headers: this.headers(true),
            body: JSON.stringify(body),
        });
        if (!response.ok)
            throw await parseError(response);
        return (await response.json());
    }
    session() {
        return this.get("/session");
    }
    announcements(filters) {
        return this.get(`/announcements${buildQuery(filters)}`);
    }
    announcement(id) {
        return this.get(`/announcements/${encodeURIComponent(id)}`);
    }
    annotate(id, request) {
        return this.post(`/announcements/${encodeURIComponent(id)}/annotation`, request);
    }
    latestReport(task) {
        return this.get(`/reports/latest?task=${encodeURIComponent(task)}`);
    }
    runPipeline() {
        return this.post("/pipeline/run", {});
    }
    addUser(request) {
        return this.post("/admin/users", request);
    }
    /** The CSV itself comes from the server; we only carry the auth header. */
    async exportCsv(filters) {
        const response = await fetch(this.baseUrl + `/export.csv${buildQuery(filters)}`, {
            headers: this.headers(),
        });
        if (!response.ok)
            throw await parseError(response);
        return response.blob();
    }
    csvPath(filters) {
        return `/export.csv${buildQuery(filters)}`;
    }
}
