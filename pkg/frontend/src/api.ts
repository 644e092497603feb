import type {
  AnnotationRequest,
  AnnouncementList,
  AnnouncementRow,
  ApiErrorBody,
  NewUserRequest,
  Report,
  SessionProfile,
  TriageFilters,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public error: string,
    public detail: string,
  ) {
    super(`${error}: ${detail}`);
  }
}

/** Query string for the announcement list / CSV export endpoints. */
export function buildQuery(filters: TriageFilters): string {
  const params = new URLSearchParams();
  for (const key of [
    "region",
    "actionability",
    "applicability",
    "effective_from",
    "effective_to",
    "q",
  ] as const) {
    const value = filters[key];
    if (value !== undefined && value !== "") params.set(key, value);
  }
  const encoded = params.toString();
  return encoded ? `?${encoded}` : "";
}

async function parseError(response: Response): Promise<ApiError> {
  let body: ApiErrorBody = { error: "unknown", detail: response.statusText };
  try {
    body = (await response.json()) as ApiErrorBody;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, body.error, body.detail);
}

export class ApiClient {
  constructor(
    private token: string,
    private baseUrl = "",
  ) {}

  private headers(json = false): Record<string, string> {
    const headers: Record<string, string> = { Authorization: `Bearer ${this.token}` };
    if (json) headers["Content-Type"] = "application/json";
    return headers;
  }

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path, { headers: this.headers() });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: this.headers(true),
      body: JSON.stringify(body),
    });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  session(): Promise<SessionProfile> {
    return this.get("/session");
  }

  announcements(filters: TriageFilters): Promise<AnnouncementList> {
    return this.get(`/announcements${buildQuery(filters)}`);
  }

  announcement(id: string): Promise<AnnouncementRow> {
    return this.get(`/announcements/${encodeURIComponent(id)}`);
  }

  annotate(id: string, request: AnnotationRequest): Promise<AnnouncementRow> {
    return this.post(`/announcements/${encodeURIComponent(id)}/annotation`, request);
  }

  latestReport(task: string): Promise<Report> {
    return this.get(`/reports/latest?task=${encodeURIComponent(task)}`);
  }

  runPipeline(): Promise<unknown> {
    return this.post("/pipeline/run", {});
  }

  addUser(request: NewUserRequest): Promise<unknown> {
    return this.post("/admin/users", request);
  }

  /** The CSV itself comes from the server; we only carry the auth header. */
  async exportCsv(filters: TriageFilters): Promise<Blob> {
    const response = await fetch(this.baseUrl + `/export.csv${buildQuery(filters)}`, {
      headers: this.headers(),
    });
    if (!response.ok) throw await parseError(response);
    return response.blob();
  }

  csvPath(filters: TriageFilters): string {
    return `/export.csv${buildQuery(filters)}`;
  }
}
