export type ActionabilityLabel = "ActionRequired" | "InformationOnly" | "Irrelevant";

export type ApplicabilityLabel =
  | "Benefits"
  | "Expats"
  | "HR"
  | "Others"
  | "Payroll"
  | "TaxFiling";

export type Role = "Officer" | "Admin";

export const ACTIONABILITY_LABELS: ActionabilityLabel[] = [
  "ActionRequired",
  "InformationOnly",
  "Irrelevant",
];

export const APPLICABILITY_LABELS: ApplicabilityLabel[] = [
  "Benefits",
  "Expats",
  "HR",
  "Others",
  "Payroll",
  "TaxFiling",
];

export interface SessionProfile {
  user_id: string;
  display_name: string;
  role: Role;
  region_scopes: string[];
}

export interface Confidence {
  actionability_step1_prob?: number;
  actionability_step2_prob?: number | null;
  [key: string]: unknown;
}

export interface AnnouncementRow {
  id: string;
  source_id: string;
  region: string;
  url: string;
  title: string;
  body?: string;
  published_date: string | null;
  effective_date: string | null;
  actionability: ActionabilityLabel | null;
  applicability: ApplicabilityLabel | null;
  label_source: string | null;
  confidence: Confidence | null;
  annotation_count: number;
}

export interface AnnouncementList {
  count: number;
  items: AnnouncementRow[];
}

export interface TriageFilters {
  region?: string;
  actionability?: string;
  applicability?: string;
  effective_from?: string;
  effective_to?: string;
  q?: string;
}

export interface AnnotationRequest {
  verdict: "Correct" | "Incorrect";
  corrected_actionability?: string;
  corrected_applicability?: string;
  reason?: string;
}

export interface MetricCell {
  precision: number;
  recall: number;
  f1: number;
}

export interface Report {
  task: "actionability" | "applicability";
  accuracy: number;
  classes: Record<string, MetricCell>;
  average: MetricCell;
}

export interface NewUserRequest {
  user_id: string;
  display_name: string;
  role: Role;
  region_scopes: string[];
  token: string;
}

export interface ApiErrorBody {
  error: string;
  detail: string;
}
