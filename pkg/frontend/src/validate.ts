import type { AnnotationRequest } from "./types.js";

export interface AnnotationDraft {
  verdict: "Correct" | "Incorrect";
  correctedActionability: string;
  correctedApplicability: string;
  reason: string;
}

/**
 * Form guard for the annotation dialog. An Incorrect verdict needs at least
 * one corrected label and a non-empty reason before submit is enabled.
 */
export function annotationProblems(draft: AnnotationDraft): string[] {
  const problems: string[] = [];
  if (draft.verdict === "Incorrect") {
    if (!draft.correctedActionability && !draft.correctedApplicability) {
      problems.push("pick a corrected label");
    }
    if (draft.reason.trim() === "") {
      problems.push("give a reason for the correction");
    }
  }
  return problems;
}

export function canSubmit(draft: AnnotationDraft): boolean {
  return annotationProblems(draft).length === 0;
}

export function toRequest(draft: AnnotationDraft): AnnotationRequest {
  if (draft.verdict === "Correct") {
    return { verdict: "Correct" };
  }
  const request: AnnotationRequest = { verdict: "Incorrect", reason: draft.reason.trim() };
  if (draft.correctedActionability) {
    request.corrected_actionability = draft.correctedActionability;
  }
  if (draft.correctedApplicability) {
    request.corrected_applicability = draft.correctedApplicability;
  }
  return request;
}
