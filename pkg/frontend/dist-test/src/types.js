export const ACTIONABILITY_LABELS = [
    "ActionRequired",
    "InformationOnly",
    "Irrelevant",
];
export const APPLICABILITY_LABELS = [
    "Benefits",
    "Expats",
    "HR",
    "Others",
    "Payroll",
    "TaxFiling",
];
