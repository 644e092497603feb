"""Label taxonomies for actionability and business-process applicability."""

from __future__ import annotations

import enum


class ActionabilityLabel(enum.Enum):
    """How urgently an announcement matters to a compliance officer.

    Canonical ordering (for deterministic tie-breaks) is the declaration
    order: ActionRequired < InformationOnly < Irrelevant.
    """

    ACTION_REQUIRED = "ActionRequired"
    INFORMATION_ONLY = "InformationOnly"
    IRRELEVANT = "Irrelevant"


class RelevanceLabel(enum.Enum):
    """Binary collapse of actionability: anything non-ignorable is Relevant."""

    RELEVANT = "Relevant"
    IRRELEVANT = "Irrelevant"


class ApplicabilityLabel(enum.Enum):
    """Business process an announcement pertains to.

    Declared alphabetically; that is the canonical tie-break order.
    """

    BENEFITS = "Benefits"
    EXPATS = "Expats"
    HR = "HR"
    OTHERS = "Others"
    PAYROLL = "Payroll"
    TAX_FILING = "TaxFiling"


class LabelSource(enum.Enum):
    GOLD = "Gold"
    PREDICTED = "Predicted"
    CORRECTED = "Corrected"


class Provenance(enum.Enum):
    HISTORICAL = "Historical"
    SME = "SME"


class Task(enum.Enum):
    ACTIONABILITY = "actionability"
    APPLICABILITY = "applicability"

    @property
    def label_class(self) -> type[enum.Enum]:
        if self is Task.ACTIONABILITY:
            return ActionabilityLabel
        return ApplicabilityLabel

    @property
    def labels(self) -> list[enum.Enum]:
        """All labels of the task, in canonical order."""
        return list(self.label_class)


def to_relevance(label: ActionabilityLabel) -> RelevanceLabel:
    """ActionRequired and InformationOnly merge into Relevant."""
    if label is ActionabilityLabel.IRRELEVANT:
        return RelevanceLabel.IRRELEVANT
    return RelevanceLabel.RELEVANT


_CANONICAL_ORDER: dict[enum.Enum, int] = {}
for _enum_cls in (ActionabilityLabel, RelevanceLabel, ApplicabilityLabel):
    for _i, _member in enumerate(_enum_cls):
        _CANONICAL_ORDER[_member] = _i


def canonical_index(label: enum.Enum) -> int:
    """Position of a label in its taxonomy's canonical tie-break order."""
    return _CANONICAL_ORDER[label]


def parse_label(label_cls: type[enum.Enum], raw: str) -> enum.Enum:
    """Parse a label string, raising ValueError naming the bad value."""
    try:
        return label_cls(raw)
    except ValueError:
        expected = ", ".join(m.value for m in label_cls)
        raise ValueError(
            f"unknown {label_cls.__name__} value {raw!r} (expected one of: {expected})"
        ) from None
