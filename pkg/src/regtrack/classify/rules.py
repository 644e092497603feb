"""Keyword rules scored on training data, with high-precision filtering.

A rule is a lowercase phrase matched case-insensitively as a substring of the
document text. Rule precision is always measured on the training split, never
on test data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Sequence

from ..corpus import LabeledCorpus
from ..labels import ActionabilityLabel, canonical_index


@dataclass(frozen=True)
class Rule:
    phrase: str
    target: ActionabilityLabel
    precision: float
    support: int

    def matches(self, lowered_text: str) -> bool:
        return self.phrase in lowered_text


@dataclass(frozen=True)
class RuleSet:
    """Rules plus the precision threshold they were filtered at (None = raw)."""

    rules: tuple[Rule, ...]
    filter_threshold: float | None = None

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def is_filtered(self) -> bool:
        return self.filter_threshold is not None

    def matching(self, text: str) -> list[Rule]:
        lowered = text.lower()
        return [r for r in self.rules if r.matches(lowered)]

    def to_json_dict(self) -> dict:
        return {
            "filter_threshold": self.filter_threshold,
            "rules": [
                {
                    "phrase": r.phrase,
                    "target": r.target.value,
                    "precision": r.precision,
                    "support": r.support,
                }
                for r in self.rules
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "RuleSet":
        return cls(
            rules=tuple(
                Rule(
                    phrase=r["phrase"],
                    target=ActionabilityLabel(r["target"]),
                    precision=float(r["precision"]),
                    support=int(r["support"]),
                )
                for r in obj["rules"]
            ),
            filter_threshold=obj.get("filter_threshold"),
        )


def score_rules(
    candidate_phrases: Iterable[tuple[str, ActionabilityLabel]],
    train: LabeledCorpus,
) -> list[Rule]:
    """Score each (phrase, target) on the training corpus.

    support = number of training docs containing the phrase; precision =
    fraction of those whose gold label equals the target (0 when unmatched).
    """
    bodies = [(ann.body.lower(), ann.actionability) for ann in train]
    rules = []
    for phrase, target in candidate_phrases:
        phrase = phrase.strip().lower()
        if not phrase:
            raise ValueError("rule phrase must be non-empty")
        matched = [gold for body, gold in bodies if phrase in body]
        support = len(matched)
        correct = sum(1 for gold in matched if gold == target)
        precision = correct / support if support else 0.0
        rules.append(Rule(phrase=phrase, target=target, precision=precision, support=support))
    return rules


def filter_rules(
    rules: Sequence[Rule], threshold: float = 0.5, min_support: int = 3
) -> RuleSet:
    """Keep rules with precision strictly above the threshold and enough support."""
    kept = tuple(r for r in rules if r.precision > threshold and r.support >= min_support)
    return RuleSet(rules=kept, filter_threshold=threshold)


def rule_classify(
    text: str, ruleset: RuleSet
) -> tuple[ActionabilityLabel, list[Rule]] | None:
    """Precision-weighted vote of the matching rules; None when nothing matches.

    Each matched rule adds its precision to its target's score; the best class
    wins, ties breaking by canonical label order.
    """
    matched = ruleset.matching(text)
    if not matched:
        return None
    scores: dict[ActionabilityLabel, float] = {}
    for rule in matched:
        scores[rule.target] = scores.get(rule.target, 0.0) + rule.precision
    best = min(scores, key=lambda lbl: (-scores[lbl], canonical_index(lbl)))
    return best, matched


def default_rule_candidates() -> list[tuple[str, ActionabilityLabel]]:
    """Starter candidate phrases shipped with the package.

    This is an illustrative seed list; production deployments should mine and
    score candidates from their own training data.
    """
    raw = resources.files("regtrack.data").joinpath("default_rules.json").read_text("utf-8")
    obj = json.loads(raw)
    out = []
    for target_value, phrases in obj.items():
        target = ActionabilityLabel(target_value)
        out.extend((phrase, target) for phrase in phrases)
    return out
