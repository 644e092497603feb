"""Two-step hierarchical actionability classification and the rule/ML hybrid.

Step 1 gates Relevant vs Irrelevant on the full training set; step 2 decides
ActionRequired vs InformationOnly and is trained only on gold-Relevant items.
The hybrid lets high-precision filtered rules override the ML decision, per
step in the hierarchical variant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..base import ParamsMixin, check_is_fitted
from ..features import SparseVector
from ..labels import ActionabilityLabel, canonical_index
from ..validation import check_X_y
from .linear import BinaryLogisticRegression, OneVsRestLogisticRegression
from .naive_bayes import BinaryNaiveBayes, MultinomialNaiveBayes
from .rules import Rule, RuleSet

AR = ActionabilityLabel.ACTION_REQUIRED
IO = ActionabilityLabel.INFORMATION_ONLY
IRR = ActionabilityLabel.IRRELEVANT


@dataclass(frozen=True)
class HierarchicalPrediction:
    label: ActionabilityLabel
    step1_prob: float
    step2_prob: float | None


def _make_binary(algo: str, l2_lambda: float, max_epochs: int, tol: float, alpha: float):
    if algo == "lr":
        return BinaryLogisticRegression(l2_lambda=l2_lambda, max_epochs=max_epochs, tol=tol)
    if algo == "nb":
        return BinaryNaiveBayes(alpha=alpha)
    raise ValueError(f"unknown algorithm {algo!r} (expected 'lr' or 'nb')")


class HierarchicalClassifier(ParamsMixin):
    """Relevant/Irrelevant gate followed by ActionRequired/InformationOnly."""

    def __init__(
        self,
        algo: str = "lr",
        step1_threshold: float = 0.5,
        l2_lambda: float = 1.0,
        max_epochs: int = 1000,
        tol: float = 1e-6,
        alpha: float = 1.0,
    ):
        self.algo = algo
        self.step1_threshold = step1_threshold
        self.l2_lambda = l2_lambda
        self.max_epochs = max_epochs
        self.tol = tol
        self.alpha = alpha
        self.step1_: object | None = None
        self.step2_: object | None = None

    def fit(
        self, X: Sequence[SparseVector], y: Sequence[ActionabilityLabel]
    ) -> "HierarchicalClassifier":
        X, y = check_X_y(X, y)
        step1_targets = [0 if label is IRR else 1 for label in y]
        if len(set(step1_targets)) < 2:
            raise ValueError("step 1 needs both Relevant and Irrelevant training items")

        relevant = [(x, label) for x, label in zip(X, y) if label is not IRR]
        step2_targets = [1 if label is AR else 0 for _, label in relevant]
        if len(set(step2_targets)) < 2:
            raise ValueError(
                "step 2 needs both ActionRequired and InformationOnly training items"
            )

        self.step1_ = _make_binary(
            self.algo, self.l2_lambda, self.max_epochs, self.tol, self.alpha
        ).fit(X, step1_targets)
        self.step2_ = _make_binary(
            self.algo, self.l2_lambda, self.max_epochs, self.tol, self.alpha
        ).fit([x for x, _ in relevant], step2_targets)
        return self

    def predict(self, x: SparseVector) -> HierarchicalPrediction:
        """Irrelevant when the step-1 probability is below the threshold;
        otherwise step 2 decides between ActionRequired and InformationOnly."""
        check_is_fitted(self, "step1_", "step2_")
        p1 = self.step1_.predict_proba(x)
        if p1 < self.step1_threshold:
            return HierarchicalPrediction(label=IRR, step1_prob=p1, step2_prob=None)
        p2 = self.step2_.predict_proba(x)
        label = AR if p2 >= 0.5 else IO
        return HierarchicalPrediction(label=label, step1_prob=p1, step2_prob=p2)

    def to_json_dict(self) -> dict:
        check_is_fitted(self, "step1_", "step2_")
        return {
            "type": "hierarchical",
            "config": self.get_params(deep=False),
            "step1": self.step1_.to_json_dict(),
            "step2": self.step2_.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "HierarchicalClassifier":
        model = cls(**obj["config"])
        loader = (
            BinaryLogisticRegression.from_json_dict
            if model.algo == "lr"
            else BinaryNaiveBayes.from_json_dict
        )
        model.step1_ = loader(obj["step1"])
        model.step2_ = loader(obj["step2"])
        return model


class HybridClassifier(ParamsMixin):
    """Filtered-rule override with an ML fallback.

    With a hierarchical fallback the override applies independently per step:
    step 1 weighs Relevant-targeting rules (ActionRequired + InformationOnly)
    against Irrelevant-targeting ones; step 2 weighs ActionRequired against
    InformationOnly rules. With a flat fallback, any rule match decides via
    the precision-weighted vote. Inputs matching no rule get exactly the ML
    fallback's decision.
    """

    def __init__(self, ruleset: RuleSet, fallback):
        if not ruleset.is_filtered:
            raise ValueError("hybrid requires a filtered ruleset")
        self.ruleset = ruleset
        self.fallback = fallback

    @staticmethod
    def _vote(matched: Sequence[Rule], positives: tuple, negatives: tuple) -> bool | None:
        """True/False for the positive/negative side, None when no rule applies."""
        pos = sum(r.precision for r in matched if r.target in positives)
        neg = sum(r.precision for r in matched if r.target in negatives)
        if pos == 0.0 and neg == 0.0:
            return None
        return pos >= neg  # tie goes to the canonically-earlier side

    def predict(self, text: str, x: SparseVector) -> ActionabilityLabel:
        matched = self.ruleset.matching(text)
        if isinstance(self.fallback, HierarchicalClassifier):
            return self._predict_per_step(matched, x)
        if matched:
            scores: dict[ActionabilityLabel, float] = {}
            for rule in matched:
                scores[rule.target] = scores.get(rule.target, 0.0) + rule.precision
            return min(scores, key=lambda lbl: (-scores[lbl], canonical_index(lbl)))
        label, _ = self.fallback.predict(x)
        return label

    def _predict_per_step(self, matched: Sequence[Rule], x: SparseVector) -> ActionabilityLabel:
        fallback: HierarchicalClassifier = self.fallback
        relevant_vote = self._vote(matched, positives=(AR, IO), negatives=(IRR,))
        if relevant_vote is None:
            is_relevant = fallback.step1_.predict_proba(x) >= fallback.step1_threshold
        else:
            is_relevant = relevant_vote
        if not is_relevant:
            return IRR
        ar_vote = self._vote(matched, positives=(AR,), negatives=(IO,))
        if ar_vote is None:
            return AR if fallback.step2_.predict_proba(x) >= 0.5 else IO
        return AR if ar_vote else IO

    def to_json_dict(self) -> dict:
        return {
            "type": "hybrid",
            "ruleset": self.ruleset.to_json_dict(),
            "fallback": self.fallback.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "HybridClassifier":
        fb = obj["fallback"]
        if fb["type"] == "hierarchical":
            fallback = HierarchicalClassifier.from_json_dict(fb)
        elif fb["type"] == "ovr_lr":
            fallback = OneVsRestLogisticRegression.from_json_dict(fb, ActionabilityLabel)
        else:
            fallback = MultinomialNaiveBayes.from_json_dict(fb, ActionabilityLabel)
        return cls(ruleset=RuleSet.from_json_dict(obj["ruleset"]), fallback=fallback)


def fit_flat_classifier(
    X: Sequence[SparseVector],
    y: Sequence,
    algo: str = "lr",
    l2_lambda: float = 1.0,
    max_epochs: int = 1000,
    tol: float = 1e-6,
    alpha: float = 1.0,
):
    """Flat multiclass model (3-class actionability or 6-class applicability)."""
    if algo == "lr":
        model = OneVsRestLogisticRegression(l2_lambda=l2_lambda, max_epochs=max_epochs, tol=tol)
    elif algo == "nb":
        model = MultinomialNaiveBayes(alpha=alpha)
    else:
        raise ValueError(f"unknown algorithm {algo!r} (expected 'lr' or 'nb')")
    return model.fit(X, y)
