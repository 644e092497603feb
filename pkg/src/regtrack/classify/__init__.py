"""Trainable classifiers: logistic regression, naive Bayes, keyword rules,
and their hierarchical/hybrid compositions."""

from .linear import BinaryLogisticRegression, OneVsRestLogisticRegression, lr_gradient, lr_loss
from .naive_bayes import BinaryNaiveBayes, MultinomialNaiveBayes
from .rules import Rule, RuleSet, default_rule_candidates, filter_rules, rule_classify, score_rules
from .hierarchy import (
    HierarchicalClassifier,
    HierarchicalPrediction,
    HybridClassifier,
    fit_flat_classifier,
)
from .io import load_model, save_model

__all__ = [
    "BinaryLogisticRegression",
    "OneVsRestLogisticRegression",
    "lr_loss",
    "lr_gradient",
    "MultinomialNaiveBayes",
    "BinaryNaiveBayes",
    "Rule",
    "RuleSet",
    "score_rules",
    "filter_rules",
    "rule_classify",
    "default_rule_candidates",
    "HierarchicalClassifier",
    "HierarchicalPrediction",
    "HybridClassifier",
    "fit_flat_classifier",
    "save_model",
    "load_model",
]
