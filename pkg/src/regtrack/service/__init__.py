"""Persistent store, authentication, ingest pipeline, training, and REST API."""

from .auth import Role, UserProfile, authenticate, hash_token
from .store import AnnotationRecord, QueryFilter, Store, Verdict
from .pipeline import PipelineSummary, run_pipeline
from .training import train_and_evaluate

__all__ = [
    "Role",
    "UserProfile",
    "authenticate",
    "hash_token",
    "AnnotationRecord",
    "QueryFilter",
    "Store",
    "Verdict",
    "PipelineSummary",
    "run_pipeline",
    "train_and_evaluate",
]
