"""Input validation helpers shared by the estimators."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .features import SparseVector


def check_vectors(X: Sequence[SparseVector]) -> Sequence[SparseVector]:
    if len(X) == 0:
        raise ValueError("X must contain at least one document vector")
    dim = X[0].dimension
    for i, x in enumerate(X):
        if x.dimension != dim:
            raise ValueError(
                f"dimension mismatch: X[0] has {dim} features, X[{i}] has {x.dimension}"
            )
    return X


def check_X_y(X: Sequence[SparseVector], y: Sequence) -> tuple[Sequence[SparseVector], list]:
    check_vectors(X)
    if len(X) != len(y):
        raise ValueError(f"X and y length mismatch: {len(X)} != {len(y)}")
    return X, list(y)


def check_binary_targets(y: Sequence) -> np.ndarray:
    arr = np.asarray(list(y), dtype=np.float64)
    values = set(np.unique(arr).tolist())
    if not values <= {0.0, 1.0}:
        raise ValueError(f"binary targets must be 0/1, got values {sorted(values)}")
    if len(values) < 2:
        raise ValueError("training targets contain a single class; need both 0 and 1")
    return arr


def check_dimension(x: SparseVector, expected: int) -> SparseVector:
    if x.dimension != expected:
        raise ValueError(
            f"dimension mismatch: model expects {expected} features, vector has {x.dimension}"
        )
    return x
