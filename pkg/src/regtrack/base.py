"""Minimal estimator plumbing so models compose like familiar fit/predict objects.

Constructor arguments are hyperparameters: stored verbatim, never mutated by
fit(). Attributes learned by fit() end in a single underscore.
"""

from __future__ import annotations

import inspect
from typing import Any

from .errors import NotFittedError


class ParamsMixin:
    """get_params/set_params over the constructor signature."""

    @classmethod
    def _param_names(cls) -> list[str]:
        sig = inspect.signature(cls.__init__)
        return [
            name
            for name, p in sig.parameters.items()
            if name != "self" and p.kind not in (p.VAR_POSITIONAL, p.VAR_KEYWORD)
        ]

    def get_params(self, deep: bool = True) -> dict[str, Any]:
        params = {name: getattr(self, name) for name in self._param_names()}
        if deep:
            for name, value in list(params.items()):
                if hasattr(value, "get_params"):
                    for sub, sub_value in value.get_params(deep=True).items():
                        params[f"{name}__{sub}"] = sub_value
        return params

    def set_params(self, **params: Any):
        valid = set(self._param_names())
        for name, value in params.items():
            head, _, tail = name.partition("__")
            if head not in valid:
                raise ValueError(f"invalid parameter {name!r} for {type(self).__name__}")
            if tail:
                getattr(self, head).set_params(**{tail: value})
            else:
                setattr(self, name, value)
        return self

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params(deep=False).items())
        return f"{type(self).__name__}({args})"


def check_is_fitted(estimator: Any, *attributes: str) -> None:
    """Raise NotFittedError unless every fitted attribute is present."""
    missing = [a for a in attributes if getattr(estimator, a, None) is None]
    if missing:
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted (missing {', '.join(missing)}); "
            "call fit() first"
        )
