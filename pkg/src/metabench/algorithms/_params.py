from __future__ import annotations

import dataclasses
import numbers
from typing import Any, Mapping

from metabench.core import ConfigError


class Params:
    """Mixin for the frozen per-algorithm parameter dataclasses."""

    @classmethod
    def resolve(cls, overrides: Mapping[str, Any], *, dim: int, pop_size: int):
        names = [f.name for f in dataclasses.fields(cls)]
        unknown = sorted(set(overrides) - set(names))
        if unknown:
            raise ConfigError(
                f"unknown parameter(s) {', '.join(unknown)}; accepted: {', '.join(names)}"
            )
        params = cls(**overrides)._fill(dim=dim, pop_size=pop_size)
        params.check(dim=dim, pop_size=pop_size)
        return params

    def _fill(self, *, dim: int, pop_size: int):
        return self

    def check(self, *, dim: int, pop_size: int) -> None:
        pass

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def real(name: str, value, lo=None, hi=None, *, lo_open=False, hi_open=False) -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ConfigError(f"{name} must be a number, got {value!r}")
    value = float(value)
    if lo is not None and (value < lo or (lo_open and value == lo)):
        raise ConfigError(f"{name} must be {'>' if lo_open else '>='} {lo}, got {value}")
    if hi is not None and (value > hi or (hi_open and value == hi)):
        raise ConfigError(f"{name} must be {'<' if hi_open else '<='} {hi}, got {value}")
    return value


def integer(name: str, value, lo=None, hi=None) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if lo is not None and value < lo:
        raise ConfigError(f"{name} must be >= {lo}, got {value}")
    if hi is not None and value > hi:
        raise ConfigError(f"{name} must be <= {hi}, got {value}")
    return int(value)
