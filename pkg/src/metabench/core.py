"""Shared types, bounds handling, seeding and the algorithm dispatch entry point."""

from __future__ import annotations

import math
from functools import cached_property
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

ALGORITHMS = ("ga", "pso", "gwo", "de", "sa")

# Smallest population each algorithm can work with.
MIN_POP_SIZE = {"ga": 2, "pso": 1, "gwo": 3, "de": 4, "sa": 1}

_UINT64_MAX = 2**64 - 1


class ConfigError(ValueError):
    """Raised for invalid user-facing configuration (bad ids, sizes, parameters)."""


class ContractError(ValueError):
    """Raised when a caller violates an operation's preconditions."""


@dataclass(frozen=True)
class Bounds:
    """Axis-aligned box ``lower <= x <= upper``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.array(self.lower, dtype=float).reshape(-1)
        upper = np.array(self.upper, dtype=float).reshape(-1)
        if lower.size == 0:
            raise ConfigError("bounds must have at least one dimension")
        if lower.shape != upper.shape:
            raise ConfigError(
                f"lower and upper bounds differ in length ({lower.size} != {upper.size})"
            )
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise ConfigError("bounds must be finite")
        if np.any(lower >= upper):
            bad = int(np.argmax(lower >= upper))
            raise ConfigError(
                f"lower bound must be below upper bound (dimension {bad}: "
                f"{lower[bad]} >= {upper[bad]})"
            )
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def box(cls, low: float, high: float, dim: int) -> "Bounds":
        return cls(np.full(dim, low, dtype=float), np.full(dim, high, dtype=float))

    @property
    def dim(self) -> int:
        return int(self.lower.size)

    @cached_property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all((x >= self.lower) & (x <= self.upper)))


@dataclass
class Candidate:
    """A position together with its objective value (``None`` until evaluated)."""

    position: np.ndarray
    fitness: float | None = None

    @property
    def evaluated(self) -> bool:
        return self.fitness is not None


@dataclass(frozen=True)
class TraceEntry:
    generation: int
    best_so_far: float
    gen_best: float
    evaluations: int


@dataclass(frozen=True)
class Trace:
    """Per-generation convergence record of a single run.

    ``entries[0]`` describes the evaluated initial population. ``info`` holds
    run-level values worth reporting, e.g. the temperature chosen by SA.
    """

    entries: tuple[TraceEntry, ...]
    final_best_position: np.ndarray
    info: Mapping[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def best_so_far(self) -> np.ndarray:
        return np.array([e.best_so_far for e in self.entries])

    @property
    def gen_best(self) -> np.ndarray:
        return np.array([e.gen_best for e in self.entries])

    @property
    def evaluations(self) -> np.ndarray:
        return np.array([e.evaluations for e in self.entries], dtype=np.int64)

    @property
    def final_best(self) -> float:
        return self.entries[-1].best_so_far


class TraceRecorder:
    """Accumulates trace entries as an algorithm evaluates generations.

    Evaluation counts are read off the objective's counter so that the trace
    reflects exactly what was spent.
    """

    def __init__(self, objective):
        self._objective = objective
        self._start = objective.evaluations
        self._entries: list[TraceEntry] = []
        self.best_fitness = math.inf
        self.best_position: np.ndarray | None = None

    def record(self, fitness: np.ndarray, positions: np.ndarray) -> None:
        i = int(np.argmin(fitness))
        gen_best = float(fitness[i])
        if gen_best < self.best_fitness or self.best_position is None:
            self.best_fitness = gen_best
            self.best_position = np.array(positions[i], dtype=float)
        self._entries.append(
            TraceEntry(
                generation=len(self._entries),
                best_so_far=self.best_fitness,
                gen_best=gen_best,
                evaluations=self._objective.evaluations - self._start,
            )
        )

    def finish(self, **info) -> Trace:
        return Trace(tuple(self._entries), self.best_position, dict(info))


@dataclass(frozen=True)
class RunConfig:
    algorithm: str
    pop_size: int
    generations: int
    seed: int
    params: Mapping[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(
                f"unknown algorithm {self.algorithm!r}; valid ids: {', '.join(ALGORITHMS)}"
            )
        if not _is_int(self.pop_size) or self.pop_size < 1:
            raise ConfigError(f"pop_size must be a positive integer, got {self.pop_size!r}")
        need = MIN_POP_SIZE[self.algorithm]
        if self.pop_size < need:
            raise ConfigError(
                f"{self.algorithm} needs pop_size >= {need}, got {self.pop_size}"
            )
        if not _is_int(self.generations) or self.generations < 0:
            raise ConfigError(
                f"generations must be a non-negative integer, got {self.generations!r}"
            )
        if not _is_int(self.seed) or not 0 <= self.seed <= _UINT64_MAX:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


def _is_int(value) -> bool:
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def mix_seed(base_seed: int, index: int) -> int:
    """Derive the seed of repeat ``index`` from ``base_seed``.

    Uses numpy's SeedSequence hashing with the repeat index as spawn key, so
    neighbouring repeats get statistically independent streams.
    """
    seq = np.random.SeedSequence(int(base_seed), spawn_key=(int(index),))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def uniform_init(bounds: Bounds, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` positions uniformly in the box; returns an ``(n, dim)`` array."""
    if n < 1:
        raise ContractError(f"need at least one candidate, got n={n}")
    return bounds.lower + rng.random((n, bounds.dim)) * bounds.width


def clamp(position, bounds: Bounds) -> np.ndarray:
    """Project coordinates onto the box. Works on single points and stacked rows."""
    position = np.asarray(position, dtype=float)
    if position.shape[-1:] != (bounds.dim,):
        raise ContractError(
            f"position has dimension {position.shape[-1:] or 0}, bounds have {bounds.dim}"
        )
    return np.minimum(np.maximum(position, bounds.lower), bounds.upper)


def resolve_params(algorithm: str, overrides: Mapping[str, Any] | None, *, dim: int, pop_size: int):
    """Build the complete, validated parameter record for ``algorithm``."""
    from metabench.algorithms import PARAMS

    if algorithm not in PARAMS:
        raise ConfigError(f"unknown algorithm {algorithm!r}; valid ids: {', '.join(ALGORITHMS)}")
    return PARAMS[algorithm].resolve(overrides or {}, dim=dim, pop_size=pop_size)


def run(objective, config: RunConfig, callback: Callable[[int, dict], None] | None = None) -> Trace:
    """Run one seeded optimization and return its trace.

    The configuration is fully validated before the objective is touched.
    ``callback(generation, state)`` is forwarded to the algorithm and sees its
    internal state after every generation.
    """
    from metabench.algorithms import RUNNERS

    config.validate()
    if objective.dim != objective.bounds.dim:
        raise ConfigError("objective dimension does not match its bounds")
    params = resolve_params(
        config.algorithm, config.params, dim=objective.dim, pop_size=config.pop_size
    )
    rng = make_rng(config.seed)
    return RUNNERS[config.algorithm](
        objective,
        objective.bounds,
        config.pop_size,
        config.generations,
        params,
        rng,
        callback=callback,
    )
