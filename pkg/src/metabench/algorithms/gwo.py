"""Grey wolf optimizer: alpha/beta/delta-led encircling with a shrinking radius."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from metabench.algorithms._params import Params, real
from metabench.core import ConfigError, ContractError, TraceRecorder, clamp, uniform_init


@dataclass(frozen=True)
class GwoParams(Params):
    a_initial: float = 2.0
    a_final: float = 0.0

    def check(self, *, dim, pop_size):
        real("a_final", self.a_final, 0.0)
        real("a_initial", self.a_initial)
        if self.a_initial < self.a_final:
            raise ConfigError(
                f"a_initial ({self.a_initial}) must be >= a_final ({self.a_final})"
            )


def a_schedule(gen: int, total: int, params: GwoParams) -> float:
    if total == 0:
        return params.a_initial
    return params.a_initial - (params.a_initial - params.a_final) * gen / total


def coefficients(a: float, rng, size=None):
    """Draw the encircling coefficients ``A = 2 a r1 - a`` and ``C = 2 r2``."""
    r1 = rng.random(size)
    r2 = rng.random(size)
    return 2.0 * a * r1 - a, 2.0 * r2


def rank_pack(fitness) -> np.ndarray:
    """Indices of alpha, beta and delta; ties resolved by lower index."""
    fitness = np.asarray(fitness, dtype=float)
    if fitness.size < 3:
        raise ConfigError(f"the wolf hierarchy needs at least 3 wolves, got {fitness.size}")
    return np.argsort(fitness, kind="stable")[:3]


def reposition(positions, leaders, a: float, bounds, rng) -> np.ndarray:
    """Move every wolf to the mean of its three leader-guided points.

    For each leader ``L``: ``D = |C X_L - X|`` and ``X_L' = X_L - A D``, with a
    fresh scalar pair ``(A, C)`` per wolf and leader. ``leaders`` is the
    frozen ``(3, dim)`` snapshot of alpha, beta and delta.
    """
    positions = np.asarray(positions, dtype=float)
    leaders = np.asarray(leaders, dtype=float)
    if leaders.shape[0] != 3:
        raise ContractError(f"expected 3 leaders, got {leaders.shape[0]}")
    shape = positions.shape[:-1] + (1,)
    guided = np.zeros_like(positions)
    for leader in leaders:
        A, C = coefficients(a, rng, shape)
        distance = np.abs(C * leader - positions)
        guided += leader - A * distance
    return clamp(guided / 3.0, bounds)


def gwo_run(objective, bounds, pop_size, generations, params: GwoParams, rng, callback=None):
    recorder = TraceRecorder(objective)
    wolves = uniform_init(bounds, pop_size, rng)

    for gen in range(generations + 1):
        fit = objective.evaluate(wolves)
        recorder.record(fit, wolves)
        ranks = rank_pack(fit)
        if callback is not None:
            callback(gen, {"positions": wolves, "fitness": fit, "leaders": ranks})
        if gen == generations:
            break
        a = a_schedule(gen, generations, params)
        wolves = reposition(wolves, wolves[ranks], a, bounds, rng)

    return recorder.finish()
