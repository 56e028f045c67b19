"""Global-best particle swarm with a linearly decreasing inertia weight."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from metabench.algorithms._params import Params, real
from metabench.core import ConfigError, TraceRecorder, clamp, uniform_init


@dataclass(frozen=True)
class PsoParams(Params):
    c1: float = 2.0
    c2: float = 2.0
    w_min: float = 0.4
    w_max: float = 0.9
    v_max_fraction: float = 0.5

    def check(self, *, dim, pop_size):
        real("c1", self.c1, 0.0)
        real("c2", self.c2, 0.0)
        real("w_min", self.w_min)
        real("w_max", self.w_max)
        if self.w_min > self.w_max:
            raise ConfigError(f"w_min ({self.w_min}) must not exceed w_max ({self.w_max})")
        real("v_max_fraction", self.v_max_fraction, 0.0, 1.0, lo_open=True)


def inertia_at(gen: int, total: int, params: PsoParams) -> float:
    """Inertia weight at generation ``gen``: ``w_max`` at 0 down to ``w_min`` at ``total``."""
    if total == 0:
        return params.w_max
    return params.w_max - (params.w_max - params.w_min) * gen / total


def update_velocity(position, velocity, personal_best, global_best, w, params, v_max, rng):
    """New velocities ``w v + c1 r1 (p - x) + c2 r2 (g - x)``, clipped to ``+-v_max``.

    ``r1`` and ``r2`` are scalars per particle, shared across dimensions.
    Rows of ``position`` are particles; a single 1-D particle also works.
    """
    position = np.asarray(position, dtype=float)
    shape = position.shape[:-1] + (1,)
    r1 = rng.random(shape)
    r2 = rng.random(shape)
    v = (
        w * np.asarray(velocity, dtype=float)
        + params.c1 * r1 * (personal_best - position)
        + params.c2 * r2 * (global_best - position)
    )
    return np.clip(v, -v_max, v_max)


def update_position(position, velocity, bounds) -> np.ndarray:
    return clamp(np.asarray(position, dtype=float) + velocity, bounds)


def pso_run(objective, bounds, pop_size, generations, params: PsoParams, rng, callback=None):
    v_max = params.v_max_fraction * bounds.width
    recorder = TraceRecorder(objective)
    x = uniform_init(bounds, pop_size, rng)
    v = np.zeros_like(x)
    pbest = x.copy()
    pbest_fit = np.full(pop_size, np.inf)

    for gen in range(generations + 1):
        fit = objective.evaluate(x)
        recorder.record(fit, x)
        improved = fit < pbest_fit
        pbest[improved] = x[improved]
        pbest_fit[improved] = fit[improved]
        g = int(np.argmin(pbest_fit))
        if callback is not None:
            callback(
                gen,
                {
                    "positions": x,
                    "velocities": v,
                    "fitness": fit,
                    "personal_best": pbest,
                    "personal_best_fitness": pbest_fit,
                    "global_best_fitness": float(pbest_fit[g]),
                },
            )
        if gen == generations:
            break
        w = inertia_at(gen, generations, params)
        v = update_velocity(x, v, pbest, pbest[g], w, params, v_max, rng)
        x = update_position(x, v, bounds)

    return recorder.finish()
