"""Simulated annealing with Metropolis acceptance and geometric cooling.

One generation spends ``neighbors_per_gen`` evaluations on Gaussian
neighbours of the current point, then cools the temperature once. The
initial generation evaluates ``pop_size`` uniform samples and starts from the
best of them, so the budget matches the population-based algorithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from metabench.algorithms._params import Params, integer, real
from metabench.core import ConfigError, ContractError, TraceRecorder, clamp, uniform_init

CALIBRATION_SAMPLES = 100


@dataclass(frozen=True)
class SaParams(Params):
    t_initial: float | str = "auto"
    alpha: float = 0.95
    neighbors_per_gen: int | None = None  # None means pop_size
    step_fraction: float = 0.1

    def _fill(self, *, dim, pop_size):
        if self.neighbors_per_gen is None:
            return SaParams(self.t_initial, self.alpha, pop_size, self.step_fraction)
        return self

    def check(self, *, dim, pop_size):
        if self.t_initial != "auto":
            real("t_initial", self.t_initial, 0.0, lo_open=True)
        real("alpha", self.alpha, 0.0, 1.0, lo_open=True, hi_open=True)
        integer("neighbors_per_gen", self.neighbors_per_gen, lo=1)
        real("step_fraction", self.step_fraction, 0.0, 1.0, lo_open=True)


def neighbor(x, bounds, step_fraction: float, rng) -> np.ndarray:
    """Gaussian perturbation with per-dimension sd ``step_fraction * width``, clamped."""
    x = np.asarray(x, dtype=float)
    return clamp(x + (step_fraction * bounds.width) * rng.standard_normal(x.shape), bounds)


def accept(delta_e: float, improved: bool, t: float, rng) -> bool:
    """Metropolis rule: improvements always pass, others with probability ``exp(-dE/T)``."""
    if not t > 0:
        raise ContractError(f"temperature must be positive, got {t}")
    if improved:
        return True
    return math.exp(-delta_e / t) > rng.random()


def cool(t: float, alpha: float) -> float:
    if not 0.0 < alpha < 1.0:
        raise ConfigError(f"cooling factor must lie in (0, 1), got {alpha}")
    return alpha * t


def initial_temperature(objective, bounds, rng) -> float:
    """Ten times the interquartile range of random objective values.

    The calibration samples are not charged to the evaluation budget.
    """
    samples = objective.peek(uniform_init(bounds, CALIBRATION_SAMPLES, rng))
    q1, q3 = np.percentile(samples, [25, 75])
    spread = float(q3 - q1)
    return 10.0 * spread if spread > 0 else 1.0


def sa_run(objective, bounds, pop_size, generations, params: SaParams, rng, callback=None):
    recorder = TraceRecorder(objective)
    m = params.neighbors_per_gen
    starts = uniform_init(bounds, pop_size, rng)
    start_fit = objective.evaluate(starts)
    recorder.record(start_fit, starts)
    i = int(np.argmin(start_fit))
    current, f_s = starts[i].copy(), float(start_fit[i])

    if params.t_initial == "auto":
        t = initial_temperature(objective, bounds, rng)
    else:
        t = float(params.t_initial)
    t_initial = t
    if callback is not None:
        callback(0, {"current": current, "current_fitness": f_s, "temperature": t, "accepted": 0})

    tried = np.empty((m, bounds.dim))
    tried_fit = np.empty(m)
    for gen in range(1, generations + 1):
        accepted = 0
        for j in range(m):
            x_new = neighbor(current, bounds, params.step_fraction, rng)
            f_new = objective(x_new)
            tried[j] = x_new
            tried_fit[j] = f_new
            if accept(abs(f_new - f_s), f_new < f_s, t, rng):
                current, f_s = x_new, f_new
                accepted += 1
        recorder.record(tried_fit, tried)
        if callback is not None:
            callback(
                gen,
                {"current": current, "current_fitness": f_s, "temperature": t, "accepted": accepted},
            )
        t = cool(t, params.alpha)

    return recorder.finish(t_initial=t_initial, t_final=t)
