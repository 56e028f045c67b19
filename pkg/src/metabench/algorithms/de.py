"""Differential evolution, DE/rand/1/bin with synchronous greedy replacement."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from metabench.algorithms._params import Params, real
from metabench.core import ConfigError, ContractError, TraceRecorder, clamp, uniform_init


@dataclass(frozen=True)
class DeParams(Params):
    f_weight: float = 0.5
    cr: float = 0.9

    def check(self, *, dim, pop_size):
        real("f_weight", self.f_weight, 0.0, 2.0)
        real("cr", self.cr, 0.0, 1.0)


def mutation_indices(n: int, rng, targets=None) -> np.ndarray:
    """Draw ``(r1, r2, r3)`` for each target: distinct and all different from the target.

    Returns an array of shape ``(len(targets), 3)``; targets default to every
    index of the population.
    """
    if n < 4:
        raise ConfigError(f"differential mutation needs a population of at least 4, got {n}")
    targets = np.arange(n) if targets is None else np.atleast_1d(np.asarray(targets))
    keys = rng.random((targets.size, n))
    keys[np.arange(targets.size), targets] = np.inf
    return np.argsort(keys, axis=1)[:, :3]


def donor(positions, indices, f_weight: float) -> np.ndarray:
    """Donor vectors ``X[r1] + F (X[r2] - X[r3])``; deliberately not clamped."""
    positions = np.asarray(positions, dtype=float)
    indices = np.asarray(indices)
    r1, r2, r3 = indices[..., 0], indices[..., 1], indices[..., 2]
    return positions[r1] + f_weight * (positions[r2] - positions[r3])


def binomial_crossover(target, donor_vec, cr: float, rng) -> np.ndarray:
    """Take each component from the donor when ``u <= cr``, and always at ``j_rand``."""
    target = np.asarray(target, dtype=float)
    donor_vec = np.asarray(donor_vec, dtype=float)
    if target.shape != donor_vec.shape:
        raise ContractError(f"target and donor shapes differ: {target.shape} vs {donor_vec.shape}")
    d = target.shape[-1]
    u = rng.random(target.shape)
    j_rand = rng.integers(0, d, size=target.shape[:-1])
    take = (u <= cr) | (np.arange(d) == np.expand_dims(j_rand, -1))
    return np.where(take, donor_vec, target)


def greedy_select(target_fitness, trial_fitness):
    """True where the trial survives, i.e. ``f(trial) <= f(target)`` (ties go to the trial).

    Unevaluated inputs (``None`` or NaN) are rejected.
    """
    if target_fitness is None or trial_fitness is None:
        raise ContractError("greedy selection needs evaluated target and trial")
    target_fitness = np.asarray(target_fitness, dtype=float)
    trial_fitness = np.asarray(trial_fitness, dtype=float)
    if np.isnan(target_fitness).any() or np.isnan(trial_fitness).any():
        raise ContractError("greedy selection needs evaluated target and trial")
    keep = trial_fitness <= target_fitness
    return bool(keep) if keep.ndim == 0 else keep


def de_run(objective, bounds, pop_size, generations, params: DeParams, rng, callback=None):
    recorder = TraceRecorder(objective)
    pop = uniform_init(bounds, pop_size, rng)
    fit = objective.evaluate(pop)
    recorder.record(fit, pop)
    if callback is not None:
        callback(0, {"positions": pop, "fitness": fit})

    for gen in range(1, generations + 1):
        idx = mutation_indices(pop_size, rng)
        donors = donor(pop, idx, params.f_weight)
        trials = clamp(binomial_crossover(pop, donors, params.cr, rng), bounds)
        trial_fit = objective.evaluate(trials)
        recorder.record(trial_fit, trials)
        keep = greedy_select(fit, trial_fit)
        pop = np.where(keep[:, None], trials, pop)
        fit = np.where(keep, trial_fit, fit)
        if callback is not None:
            callback(
                gen,
                {
                    "positions": pop,
                    "fitness": fit,
                    "trials": trials,
                    "trial_fitness": trial_fit,
                    "mutation_indices": idx,
                },
            )

    return recorder.finish()
