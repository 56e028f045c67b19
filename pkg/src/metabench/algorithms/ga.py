"""Simple generational genetic algorithm on real-valued genomes.

Tournament selection, single-point crossover and uniform mutation. There is
no elitism: each generation of children replaces the parents wholesale and
the best solution is tracked outside the population.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from metabench.algorithms._params import Params, integer, real
from metabench.core import Bounds, ConfigError, ContractError, TraceRecorder, uniform_init


@dataclass(frozen=True)
class GaParams(Params):
    tournament_size: int | None = None  # None means min(3, pop_size)
    crossover_prob: float = 0.9
    mutation_prob: float | None = None  # per gene; None means 1/dim

    def _fill(self, *, dim, pop_size):
        return GaParams(
            min(3, pop_size) if self.tournament_size is None else self.tournament_size,
            self.crossover_prob,
            1.0 / dim if self.mutation_prob is None else self.mutation_prob,
        )

    def check(self, *, dim, pop_size):
        integer("tournament_size", self.tournament_size, lo=1)
        if self.tournament_size > pop_size:
            raise ConfigError(
                f"tournament_size ({self.tournament_size}) exceeds pop_size ({pop_size})"
            )
        real("crossover_prob", self.crossover_prob, 0.0, 1.0)
        real("mutation_prob", self.mutation_prob, 0.0, 1.0)


def tournament_select(fitness, k: int, rng, size: int | None = None):
    """Index of the winner of a ``k``-entrant tournament (entrants drawn with replacement).

    With ``size`` given, runs that many independent tournaments and returns an
    index array.
    """
    fitness = np.asarray(fitness, dtype=float)
    if fitness.size == 0:
        raise ContractError("cannot select from an empty population")
    if not 1 <= k <= fitness.size:
        raise ContractError(f"tournament size must be in [1, {fitness.size}], got {k}")
    shape = (1 if size is None else size, k)
    entrants = np.asarray(rng.integers(0, fitness.size, size=shape))
    winners = entrants[np.arange(shape[0]), np.argmin(fitness[entrants], axis=1)]
    return int(winners[0]) if size is None else winners


def single_point_crossover(p1, p2, prob: float, rng):
    """Swap the tails of two parents after a random cut point.

    Accepts single genomes or row-stacked pairs. Each pair crosses with
    probability ``prob`` at a cut drawn uniformly from ``1..d-1``; otherwise
    the children are copies of the parents.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if p1.shape != p2.shape:
        raise ContractError(f"parent shapes differ: {p1.shape} vs {p2.shape}")
    single = p1.ndim == 1
    a, b = np.atleast_2d(p1), np.atleast_2d(p2)
    m, d = a.shape
    if d < 2:
        return p1.copy(), p2.copy()
    crossing = rng.random(m) < prob
    cut = rng.integers(1, d, size=m)
    head = (np.arange(d)[None, :] < cut[:, None]) | ~crossing[:, None]
    c1 = np.where(head, a, b)
    c2 = np.where(head, b, a)
    if single:
        return c1[0], c2[0]
    return c1, c2


def uniform_mutate(genome, prob: float, bounds: Bounds, rng) -> np.ndarray:
    """Resample each gene uniformly within its bounds with probability ``prob``."""
    genome = np.asarray(genome, dtype=float)
    mask = rng.random(genome.shape) < prob
    fresh = bounds.lower + rng.random(genome.shape) * bounds.width
    return np.where(mask, fresh, genome)


def ga_run(objective, bounds, pop_size, generations, params: GaParams, rng, callback=None):
    if pop_size < 2:
        raise ConfigError(f"ga needs pop_size >= 2, got {pop_size}")
    recorder = TraceRecorder(objective)
    pop = uniform_init(bounds, pop_size, rng)
    fit = objective.evaluate(pop)
    recorder.record(fit, pop)
    if callback is not None:
        callback(0, {"positions": pop, "fitness": fit})

    n_pairs = math.ceil(pop_size / 2)
    for gen in range(1, generations + 1):
        winners = tournament_select(fit, params.tournament_size, rng, size=2 * n_pairs)
        parents = pop[winners]
        c1, c2 = single_point_crossover(parents[0::2], parents[1::2], params.crossover_prob, rng)
        children = np.empty_like(parents)
        children[0::2] = c1
        children[1::2] = c2
        # odd population: the last child is dropped after mutation
        pop = uniform_mutate(children, params.mutation_prob, bounds, rng)[:pop_size]
        fit = objective.evaluate(pop)
        recorder.record(fit, pop)
        if callback is not None:
            callback(gen, {"positions": pop, "fitness": fit, "parents": winners})

    return recorder.finish()
