"""Seeded statistical examples attached to individual operations."""

import numpy as np
import pytest

from metabench import RunConfig, make_objective, mix_seed, run

from oracles import PEAKS_MIN


def finals(name, dim, algo, pop, gens, seeds=10, params=None):
    return [
        run(make_objective(name, dim), RunConfig(algo, pop, gens, mix_seed(0, k), params or {}))
        for k in range(seeds)
    ]


def crossing_generation(trace, target=PEAKS_MIN + 0.1):
    hit = np.nonzero(trace.best_so_far <= target)[0]
    return hit[0] if hit.size else np.inf


@pytest.fixture(scope="module")
def ga_crossing():
    return np.median([crossing_generation(t) for t in finals("peaks", 2, "ga", 50, 100)])


@pytest.mark.parametrize("algo", ["pso", "gwo"])
def test_swarms_cross_faster_than_ga_on_peaks(algo, ga_crossing):
    median = np.median([crossing_generation(t) for t in finals("peaks", 2, algo, 50, 100)])
    assert median <= ga_crossing


def test_ga_peaks_median():
    assert abs(np.median([t.final_best for t in finals("peaks", 2, "ga", 50, 100)]) - PEAKS_MIN) <= 0.1


def test_sa_trails_others_on_rastrigin():
    med = {
        algo: np.median([t.final_best for t in finals("rastrigin", 10, algo, 100, 300)])
        for algo in ("sa", "pso", "de", "gwo")
    }
    assert all(med["sa"] > med[a] for a in ("pso", "de", "gwo"))
