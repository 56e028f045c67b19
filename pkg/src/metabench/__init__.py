"""Meta-heuristic optimizers (GA, PSO, GWO, DE, SA) and a convergence benchmark harness."""

from metabench.core import (
    ALGORITHMS,
    Bounds,
    Candidate,
    ConfigError,
    ContractError,
    RunConfig,
    Trace,
    TraceEntry,
    clamp,
    mix_seed,
    run,
    uniform_init,
)
from metabench.objectives import Objective, make_objective, peaks, rastrigin

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS", "Bounds", "Candidate", "ConfigError", "ContractError", "RunConfig",
    "Trace", "TraceEntry", "clamp", "mix_seed", "run", "uniform_init",
    "Objective", "make_objective", "peaks", "rastrigin",
]
