"""The five optimizers and their parameter records, keyed by algorithm id."""

from metabench.algorithms.de import DeParams, de_run
from metabench.algorithms.ga import GaParams, ga_run
from metabench.algorithms.gwo import GwoParams, gwo_run
from metabench.algorithms.pso import PsoParams, pso_run
from metabench.algorithms.sa import SaParams, sa_run

RUNNERS = {"ga": ga_run, "pso": pso_run, "gwo": gwo_run, "de": de_run, "sa": sa_run}

PARAMS = {"ga": GaParams, "pso": PsoParams, "gwo": GwoParams, "de": DeParams, "sa": SaParams}

NAMES = {
    "ga": "Genetic Algorithm",
    "pso": "Particle Swarm Optimization",
    "gwo": "Grey Wolf Optimizer",
    "de": "Differential Evolution",
    "sa": "Simulated Annealing",
}

__all__ = [
    "RUNNERS", "PARAMS", "NAMES",
    "GaParams", "PsoParams", "GwoParams", "DeParams", "SaParams",
    "ga_run", "pso_run", "gwo_run", "de_run", "sa_run",
]
