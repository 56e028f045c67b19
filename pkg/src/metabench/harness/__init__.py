"""Benchmark harness: experiment configs, seeded repeats, CSV and SVG artifacts."""

from metabench.harness.config import AlgorithmSpec, ExperimentConfig, ObjectiveSpec, load_config
from metabench.harness.experiment import (
    AggregateReport,
    BiasReport,
    compare_origin_bias,
    list_algorithms,
    run_experiment,
)

__all__ = [
    "AlgorithmSpec", "ExperimentConfig", "ObjectiveSpec", "load_config",
    "AggregateReport", "BiasReport", "compare_origin_bias", "list_algorithms", "run_experiment",
]
