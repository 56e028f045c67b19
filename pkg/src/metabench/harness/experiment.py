"""Seeded multi-algorithm experiments: execution, aggregation and artifact output."""

from __future__ import annotations

import csv
import dataclasses
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from metabench.algorithms import NAMES, PARAMS
from metabench.core import ALGORITHMS, ConfigError, RunConfig, Trace, run
from metabench.harness.config import ExperimentConfig, ObjectiveSpec
from metabench.harness.svg import convergence_svg

log = logging.getLogger(__name__)

STAT_COLUMNS = ("median", "mean", "std", "min", "max")
RUN_HEADER = ("generation", "best_so_far", "gen_best", "evaluations")
AGGREGATE_HEADER = ("generation", "algorithm") + STAT_COLUMNS
SUMMARY_HEADER = ("algorithm", "repeats") + STAT_COLUMNS + ("evaluations",)
BIAS_HEADER = ("algorithm", "unshifted_median", "shifted_median", "ratio")

# Defaults that depend on the problem are shown symbolically.
_DERIVED_DEFAULTS = {
    "tournament_size": "min(3, pop_size)",
    "mutation_prob": "1/dim",
    "neighbors_per_gen": "pop_size",
}


@dataclass
class AggregateReport:
    """Per-generation statistics of best-so-far across repeats, per algorithm.

    ``stats[algo]`` has shape ``(generations + 1, 5)`` with columns
    median, mean, std (population, ddof=0), min, max.
    """

    generations: np.ndarray
    stats: dict[str, np.ndarray]
    traces: dict[str, list[Trace]]
    seeds: list[int]
    files: list[Path] = dataclasses.field(default_factory=list)

    @property
    def algorithms(self) -> list[str]:
        return list(self.stats)

    def median_curve(self, algorithm: str) -> np.ndarray:
        return self.stats[algorithm][:, 0]

    def final(self, algorithm: str) -> dict[str, float]:
        return dict(zip(STAT_COLUMNS, (float(v) for v in self.stats[algorithm][-1])))


@dataclass
class BiasReport:
    unshifted: AggregateReport
    shifted: AggregateReport
    shift: tuple[float, ...]
    ratios: dict[str, float]
    files: list[Path] = dataclasses.field(default_factory=list)


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def summarize(curves: np.ndarray) -> np.ndarray:
    """Column statistics of a ``(repeats, generations + 1)`` matrix of best-so-far values."""
    curves = np.asarray(curves, dtype=float)
    return np.column_stack(
        [
            np.median(curves, axis=0),
            np.mean(curves, axis=0),
            np.std(curves, axis=0),
            np.min(curves, axis=0),
            np.max(curves, axis=0),
        ]
    )


def aggregate(traces: dict[str, list[Trace]], seeds: list[int]) -> AggregateReport:
    lengths = {len(t) for ts in traces.values() for t in ts}
    if len(lengths) != 1:
        raise ValueError(f"traces disagree on the number of generations: {sorted(lengths)}")
    stats = {algo: summarize([t.best_so_far for t in ts]) for algo, ts in traces.items()}
    return AggregateReport(np.arange(lengths.pop()), stats, traces, list(seeds))


def _execute(job: tuple[ObjectiveSpec, RunConfig]) -> Trace:
    spec, config = job
    return run(spec.build(), config)


def execute_runs(config: ExperimentConfig, workers: int = 1) -> dict[str, list[Trace]]:
    """Run every (algorithm, repeat) pair; results come back in configuration order."""
    jobs = [(config.objective, rc) for a in config.algorithms for rc in config.run_configs(a)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_execute, jobs))
    else:
        results = [_execute(job) for job in jobs]
    traces: dict[str, list[Trace]] = {}
    for (_, rc), trace in zip(jobs, results):
        traces.setdefault(rc.algorithm, []).append(trace)
    return traces


def prepare_output(path) -> Path:
    """Create the output directory and prove it is writable (raises ``OSError``)."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    probe = path / ".write_probe"
    probe.write_text("")
    probe.unlink()
    return path


def _write_csv(path: Path, header, rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_run_csv(path: Path, trace: Trace) -> Path:
    rows = (
        (e.generation, format_float(e.best_so_far), format_float(e.gen_best), e.evaluations)
        for e in trace.entries
    )
    return _write_csv(path, RUN_HEADER, rows)


def run_csv_path(output_dir: Path, algorithm: str, repeat: int) -> Path:
    return Path(output_dir) / "runs" / algorithm / f"repeat_{repeat:03d}.csv"


def write_report(config: ExperimentConfig, report: AggregateReport) -> list[Path]:
    out = Path(config.output_dir)
    files = []
    for algo, traces in report.traces.items():
        for k, trace in enumerate(traces):
            files.append(write_run_csv(run_csv_path(out, algo, k), trace))

    rows = []
    for g in report.generations:
        for algo in report.algorithms:
            rows.append((int(g), algo, *(format_float(v) for v in report.stats[algo][g])))
    files.append(_write_csv(out / "aggregate.csv", AGGREGATE_HEADER, rows))

    summary = []
    for algo in report.algorithms:
        final = report.stats[algo][-1]
        evals = report.traces[algo][0].entries[-1].evaluations
        summary.append((algo, len(report.traces[algo]), *(format_float(v) for v in final), evals))
    files.append(_write_csv(out / "summary.csv", SUMMARY_HEADER, summary))

    resolved = config.resolved()
    run_info = {
        algo: [dict(t.info) for t in traces]
        for algo, traces in report.traces.items()
        if any(t.info for t in traces)
    }
    if run_info:
        resolved["run_info"] = run_info
    path = out / "resolved_config.json"
    path.write_text(json.dumps(resolved, indent=2) + "\n")
    files.append(path)

    obj = config.objective.build()
    title = f"{obj.name} (dim={obj.dim}), pop={config.pop_size}, repeats={config.repeats}"
    svg = convergence_svg(
        report.generations,
        {algo: report.median_curve(algo) for algo in report.algorithms},
        title=title,
    )
    path = out / "convergence.svg"
    path.write_text(svg)
    files.append(path)
    return files


def run_experiment(config: ExperimentConfig, workers: int = 1) -> AggregateReport:
    """Execute ``repeats`` seeded runs per algorithm and write all artifacts.

    Configuration and output-directory problems surface before any run starts.
    Repeat ``k`` uses the same seed for every algorithm, so all of them start
    from the same initial population.
    """
    config.validate()
    prepare_output(config.output_dir)
    log.info(
        "running %d algorithm(s) x %d repeat(s) on %s",
        len(config.algorithms), config.repeats, config.objective.name,
    )
    report = aggregate(execute_runs(config, workers), config.seeds())
    report.files = write_report(config, report)
    return report


def bias_ratio(shifted: float, unshifted: float) -> float:
    """``shifted / unshifted`` with 0/0 read as 1 and x/0 as infinity."""
    if unshifted == 0.0:
        return 1.0 if shifted == 0.0 else math.inf
    return shifted / unshifted


def compare_origin_bias(config: ExperimentConfig, shift, workers: int = 1) -> BiasReport:
    """Run every algorithm on the unshifted and shifted objective with matched seeds.

    Artifacts go to ``<output_dir>/unshifted`` and ``<output_dir>/shifted``; the
    per-algorithm ratio of median final best-so-far lands in ``bias.csv``.
    """
    if config.objective.name != "rastrigin":
        raise ConfigError("the origin-bias comparison needs a shiftable objective (rastrigin)")
    config = config.with_all_algorithms()
    shifted_obj = config.objective.with_shift(shift)
    shifted_obj.build()
    root = prepare_output(config.output_dir)
    base = replace(config, objective=config.objective.with_shift(0.0), output_dir=root / "unshifted")
    moved = replace(config, objective=shifted_obj, output_dir=root / "shifted")
    base.validate()
    moved.validate()

    unshifted = run_experiment(base, workers)
    shifted = run_experiment(moved, workers)
    ratios = {
        algo: bias_ratio(shifted.final(algo)["median"], unshifted.final(algo)["median"])
        for algo in unshifted.algorithms
    }
    rows = [
        (
            algo,
            format_float(unshifted.final(algo)["median"]),
            format_float(shifted.final(algo)["median"]),
            format_float(ratios[algo]),
        )
        for algo in unshifted.algorithms
    ]
    bias_csv = _write_csv(root / "bias.csv", BIAS_HEADER, rows)
    files = unshifted.files + shifted.files + [bias_csv]
    return BiasReport(unshifted, shifted, shifted_obj.shift, ratios, files)


def list_algorithms() -> dict[str, dict]:
    """Algorithm ids with their display names and parameter defaults."""
    listing = {}
    for algo in ALGORITHMS:
        params = {}
        for f in dataclasses.fields(PARAMS[algo]):
            default = f.default
            params[f.name] = _DERIVED_DEFAULTS.get(f.name, default) if default is None else default
        listing[algo] = {"name": NAMES[algo], "params": params}
    return listing
