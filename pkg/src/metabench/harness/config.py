"""Experiment configuration: JSON loading, validation and parameter resolution."""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from metabench.core import ALGORITHMS, ConfigError, RunConfig, mix_seed, resolve_params
from metabench.objectives import make_objective

TOP_LEVEL_KEYS = ("objective", "algorithms", "pop_size", "generations", "repeats", "base_seed", "output_dir")


@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    dim: int | None = None
    shift: tuple[float, ...] | None = None

    def build(self):
        return make_objective(self.name, self.dim, self.shift)

    def with_shift(self, shift) -> "ObjectiveSpec":
        return replace(self, shift=_shift_tuple(shift, self.build().dim))

    def as_dict(self) -> dict:
        obj = self.build()
        return {"name": obj.name, "dim": obj.dim, "shift": obj.shift.tolist()}


@dataclass(frozen=True)
class AlgorithmSpec:
    id: str
    params: Mapping[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class ExperimentConfig:
    objective: ObjectiveSpec
    algorithms: tuple[AlgorithmSpec, ...]
    pop_size: int
    generations: int
    repeats: int = 10
    base_seed: int = 0
    output_dir: Path = Path("results")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ExperimentConfig":
        if not isinstance(data, Mapping):
            raise ConfigError("configuration must be a JSON object")
        unknown = sorted(set(data) - set(TOP_LEVEL_KEYS))
        if unknown:
            raise ConfigError(
                f"unknown configuration key(s) {', '.join(unknown)}; accepted: {', '.join(TOP_LEVEL_KEYS)}"
            )
        for key in ("objective", "pop_size", "generations"):
            if key not in data:
                raise ConfigError(f"configuration is missing required key {key!r}")
        config = cls(
            objective=_objective_spec(data["objective"]),
            algorithms=_algorithm_specs(data.get("algorithms", list(ALGORITHMS))),
            pop_size=data["pop_size"],
            generations=data["generations"],
            repeats=data.get("repeats", 10),
            base_seed=data.get("base_seed", 0),
            output_dir=Path(data.get("output_dir", "results")),
        )
        config.validate()
        return config

    def validate(self) -> None:
        objective = self.objective.build()
        if not _is_int(self.repeats) or self.repeats < 1:
            raise ConfigError(f"repeats must be a positive integer, got {self.repeats!r}")
        if not self.algorithms:
            raise ConfigError("at least one algorithm is required")
        ids = [a.id for a in self.algorithms]
        if len(set(ids)) != len(ids):
            raise ConfigError(f"duplicate algorithm ids in {ids}")
        for spec in self.algorithms:
            RunConfig(spec.id, self.pop_size, self.generations, self.base_seed).validate()
            resolve_params(spec.id, spec.params, dim=objective.dim, pop_size=self.pop_size)

    def with_all_algorithms(self) -> "ExperimentConfig":
        """Copy that covers all five algorithms, keeping any configured overrides."""
        given = {a.id: a for a in self.algorithms}
        specs = tuple(given.get(i, AlgorithmSpec(i)) for i in ALGORITHMS)
        return replace(self, algorithms=specs)

    def seeds(self) -> list[int]:
        return [mix_seed(self.base_seed, k) for k in range(self.repeats)]

    def run_configs(self, algorithm: AlgorithmSpec) -> list[RunConfig]:
        return [
            RunConfig(algorithm.id, self.pop_size, self.generations, seed, dict(algorithm.params))
            for seed in self.seeds()
        ]

    def resolved(self) -> dict:
        """Self-describing form of the experiment, with every parameter filled in."""
        dim = self.objective.build().dim
        return {
            "objective": self.objective.as_dict(),
            "algorithms": [
                {
                    "id": a.id,
                    "params": resolve_params(a.id, a.params, dim=dim, pop_size=self.pop_size).as_dict(),
                }
                for a in self.algorithms
            ],
            "pop_size": self.pop_size,
            "generations": self.generations,
            "repeats": self.repeats,
            "base_seed": self.base_seed,
            "output_dir": str(self.output_dir),
            "seeds": self.seeds(),
        }


def load_config(path) -> ExperimentConfig:
    """Read an experiment from a JSON file. Missing files raise ``OSError``."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return ExperimentConfig.from_dict(data)


def _is_int(value) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def _objective_spec(data) -> ObjectiveSpec:
    if isinstance(data, str):
        data = {"name": data}
    if not isinstance(data, Mapping) or "name" not in data:
        raise ConfigError("objective must be an object with at least a 'name'")
    unknown = sorted(set(data) - {"name", "dim", "shift"})
    if unknown:
        raise ConfigError(f"unknown objective key(s) {', '.join(unknown)}")
    spec = ObjectiveSpec(data["name"], data.get("dim"))
    if data.get("shift") is not None:
        spec = spec.with_shift(data["shift"])
    return spec


def _algorithm_specs(data) -> tuple[AlgorithmSpec, ...]:
    if not isinstance(data, list):
        raise ConfigError("algorithms must be a list")
    specs = []
    for entry in data:
        if isinstance(entry, str):
            entry = {"id": entry}
        if not isinstance(entry, Mapping) or "id" not in entry:
            raise ConfigError(f"algorithm entries need an 'id', got {entry!r}")
        if entry["id"] not in ALGORITHMS:
            raise ConfigError(
                f"unknown algorithm {entry['id']!r}; valid ids: {', '.join(ALGORITHMS)}"
            )
        params = entry.get("params") or {}
        if not isinstance(params, Mapping):
            raise ConfigError(f"params of {entry['id']} must be an object")
        specs.append(AlgorithmSpec(entry["id"], dict(params)))
    return tuple(specs)


def _shift_tuple(shift, dim: int) -> tuple[float, ...]:
    """Accept a scalar (broadcast to every dimension) or a full-length vector."""
    try:
        values = np.array(shift, dtype=float).reshape(-1)
    except (TypeError, ValueError):
        raise ConfigError(f"shift must be numeric, got {shift!r}") from None
    if values.size == 1:
        values = np.full(dim, values[0])
    if values.size != dim:
        raise ConfigError(f"shift has {values.size} components, objective dimension is {dim}")
    return tuple(float(v) for v in values)


def parse_shift(text: str) -> list[float]:
    """Parse ``"1.5,1.5,..."`` from the command line."""
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"could not parse shift {text!r}; expected comma-separated numbers") from None
