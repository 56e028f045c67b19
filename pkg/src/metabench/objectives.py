"""Benchmark objectives: the peaks surface and the Rastrigin function."""

from __future__ import annotations

import numpy as np

from metabench.core import Bounds, ConfigError, ContractError

OBJECTIVES = ("peaks", "rastrigin")

DOMAIN = (-3.0, 3.0)


def peaks(x, y):
    """Three-peak test surface on [-3, 3]^2, global minimum about -6.5511."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return (
        3.0 * (1.0 - x) ** 2 * np.exp(-(x**2) - (y + 1.0) ** 2)
        - 10.0 * (x / 5.0 - x**3 - y**5) * np.exp(-(x**2) - y**2)
        - np.exp(-((x + 1.0) ** 2) - y**2) / 3.0
    )


def rastrigin(x):
    """Rastrigin function, ``10 n + sum(x_i^2 - 10 cos(2 pi x_i))``.

    Vectorized over leading axes: the last axis holds the coordinates.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] == 0:
        raise ContractError("rastrigin needs a non-empty coordinate vector")
    n = x.shape[-1]
    return 10.0 * n + (x * x - 10.0 * np.cos(2.0 * np.pi * x)).sum(axis=-1)


class Objective:
    """A named, optionally shifted objective over a box, counting its evaluations.

    Evaluating at ``x`` returns ``f(x - shift)``, so the minimizer of the
    shifted objective sits at ``shift``.
    """

    def __init__(self, name: str, dim: int, bounds: Bounds, shift=None):
        if name not in OBJECTIVES:
            raise ConfigError(f"unknown objective {name!r}; valid names: {', '.join(OBJECTIVES)}")
        self.name = name
        self.dim = int(dim)
        self.bounds = bounds
        shift = np.zeros(self.dim) if shift is None else np.array(shift, dtype=float).reshape(-1)
        if shift.size != self.dim:
            raise ConfigError(f"shift has length {shift.size}, objective dimension is {self.dim}")
        if not bounds.contains(shift):
            raise ConfigError(f"shift {shift.tolist()} lies outside the bounds")
        shift.flags.writeable = False
        self.shift = shift
        self._shifted = bool(np.any(shift != 0.0))
        self.evaluations = 0

    def __repr__(self):
        return f"Objective({self.name!r}, dim={self.dim}, shift={self.shift.tolist()})"

    def _raw(self, x: np.ndarray):
        if self._shifted:
            x = x - self.shift
        if self.name == "peaks":
            return peaks(x[..., 0], x[..., 1])
        return rastrigin(x)

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ContractError(f"expected a point of shape ({self.dim},), got {x.shape}")
        self.evaluations += 1
        return float(self._raw(x))

    def evaluate(self, positions) -> np.ndarray:
        """Evaluate a stack of points of shape ``(n, dim)``; counts ``n`` evaluations."""
        positions = np.asarray(positions, dtype=float)
        if positions.ndim != 2 or positions.shape[1] != self.dim:
            raise ContractError(
                f"expected positions of shape (n, {self.dim}), got {positions.shape}"
            )
        self.evaluations += positions.shape[0]
        return np.asarray(self._raw(positions), dtype=float)

    def peek(self, positions) -> np.ndarray:
        """Evaluate without touching the counter (used for calibration samples)."""
        return np.asarray(self._raw(np.asarray(positions, dtype=float)), dtype=float)


def make_objective(name: str, dim: int | None = None, shift=None) -> Objective:
    """Build a benchmark objective on the [-3, 3] box.

    ``dim`` defaults to 2 for peaks and 10 for rastrigin.
    """
    if name not in OBJECTIVES:
        raise ConfigError(f"unknown objective {name!r}; valid names: {', '.join(OBJECTIVES)}")
    if dim is None:
        dim = 2 if name == "peaks" else 10
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)) or dim < 1:
        raise ConfigError(f"dim must be a positive integer, got {dim!r}")
    if name == "peaks" and dim != 2:
        raise ConfigError(f"peaks is two-dimensional, got dim={dim}")
    return Objective(name, dim, Bounds.box(*DOMAIN, dim), shift)
