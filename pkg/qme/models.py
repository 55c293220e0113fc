from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .constants import (
    DECOMPOSITION_TOL,
    DEFAULT_DELTA_E_POINTS,
    DEFAULT_EPSILON,
    DEFAULT_Q_GRID,
    DEFAULT_TEMPERATURE,
    DEFAULT_THETA_GRID,
    DEFAULT_WORKERS,
)


@dataclass(frozen=True)
class Grid:
    """Inclusive linear grid ``lo:hi:points``."""

    lo: float
    hi: float
    points: int

    def values(self) -> tuple[float, ...]:
        return tuple(float(x) for x in np.linspace(self.lo, self.hi, self.points))

    def __str__(self) -> str:
        return f"{self.lo:.15g}:{self.hi:.15g}:{self.points}"


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    temperature: float = DEFAULT_TEMPERATURE
    epsilon: float = DEFAULT_EPSILON
    n_list: tuple[int, ...] | None = None
    q_grid: Grid = field(default_factory=lambda: Grid(*DEFAULT_Q_GRID))
    theta_grid: Grid = field(default_factory=lambda: Grid(*DEFAULT_THETA_GRID))
    q: float = 0.5
    theta: float = math.pi / 4
    delta_e_points: int = DEFAULT_DELTA_E_POINTS
    tolerance: float = DECOMPOSITION_TOL
    output: Path | None = None

    def header_items(self) -> list[tuple[str, str]]:
        n_list = "default" if self.n_list is None else ",".join(map(str, self.n_list))
        return [
            ("experiment", self.kind),
            ("temperature", f"{self.temperature:.15g}"),
            ("epsilon", f"{self.epsilon:.15g}"),
            ("n_list", n_list),
            ("q_grid", str(self.q_grid)),
            ("theta_grid", str(self.theta_grid)),
            ("q", f"{self.q:.15g}"),
            ("theta", f"{self.theta:.15g}"),
            ("delta_e_points", str(self.delta_e_points)),
            ("tolerance", f"{self.tolerance:.15g}"),
        ]


@dataclass(frozen=True)
class CliOptions:
    kind: str
    config_file: Path | None
    overrides: dict[str, str]
    log_level: str
    workers: int = DEFAULT_WORKERS


@dataclass(frozen=True)
class ResultTable:
    """Columns with their units, and rows in deterministic grid order."""

    columns: tuple[tuple[str, str], ...]
    rows: tuple[tuple[object, ...], ...]

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.columns)


@dataclass(frozen=True)
class ExperimentResult:
    table: ResultTable
    failures: int = 0
