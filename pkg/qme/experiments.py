from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .collective import (
    CollectiveStrategy,
    StrategyKind,
    binomial_entropy_asymptotic,
    evaluate_analytic,
    evaluate_exact,
    parallel_envelope,
)
from .constants import (
    DEFAULT_N_LIST,
    DEFAULT_SCALING_N_LIST,
    EXACT_PATH_CAP,
    EXPERIMENT_CYCLE,
    EXPERIMENT_DECOMPOSITION,
    EXPERIMENT_FIG2,
    EXPERIMENT_GHZ_SCALING,
    EXPERIMENT_REGION,
    EXPERIMENT_SCALING,
)
from .engine import efficiency_via_free_energy, run_cycle
from .errors import ConfigError
from .models import ExperimentConfig, ExperimentResult, ResultTable
from .qubit import energy_hamiltonian, qubit_hamiltonian, qubit_spec
from .sweep import SweepRunner

Row = tuple[object, ...]

ENERGY = "energy (k_B = 1)"
ENTROPY = "nats"
RATIO = "dimensionless"


@dataclass(frozen=True)
class ExperimentDeps:
    sweep: SweepRunner
    logger: logging.Logger


class ExperimentRunner:
    """Builds one experiment's grid, evaluates it and tabulates the rows."""

    columns: tuple[tuple[str, str], ...] = ()
    default_n_list: tuple[int, ...] = DEFAULT_N_LIST

    def __init__(self, deps: ExperimentDeps, config: ExperimentConfig) -> None:
        self._sweep = deps.sweep
        self._logger = deps.logger
        self.config = config

    @property
    def n_list(self) -> tuple[int, ...]:
        return self.config.n_list or self.default_n_list

    async def _rows(self) -> list[Row]:
        raise NotImplementedError()

    def _failures(self, rows: list[Row]) -> int:
        return 0

    async def run(self) -> ExperimentResult:
        self._logger.info(
            "Running experiment '%s' (T=%g, eps=%g)",
            self.config.kind,
            self.config.temperature,
            self.config.epsilon,
        )
        rows = await self._rows()
        failures = self._failures(rows)
        self._logger.info(
            "Experiment '%s' finished; rows=%d", self.config.kind, len(rows)
        )
        return ExperimentResult(ResultTable(self.columns, tuple(rows)), failures)

    def _q_theta_points(self) -> list[tuple[float, float]]:
        return [
            (q, theta)
            for q in self.config.q_grid.values()
            for theta in self.config.theta_grid.values()
        ]


class CycleExperiment(ExperimentRunner):
    """Full single-qubit cycle ledger over the (q, θ) grid."""

    columns = (
        ("q", RATIO),
        ("theta", "radians"),
        ("e_initial", ENERGY),
        ("e_final", ENERGY),
        ("delta_e", ENERGY),
        ("s_final", ENTROPY),
        ("w_erasure", ENERGY),
        ("w_net", ENERGY),
        ("eta", RATIO),
        ("eta_free_energy", RATIO),
    )

    async def _rows(self) -> list[Row]:
        return await self._sweep.map(self._evaluate, self._q_theta_points(), "cycle")

    def _evaluate(self, point: tuple[float, float]) -> Row:
        q, theta = point
        spec = qubit_spec(q, theta, self.config.epsilon, self.config.temperature)
        report = run_cycle(spec)
        eta_free_energy = efficiency_via_free_energy(spec) if report.energized else None
        return (
            q,
            theta,
            report.e_initial,
            report.e_final,
            report.delta_e,
            report.s_final,
            report.w_erasure,
            report.w_net,
            report.eta,
            eta_free_energy,
        )


class RegionExperiment(ExperimentRunner):
    """Attainable (ΔE_1, W_1) pairs of single two-level engines."""

    columns = (
        ("q", RATIO),
        ("theta", "radians"),
        ("delta_e1", ENERGY),
        ("w1", ENERGY),
    )

    async def _rows(self) -> list[Row]:
        rows = await self._sweep.map(self._evaluate, self._q_theta_points(), "region")
        if not any(isinstance(row[3], float) and row[3] > 0 for row in rows):
            self._logger.warning(
                "Empty engine region: no grid point has W_1 > 0 at T=%g",
                self.config.temperature,
            )
        return rows

    def _evaluate(self, point: tuple[float, float]) -> Row:
        q, theta = point
        report = run_cycle(
            qubit_spec(q, theta, self.config.epsilon, self.config.temperature)
        )
        return (q, theta, report.delta_e, report.w_net)


class Fig2Experiment(ExperimentRunner):
    """Work per subsystem of Dicke strategies locally equivalent to the best single engines."""

    columns = (
        ("N", "count"),
        ("delta_e1", ENERGY),
        ("q_star", RATIO),
        ("w_per_system", ENERGY),
        ("w_parallel", ENERGY),
    )

    def _delta_e_grid(self) -> list[float]:
        top = self.config.epsilon / 2
        points = self.config.delta_e_points
        return [top * index / points for index in range(1, points + 1)]

    async def _rows(self) -> list[Row]:
        points = [(n, delta_e) for n in self.n_list for delta_e in self._delta_e_grid()]
        return await self._sweep.map(self._evaluate, points, "fig2")

    def _evaluate(self, point: tuple[int, float]) -> Row:
        n, delta_e1 = point
        q_star, w_parallel = parallel_envelope(
            delta_e1, self.config.epsilon, self.config.temperature
        )
        report = evaluate_analytic(
            CollectiveStrategy(StrategyKind.DICKE, n, q_star),
            qubit_hamiltonian(self.config.epsilon, math.pi / 4),
            self.config.temperature,
        )
        return (n, delta_e1, q_star, report.work_per_subsystem, w_parallel)


class ScalingExperiment(ExperimentRunner):
    """Dicke efficiency against its large-N form ½·ln(2πeNpq)."""

    columns = (
        ("N", "count"),
        ("eta", RATIO),
        ("eta_asymptotic", RATIO),
        ("residual", ENTROPY),
    )
    default_n_list = DEFAULT_SCALING_N_LIST

    async def _rows(self) -> list[Row]:
        return await self._sweep.map(self._evaluate, list(self.n_list), "scaling")

    def _evaluate(self, n: int) -> Row:
        config = self.config
        strategy = CollectiveStrategy(StrategyKind.DICKE, n, config.q)
        report = evaluate_analytic(
            strategy, qubit_hamiltonian(config.epsilon, config.theta), config.temperature
        )
        delta_e1 = report.per_subsystem.delta_e
        if report.eta is None:
            return (n, None, None, None)
        asymptotic = binomial_entropy_asymptotic(n, strategy.p)
        eta_asymptotic = 1.0 - config.temperature * asymptotic / (n * delta_e1)
        residual = None
        if config.temperature > 0:
            residual = n * (1.0 - report.eta) * delta_e1 / config.temperature - asymptotic
        return (n, report.eta, eta_asymptotic, residual)


class GhzScalingExperiment(ExperimentRunner):
    """GHZ efficiency against 1 − (T/ΔE_1)·ln 2/N."""

    columns = (
        ("N", "count"),
        ("eta", RATIO),
        ("eta_formula", RATIO),
        ("normalized_entropy", ENTROPY),
    )
    default_n_list = DEFAULT_SCALING_N_LIST

    async def _rows(self) -> list[Row]:
        return await self._sweep.map(self._evaluate, list(self.n_list), "ghz-scaling")

    def _evaluate(self, n: int) -> Row:
        config = self.config
        report = evaluate_analytic(
            CollectiveStrategy(StrategyKind.GHZ, n),
            energy_hamiltonian(config.epsilon),
            config.temperature,
        )
        delta_e1 = report.per_subsystem.delta_e
        eta_formula = 1.0 - (config.temperature / delta_e1) * math.log(2.0) / n
        normalized = None
        if config.temperature > 0 and report.eta is not None:
            normalized = n * (1.0 - report.eta) * delta_e1 / config.temperature
        return (n, report.eta, eta_formula, normalized)


class DecompositionExperiment(ExperimentRunner):
    """Exact-path check of η_♯ = η_∥ + T·I/(N·ΔE_1) for every strategy."""

    columns = (
        ("strategy", "name"),
        ("N", "count"),
        ("q", RATIO),
        ("eta_parallel", RATIO),
        ("eta_collective", RATIO),
        ("i_mutual", ENTROPY),
        ("residual", RATIO),
    )
    default_n_list = (2, 3, 4, 6, 8)

    async def _rows(self) -> list[Row]:
        too_large = [n for n in self.n_list if n > EXACT_PATH_CAP]
        if too_large:
            raise ConfigError(
                f"decomposition runs on the exact path; N must be <= {EXACT_PATH_CAP}, "
                f"got {too_large}"
            )
        return await self._sweep.map(self._evaluate, self._points(), "decomposition")

    def _points(self) -> list[tuple[StrategyKind, int, float | None]]:
        points: list[tuple[StrategyKind, int, float | None]] = []
        for n in self.n_list:
            for q in self.config.q_grid.values():
                points.append((StrategyKind.PARALLEL, n, q))
                points.append((StrategyKind.DICKE, n, q))
                if n == 2:
                    points.append((StrategyKind.TWO_QUBIT, n, q))
            points.append((StrategyKind.GHZ, n, None))
        return points

    def _evaluate(self, point: tuple[StrategyKind, int, float | None]) -> Row:
        kind, n, q = point
        config = self.config
        if q is None:
            strategy = CollectiveStrategy(kind, n)
            h1 = energy_hamiltonian(config.epsilon)
        else:
            strategy = CollectiveStrategy(kind, n, q)
            h1 = qubit_hamiltonian(config.epsilon, config.theta)
        report = evaluate_exact(strategy, h1, config.temperature)
        self._logger.info(
            "%s N=%d q=%s: eta_parallel=%s eta=%s I=%.6g residual=%s",
            kind,
            n,
            "-" if q is None else f"{q:g}",
            report.eta_parallel,
            report.eta,
            report.i_mutual,
            report.decomposition_residual,
        )
        return (
            str(kind),
            n,
            q,
            report.eta_parallel,
            report.eta,
            report.i_mutual,
            report.decomposition_residual,
        )

    def _failures(self, rows: list[Row]) -> int:
        failures = [
            row
            for row in rows
            if isinstance(row[6], float) and abs(row[6]) > self.config.tolerance
        ]
        for row in failures:
            self._logger.error(
                "Decomposition residual %s exceeds %g for %s N=%s q=%s",
                row[6],
                self.config.tolerance,
                row[0],
                row[1],
                row[2],
            )
        return len(failures)


EXPERIMENT_RUNNER_FOR_KIND: dict[str, type[ExperimentRunner]] = {
    EXPERIMENT_CYCLE: CycleExperiment,
    EXPERIMENT_REGION: RegionExperiment,
    EXPERIMENT_FIG2: Fig2Experiment,
    EXPERIMENT_SCALING: ScalingExperiment,
    EXPERIMENT_GHZ_SCALING: GhzScalingExperiment,
    EXPERIMENT_DECOMPOSITION: DecompositionExperiment,
}
