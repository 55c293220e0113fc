from __future__ import annotations

from .app import run
from .collective import (
    CollectiveStrategy,
    ComputationPath,
    LocalEquivalenceReport,
    StrategyKind,
    StrategyReport,
    binomial_entropy_asymptotic,
    binomial_entropy_exact,
    dicke_basis,
    evaluate_analytic,
    evaluate_exact,
    evaluate_strategy,
    ghz_basis,
    two_qubit_basis,
    verify_local_equivalence,
    work_gain_two_qubit,
)
from .config_loader import load_config
from .engine import CycleReport, EngineSpec, efficiency_via_free_energy, free_energy, run_cycle
from .errors import ConfigError, InvariantViolationError, QmeError
from .models import CliOptions, ExperimentConfig
from .numerics import ComplexMatrix, PureState, StateVector
from .quantum import (
    DensityMatrix,
    Hamiltonian,
    OutcomeDistribution,
    ProjectiveMeasurement,
    entropy_of_diagonal_state,
    mean_energy,
    measure,
    multipartite_mutual_information,
    reduced_state,
    shannon_entropy,
)

__all__ = [
    "CliOptions",
    "CollectiveStrategy",
    "ComplexMatrix",
    "ComputationPath",
    "ConfigError",
    "CycleReport",
    "DensityMatrix",
    "EngineSpec",
    "ExperimentConfig",
    "Hamiltonian",
    "InvariantViolationError",
    "LocalEquivalenceReport",
    "OutcomeDistribution",
    "ProjectiveMeasurement",
    "PureState",
    "QmeError",
    "StateVector",
    "StrategyKind",
    "StrategyReport",
    "binomial_entropy_asymptotic",
    "binomial_entropy_exact",
    "dicke_basis",
    "efficiency_via_free_energy",
    "entropy_of_diagonal_state",
    "evaluate_analytic",
    "evaluate_exact",
    "evaluate_strategy",
    "free_energy",
    "ghz_basis",
    "load_config",
    "mean_energy",
    "measure",
    "multipartite_mutual_information",
    "reduced_state",
    "run",
    "run_cycle",
    "shannon_entropy",
    "two_qubit_basis",
    "verify_local_equivalence",
    "work_gain_two_qubit",
]
