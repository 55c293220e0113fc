"""Energy ledger of one measurement-engine cycle.

The cycle is measure → feedback (extract ⟨k|H|k⟩ − E_i on outcome k) →
erase the outcome record at Landauer cost T·S_f. Feedback unitaries are not
built; their average effect is W_ext = ΔE. k_B = 1 throughout.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .constants import MIN_DELTA_E
from .errors import DimensionMismatchError, InvalidStateError, NotAnEngineError
from .numerics import StateVector
from .quantum import (
    DensityMatrix,
    Hamiltonian,
    OutcomeDistribution,
    ProjectiveMeasurement,
    entropy_of_diagonal_state,
    mean_energy,
    measure,
    shannon_entropy,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EngineSpec:
    initial_state: StateVector
    hamiltonian: Hamiltonian
    measurement: ProjectiveMeasurement
    temperature: float

    def __post_init__(self) -> None:
        dims = {
            "initial_state": self.initial_state.dim,
            "hamiltonian": self.hamiltonian.dim,
            "measurement": self.measurement.dim,
        }
        if len(set(dims.values())) != 1:
            raise DimensionMismatchError(f"EngineSpec dimensions disagree: {dims}")
        if not np.isfinite(self.temperature) or self.temperature < 0:
            raise InvalidStateError(
                f"Temperature must be finite and >= 0, got {self.temperature!r}"
            )


@dataclass(frozen=True, eq=False)
class CycleReport:
    """Average energetics of one cycle; ``eta`` is None when ΔE <= 0."""

    e_initial: float
    e_final: float
    delta_e: float
    w_ext: float
    s_final: float
    w_erasure: float
    q_erasure: float
    w_net: float
    eta: float | None
    outcomes: OutcomeDistribution
    outcome_work: tuple[float, ...]
    rho_final: DensityMatrix

    @property
    def energized(self) -> bool:
        return self.delta_e > MIN_DELTA_E

    @property
    def operating_as_engine(self) -> bool:
        return self.energized and self.w_net > 0


def efficiency(delta_e: float, w_net: float) -> float | None:
    if delta_e <= MIN_DELTA_E:
        return None
    return w_net / delta_e


def run_cycle(spec: EngineSpec) -> CycleReport:
    h = spec.hamiltonian
    outcomes, rho_f = measure(spec.initial_state, spec.measurement)
    e_initial = mean_energy(spec.initial_state, h)
    e_final = mean_energy(rho_f, h)
    delta_e = e_final - e_initial
    s_final = shannon_entropy(outcomes)
    w_erasure = spec.temperature * s_final
    w_net = delta_e - w_erasure
    eta = efficiency(delta_e, w_net)
    if eta is None:
        logger.warning("ΔE = %.3g <= 0: not operating as an engine", delta_e)

    basis = spec.measurement.basis_matrix
    outcome_energies = np.einsum("ik,ik->k", basis.conj(), h.matrix.data @ basis).real
    outcome_work = tuple(float(energy) - e_initial for energy in outcome_energies)
    return CycleReport(
        e_initial=e_initial,
        e_final=e_final,
        delta_e=delta_e,
        w_ext=delta_e,
        s_final=s_final,
        w_erasure=w_erasure,
        q_erasure=w_erasure,
        w_net=w_net,
        eta=eta,
        outcomes=outcomes,
        outcome_work=outcome_work,
        rho_final=rho_f,
    )


def free_energy(rho: DensityMatrix, h: Hamiltonian, temperature: float) -> float:
    """F = Tr[hρ] − T·S(ρ)."""
    return mean_energy(rho, h) - temperature * entropy_of_diagonal_state(rho)


def efficiency_via_free_energy(spec: EngineSpec) -> float:
    """η = ΔF/ΔE between the pre- and post-measurement states."""
    h = spec.hamiltonian
    rho_i = DensityMatrix.from_state(spec.initial_state)
    _, rho_f = measure(spec.initial_state, spec.measurement)
    delta_e = mean_energy(rho_f, h) - mean_energy(rho_i, h)
    if delta_e <= MIN_DELTA_E:
        raise NotAnEngineError(
            f"ΔE = {delta_e:.3g}: the measurement supplies no energy"
        )
    delta_f = free_energy(rho_f, h, spec.temperature) - free_energy(
        rho_i, h, spec.temperature
    )
    return delta_f / delta_e
