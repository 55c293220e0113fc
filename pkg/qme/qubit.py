"""Single two-level engines parameterized by (q, θ, ε).

The qubit has energies diag(0, ε) in its eigenbasis {|g⟩, |e⟩}. It is
measured in {|0⟩, |1⟩} with |0⟩ = cos θ|g⟩ + sin θ|e⟩ and
|1⟩ = sin θ|g⟩ − cos θ|e⟩, and starts in √q|0⟩ + √p|1⟩. That phase choice
keeps Re⟨0|h|1⟩ <= 0, so ΔE_1 = √(qp)·ε·sin 2θ >= 0. Everything is written
in the measurement basis.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import entr

from .engine import EngineSpec
from .numerics import StateVector
from .quantum import Hamiltonian, ProjectiveMeasurement, computational_measurement


def qubit_state(q: float) -> StateVector:
    """√q|0⟩ + √p|1⟩ with p = 1 − q."""
    return StateVector([math.sqrt(q), math.sqrt(1.0 - q)])


def qubit_hamiltonian(epsilon: float, theta: float) -> Hamiltonian:
    s, c = math.sin(theta), math.cos(theta)
    return Hamiltonian.from_array(
        [
            [epsilon * s * s, -epsilon * s * c],
            [-epsilon * s * c, epsilon * c * c],
        ]
    )


def qubit_measurement() -> ProjectiveMeasurement:
    return computational_measurement(2)


def qubit_spec(q: float, theta: float, epsilon: float, temperature: float) -> EngineSpec:
    return EngineSpec(
        initial_state=qubit_state(q),
        hamiltonian=qubit_hamiltonian(epsilon, theta),
        measurement=qubit_measurement(),
        temperature=temperature,
    )


def binary_entropy(q: float) -> float:
    """S_1 = −q ln q − p ln p."""
    return float(np.sum(entr(np.array([q, 1.0 - q]))))


def local_delta_e(q: float, h1: Hamiltonian) -> float:
    """ΔE_1 = −2√(qp)·Re⟨0|h1|1⟩."""
    return -2.0 * math.sqrt(q * (1.0 - q)) * h1.element(0, 1).real


def ghz_local_delta_e(h1: Hamiltonian) -> float:
    """Energy gained by |g⟩ measured in {(|g⟩ ± |e⟩)/√2}: (⟨e|h|e⟩ − ⟨g|h|g⟩)/2."""
    return 0.5 * (h1.element(1, 1).real - h1.element(0, 0).real)


def energy_hamiltonian(epsilon: float) -> Hamiltonian:
    """diag(0, ε) in the {|g⟩, |e⟩} eigenbasis."""
    return Hamiltonian.from_array([[0.0, 0.0], [0.0, epsilon]])
