import logging
import math

import numpy as np
import pytest

from qme.collective import ghz_basis
from qme.errors import DimensionMismatchError, InvalidStateError, NotAnEngineError
from qme.engine import EngineSpec, efficiency_via_free_energy, free_energy, run_cycle
from qme.numerics import basis_vector
from qme.quantum import DensityMatrix, Hamiltonian, computational_measurement
from qme.qubit import (
    binary_entropy,
    energy_hamiltonian,
    local_delta_e,
    qubit_hamiltonian,
    qubit_measurement,
    qubit_spec,
    qubit_state,
)

LN2 = math.log(2.0)


def _random_spec(seed: int) -> EngineSpec:
    rng = np.random.default_rng(seed)
    q = rng.uniform(0.05, 0.95)
    a, b = rng.uniform(-1.0, 1.0, size=2)
    c = rng.uniform(0.1, 1.0)
    phase = rng.uniform(-math.pi / 3, math.pi / 3)
    off_diagonal = -c * complex(math.cos(phase), math.sin(phase))
    h = Hamiltonian.from_array([[a, off_diagonal], [off_diagonal.conjugate(), b]])
    return EngineSpec(qubit_state(q), h, qubit_measurement(), rng.uniform(0.0, 1.0))


@pytest.mark.parametrize("epsilon, temperature", [(1.0, 0.1), (2.0, 0.3), (0.5, 0.0)])
def test_ground_state_measured_in_conjugate_basis(epsilon: float, temperature: float) -> None:
    spec = EngineSpec(
        basis_vector(2, 0), energy_hamiltonian(epsilon), ghz_basis(1), temperature
    )

    report = run_cycle(spec)

    assert report.delta_e == pytest.approx(epsilon / 2)
    assert report.s_final == pytest.approx(LN2)
    assert report.eta == pytest.approx(1 - 2 * temperature * LN2 / epsilon)
    assert report.outcome_work == pytest.approx((epsilon / 2, epsilon / 2))


def test_measurement_in_energy_eigenbasis_is_not_an_engine() -> None:
    spec = EngineSpec(
        basis_vector(2, 0), energy_hamiltonian(1.0), computational_measurement(2), 0.1
    )

    report = run_cycle(spec)

    assert report.delta_e == pytest.approx(0.0, abs=1e-15)
    assert report.s_final == pytest.approx(0.0, abs=1e-15)
    assert report.w_net == pytest.approx(0.0, abs=1e-15)
    assert report.eta is None
    assert not report.energized
    assert not report.operating_as_engine
    with pytest.raises(NotAnEngineError):
        efficiency_via_free_energy(spec)


def test_cycle_without_energy_gain_logs_warning(caplog: pytest.LogCaptureFixture) -> None:
    spec = EngineSpec(
        basis_vector(2, 1), energy_hamiltonian(1.0), computational_measurement(2), 0.1
    )

    with caplog.at_level(logging.WARNING, logger="qme.engine"):
        report = run_cycle(spec)

    assert report.eta is None
    assert "not operating as an engine" in caplog.text


def test_balanced_qubit_with_generic_hamiltonian() -> None:
    h = Hamiltonian.from_array([[0.3, -0.4 + 0.2j], [-0.4 - 0.2j, 1.1]])
    spec = EngineSpec(qubit_state(0.5), h, qubit_measurement(), 0.1)

    report = run_cycle(spec)

    assert report.delta_e == pytest.approx(0.4)
    assert report.s_final == pytest.approx(LN2)
    assert report.w_net == pytest.approx(0.4 - 0.1 * LN2)


@pytest.mark.parametrize("q", [0.1, 0.25, 0.5, 0.8])
@pytest.mark.parametrize("theta", [0.2, math.pi / 4, 1.3])
def test_cycle_ledger_is_consistent(q: float, theta: float) -> None:
    report = run_cycle(qubit_spec(q, theta, 1.0, 0.1))

    assert report.w_ext == report.delta_e
    assert report.w_erasure == pytest.approx(0.1 * report.s_final)
    assert report.q_erasure == report.w_erasure
    assert abs(report.w_net - (report.delta_e - report.w_erasure)) < 1e-10
    assert report.s_final == pytest.approx(binary_entropy(q), abs=1e-12)
    assert report.delta_e == pytest.approx(
        math.sqrt(q * (1 - q)) * math.sin(2 * theta), abs=1e-12
    )
    averaged = float(np.dot(report.outcomes.probabilities, report.outcome_work))
    assert averaged == pytest.approx(report.delta_e, abs=1e-12)


def test_local_delta_e_matches_cycle() -> None:
    h1 = qubit_hamiltonian(1.3, 0.4)

    report = run_cycle(EngineSpec(qubit_state(0.3), h1, qubit_measurement(), 0.2))

    assert report.delta_e == pytest.approx(local_delta_e(0.3, h1), abs=1e-12)


@pytest.mark.parametrize("seed", range(100))
def test_free_energy_efficiency_matches_ledger(seed: int) -> None:
    spec = _random_spec(seed)

    report = run_cycle(spec)

    assert report.eta is not None
    assert efficiency_via_free_energy(spec) == pytest.approx(report.eta, abs=1e-10)
    assert report.eta <= 1.0


def test_efficiency_decreases_with_temperature() -> None:
    etas = []
    for temperature in (0.0, 0.05, 0.1, 0.2):
        report = run_cycle(qubit_spec(0.3, math.pi / 4, 1.0, temperature))
        assert report.eta is not None
        etas.append(report.eta)

    assert etas[0] == pytest.approx(1.0)
    assert etas == sorted(etas, reverse=True)


def test_free_energy_examples() -> None:
    h = energy_hamiltonian(1.0)

    assert free_energy(DensityMatrix.from_state(basis_vector(2, 1)), h, 0.3) == pytest.approx(1.0)
    assert free_energy(DensityMatrix.from_array(np.eye(2) / 2), h, 0.3) == pytest.approx(
        0.5 - 0.3 * LN2
    )


def test_engine_spec_validation() -> None:
    with pytest.raises(DimensionMismatchError, match="disagree"):
        EngineSpec(basis_vector(4, 0), energy_hamiltonian(1.0), qubit_measurement(), 0.1)
    with pytest.raises(InvalidStateError, match="Temperature"):
        qubit_spec(0.5, math.pi / 4, 1.0, -0.1)
