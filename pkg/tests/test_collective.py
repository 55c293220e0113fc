import math
import time
from collections.abc import Callable

import numpy as np
import pytest

from qme.collective import (
    CollectiveStrategy,
    ComputationPath,
    StrategyKind,
    binomial_distribution,
    binomial_entropy_asymptotic,
    binomial_entropy_exact,
    dicke_basis,
    dicke_energy,
    evaluate_analytic,
    evaluate_exact,
    evaluate_strategy,
    ghz_basis,
    parallel_envelope,
    two_qubit_basis,
    verify_local_equivalence,
    work_gain_two_qubit,
)
from qme.constants import EXACT_PATH_CAP
from qme.engine import EngineSpec, run_cycle
from qme.errors import (
    AnalyticPathUnavailableError,
    DimensionMismatchError,
    ExactPathCapError,
    InvalidStateError,
)
from qme.numerics import StateVector, gram_matrix
from qme.quantum import (
    Hamiltonian,
    ProjectiveMeasurement,
    mean_energy,
    sum_local_hamiltonian,
)
from qme.qubit import (
    binary_entropy,
    energy_hamiltonian,
    ghz_local_delta_e,
    local_delta_e,
    qubit_hamiltonian,
    qubit_measurement,
    qubit_state,
)

LN2 = math.log(2.0)
Q_VALUES = [0.1, 0.3, 0.5, 0.7, 0.9]
GENERIC_H = Hamiltonian.from_array([[0.2, -0.3 + 0.1j], [-0.3 - 0.1j, 0.9]])
BALANCED_H = qubit_hamiltonian(1.0, math.pi / 4)


def test_dicke_basis_for_two_qubits() -> None:
    r = 1 / math.sqrt(2)
    measurement = dicke_basis(2)

    np.testing.assert_allclose(
        measurement.basis_matrix.T,
        [[1, 0, 0, 0], [0, r, r, 0], [0, 0, 0, 1]],
        atol=1e-15,
    )
    singlet = np.array([0, r, -r, 0])
    assert measurement.complement is not None
    np.testing.assert_allclose(
        measurement.complement.data, np.outer(singlet, singlet), atol=1e-15
    )


def test_dicke_basis_for_one_qubit_is_complete() -> None:
    measurement = dicke_basis(1)

    assert measurement.complement is None
    np.testing.assert_allclose(measurement.basis_matrix, np.eye(2))


def test_dicke_vector_amplitudes() -> None:
    weight_two = dicke_basis(3).vectors[2].data
    expected = np.zeros(8)
    expected[[0b011, 0b101, 0b110]] = 1 / math.sqrt(3)

    np.testing.assert_allclose(weight_two, expected, atol=1e-15)


@pytest.mark.parametrize("n", [2, 6, 10])
def test_dicke_vectors_are_orthonormal(n: int) -> None:
    measurement = dicke_basis(n)

    assert len(measurement.vectors) == n + 1
    np.testing.assert_allclose(gram_matrix(measurement.vectors).data, np.eye(n + 1), atol=1e-12)


def test_ghz_basis() -> None:
    r = 1 / math.sqrt(2)
    single = ghz_basis(1)
    np.testing.assert_allclose(single.basis_matrix.T, [[r, r], [r, -r]], atol=1e-15)
    assert single.complement is None

    pair = ghz_basis(2)
    np.testing.assert_allclose(
        pair.basis_matrix.T, [[r, 0, 0, r], [r, 0, 0, -r]], atol=1e-15
    )
    assert pair.complement is not None
    assert np.trace(pair.complement.data).real == pytest.approx(2.0)


def test_two_qubit_basis_labels() -> None:
    assert two_qubit_basis().outcome_labels == ("00", "11", "sym", "anti")


@pytest.mark.parametrize("build", [dicke_basis, ghz_basis])
def test_bases_above_exact_cap_are_rejected(
    build: Callable[[int], ProjectiveMeasurement],
) -> None:
    with pytest.raises(ExactPathCapError, match="cap"):
        build(13)


def test_evaluate_exact_above_cap_is_rejected() -> None:
    with pytest.raises(ExactPathCapError):
        evaluate_exact(CollectiveStrategy(StrategyKind.DICKE, 13, 0.5), BALANCED_H, 0.1)


def test_strategy_validation() -> None:
    with pytest.raises(InvalidStateError, match="N = 2"):
        CollectiveStrategy(StrategyKind.TWO_QUBIT, 3, 0.5)
    with pytest.raises(InvalidStateError, match="N >= 1"):
        CollectiveStrategy(StrategyKind.DICKE, 0, 0.5)
    with pytest.raises(InvalidStateError, match="q must"):
        CollectiveStrategy(StrategyKind.DICKE, 2, 1.0)
    with pytest.raises(InvalidStateError, match="custom"):
        CollectiveStrategy(StrategyKind.CUSTOM, 2, 0.5)
    with pytest.raises(DimensionMismatchError):
        CollectiveStrategy(StrategyKind.CUSTOM, 3, 0.5, basis=two_qubit_basis())


@pytest.mark.parametrize("q", Q_VALUES)
def test_two_qubit_entropy_is_reduced_by_correlations(q: float) -> None:
    p = 1 - q
    report = evaluate_exact(CollectiveStrategy(StrategyKind.TWO_QUBIT, 2, q), GENERIC_H, 0.1)

    assert report.s_total == pytest.approx(2 * binary_entropy(q) - 2 * p * q * LN2, abs=1e-12)
    assert report.i_mutual == pytest.approx(2 * p * q * LN2, abs=1e-12)
    assert report.outcomes is not None
    assert report.outcomes.probability_of("anti") < 1e-12


@pytest.mark.parametrize("q", Q_VALUES)
@pytest.mark.parametrize("temperature", [0.05, 0.1, 0.5])
def test_two_qubit_work_gain(q: float, temperature: float) -> None:
    collective = evaluate_exact(
        CollectiveStrategy(StrategyKind.TWO_QUBIT, 2, q), GENERIC_H, temperature
    )
    parallel = evaluate_exact(
        CollectiveStrategy(StrategyKind.PARALLEL, 2, q), GENERIC_H, temperature
    )

    gain = collective.w_net_total - parallel.w_net_total
    assert gain == pytest.approx(work_gain_two_qubit(q, temperature), abs=1e-12)
    assert gain == pytest.approx(temperature * collective.i_mutual, abs=1e-12)


def test_work_gain_two_qubit_examples() -> None:
    assert work_gain_two_qubit(0.5, 0.1) == pytest.approx(0.05 * LN2)
    assert work_gain_two_qubit(1e-9, 0.1) < 1e-9
    with pytest.raises(InvalidStateError):
        work_gain_two_qubit(0.0, 0.1)


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("q", [0.2, 0.5, 0.85])
def test_dicke_marginals_match_parallel(n: int, q: float) -> None:
    report = verify_local_equivalence(CollectiveStrategy(StrategyKind.DICKE, n, q), 1e-10)

    assert len(report.deviations) == n
    assert report.passed, report.max_deviation


@pytest.mark.parametrize("n", range(2, 9))
def test_ghz_marginals_match_parallel(n: int) -> None:
    report = verify_local_equivalence(CollectiveStrategy(StrategyKind.GHZ, n), 1e-10)

    assert report.passed, report.max_deviation


@pytest.mark.parametrize("n", range(2, 9))
def test_dicke_leaves_no_weight_outside_symmetric_sector(n: int) -> None:
    report = evaluate_exact(CollectiveStrategy(StrategyKind.DICKE, n, 0.3), GENERIC_H, 0.1)

    assert report.outcomes is not None
    assert report.outcomes.probability_of("complement") < 1e-12


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("q", Q_VALUES)
@pytest.mark.parametrize("temperature", [0.05, 0.1, 0.5])
@pytest.mark.parametrize("kind", [StrategyKind.DICKE, StrategyKind.GHZ])
def test_decomposition_identity_on_exact_path(
    n: int, q: float, temperature: float, kind: StrategyKind
) -> None:
    strategy = CollectiveStrategy(kind, n, q)
    if kind is StrategyKind.GHZ:
        h1 = energy_hamiltonian(1.0)
        delta_e1, s_1 = ghz_local_delta_e(h1), LN2
    else:
        h1 = GENERIC_H
        delta_e1, s_1 = local_delta_e(q, h1), binary_entropy(q)
    eta_1 = 1 - temperature * s_1 / delta_e1

    report = evaluate_exact(strategy, h1, temperature)

    assert report.eta is not None
    assert report.eta_parallel == pytest.approx(eta_1, abs=1e-12)
    correlation = temperature * report.i_mutual / (n * delta_e1)
    assert abs(report.eta - eta_1 - correlation) < 1e-9
    assert report.decomposition_residual is not None
    assert abs(report.decomposition_residual) < 1e-9


def test_bell_basis_breaks_decomposition_identity() -> None:
    r = 1 / math.sqrt(2)
    bell = ProjectiveMeasurement(
        (
            StateVector([r, 0, 0, r]),
            StateVector([r, 0, 0, -r]),
            StateVector([0, r, r, 0]),
            StateVector([0, r, -r, 0]),
        ),
        ("phi+", "phi-", "psi+", "psi-"),
    )
    strategy = CollectiveStrategy(StrategyKind.CUSTOM, 2, 0.3, basis=bell)
    single = run_cycle(EngineSpec(qubit_state(0.3), GENERIC_H, qubit_measurement(), 0.1))

    report = evaluate_exact(strategy, GENERIC_H, 0.1)

    assert report.eta_parallel == pytest.approx(single.eta, abs=1e-12)
    assert report.per_subsystem.delta_e == pytest.approx(single.delta_e, abs=1e-12)
    # Bell marginals are maximally mixed, unlike the parallel ones
    assert report.decomposition_residual is not None
    assert abs(report.decomposition_residual) > 1e-3


@pytest.mark.parametrize("kind", [StrategyKind.DICKE, StrategyKind.GHZ])
def test_exact_path_at_cap_runs_in_seconds(kind: StrategyKind) -> None:
    strategy = CollectiveStrategy(kind, EXACT_PATH_CAP, 0.3)
    start = time.perf_counter()

    report = evaluate_exact(strategy, GENERIC_H, 0.1)
    equivalence = verify_local_equivalence(strategy, 1e-10)

    assert time.perf_counter() - start < 10.0
    assert report.decomposition_residual is not None
    assert abs(report.decomposition_residual) < 1e-9
    assert equivalence.passed, equivalence.max_deviation


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("q", Q_VALUES)
@pytest.mark.parametrize(
    "kind", [StrategyKind.PARALLEL, StrategyKind.DICKE, StrategyKind.GHZ]
)
def test_exact_and_analytic_paths_agree(n: int, q: float, kind: StrategyKind) -> None:
    strategy = CollectiveStrategy(kind, n, q)

    exact = evaluate_exact(strategy, GENERIC_H, 0.1)
    analytic = evaluate_analytic(strategy, GENERIC_H, 0.1)

    assert exact.computation_path is ComputationPath.EXACT
    assert analytic.computation_path is ComputationPath.ANALYTIC
    assert exact.delta_e_total == pytest.approx(analytic.delta_e_total, abs=1e-9)
    assert exact.s_total == pytest.approx(analytic.s_total, abs=1e-9)
    assert exact.i_mutual == pytest.approx(analytic.i_mutual, abs=1e-9)
    assert exact.eta is not None and analytic.eta is not None
    assert exact.eta == pytest.approx(analytic.eta, abs=1e-9)


@pytest.mark.parametrize("q", Q_VALUES)
def test_two_qubit_paths_agree(q: float) -> None:
    strategy = CollectiveStrategy(StrategyKind.TWO_QUBIT, 2, q)

    exact = evaluate_exact(strategy, GENERIC_H, 0.1)
    analytic = evaluate_analytic(strategy, GENERIC_H, 0.1)

    assert exact.s_total == pytest.approx(analytic.s_total, abs=1e-12)
    assert exact.delta_e_total == pytest.approx(analytic.delta_e_total, abs=1e-12)


def test_custom_strategy_uses_exact_path() -> None:
    custom = CollectiveStrategy(StrategyKind.CUSTOM, 2, 0.3, basis=two_qubit_basis())
    reference = evaluate_exact(CollectiveStrategy(StrategyKind.TWO_QUBIT, 2, 0.3), GENERIC_H, 0.1)

    report = evaluate_strategy(custom, GENERIC_H, 0.1)

    assert report.computation_path is ComputationPath.EXACT
    assert report.s_total == pytest.approx(reference.s_total)
    assert report.eta == pytest.approx(reference.eta)
    with pytest.raises(AnalyticPathUnavailableError):
        evaluate_analytic(custom, GENERIC_H, 0.1)


def test_evaluate_strategy_prefers_analytic_path() -> None:
    report = evaluate_strategy(CollectiveStrategy(StrategyKind.DICKE, 1000, 0.3), GENERIC_H, 0.1)

    assert report.computation_path is ComputationPath.ANALYTIC
    assert report.n == 1000


def test_dicke_energy_matches_expectation_values() -> None:
    n = 4
    h = sum_local_hamiltonian(GENERIC_H, n)
    expected = [mean_energy(vector, h) for vector in dicke_basis(n).vectors]

    np.testing.assert_allclose(dicke_energy(np.arange(n + 1), n, GENERIC_H), expected, atol=1e-12)


def test_binomial_distribution_is_normalized_with_excitation_labels() -> None:
    distribution = binomial_distribution(5, 0.3)

    assert tuple(distribution.labels) == (0, 1, 2, 3, 4, 5)
    assert float(np.sum(distribution.probabilities)) == pytest.approx(1.0)
    assert distribution.probability_of(5) == pytest.approx(0.3**5)


@pytest.mark.parametrize("p", Q_VALUES)
def test_binomial_entropy_small_cases(p: float) -> None:
    assert binomial_entropy_exact(1, p) == pytest.approx(binary_entropy(p))
    assert binomial_entropy_exact(4, 0.0) == 0.0
    assert binomial_entropy_exact(4, 1.0) == 0.0


def test_binomial_entropy_known_values() -> None:
    assert binomial_entropy_exact(2, 0.5) == pytest.approx(1.5 * LN2)
    assert binomial_entropy_asymptotic(1, 0.5) == pytest.approx(0.7258, abs=1e-4)
    assert binomial_entropy_exact(1000, 0.5) == pytest.approx(
        binomial_entropy_asymptotic(1000, 0.5), abs=1e-3
    )


def test_binomial_entropy_approaches_asymptotic_form() -> None:
    scaled_gaps = []
    for n in (64, 128, 256, 512, 1024, 2048, 4096):
        gap = abs(binomial_entropy_exact(n, 0.5) - 0.5 * math.log(math.pi * math.e * n / 2))
        assert gap < 2 / n
        scaled_gaps.append(n * gap)

    assert scaled_gaps[-1] <= scaled_gaps[0] + 0.05


def test_binomial_entropy_evaluates_for_large_n() -> None:
    entropy = binomial_entropy_exact(10**6, 0.3)

    assert math.isfinite(entropy)
    assert entropy == pytest.approx(binomial_entropy_asymptotic(10**6, 0.3), abs=1e-5)


def test_dicke_efficiency_approaches_one() -> None:
    def eta(n: int) -> float:
        report = evaluate_analytic(CollectiveStrategy(StrategyKind.DICKE, n, 0.5), BALANCED_H, 0.1)
        assert report.eta is not None
        return report.eta

    delta_e1 = 0.5
    theory = 0.1 * binomial_entropy_asymptotic(10**4, 0.5) / (10**4 * delta_e1)
    assert (1 - eta(10**4)) == pytest.approx(theory, rel=0.01)

    eta_large = eta(10**5)
    assert eta_large > 0.9999 * (1 - 0.1 * binomial_entropy_asymptotic(10**5, 0.5) / (10**5 * delta_e1))
    assert 1 - eta_large < 1e-3


@pytest.mark.parametrize("n", [10**3, 10**4, 10**5])
@pytest.mark.parametrize("q", [0.3, 0.5])
def test_dicke_scaling_residual_is_small(n: int, q: float) -> None:
    report = evaluate_analytic(CollectiveStrategy(StrategyKind.DICKE, n, q), BALANCED_H, 0.1)
    assert report.eta is not None

    delta_e1 = report.per_subsystem.delta_e
    residual = n * (1 - report.eta) * delta_e1 / 0.1 - binomial_entropy_asymptotic(n, 1 - q)

    assert abs(residual) < 0.01


def test_dicke_efficiency_is_monotone_in_n() -> None:
    etas = []
    for n in range(1, 13):
        report = evaluate_analytic(CollectiveStrategy(StrategyKind.DICKE, n, 0.3), BALANCED_H, 0.1)
        assert report.eta is not None and report.eta_parallel is not None
        if n >= 2:
            assert report.eta > report.eta_parallel
        etas.append(report.eta)

    assert all(later >= earlier - 1e-12 for earlier, later in zip(etas, etas[1:]))


@pytest.mark.parametrize("n", [1, 10, 100, 10**6])
@pytest.mark.parametrize("epsilon, temperature", [(1.0, 0.1), (2.5, 0.4)])
def test_ghz_efficiency_formula(n: int, epsilon: float, temperature: float) -> None:
    report = evaluate_analytic(
        CollectiveStrategy(StrategyKind.GHZ, n), energy_hamiltonian(epsilon), temperature
    )

    assert report.s_total == pytest.approx(LN2)
    assert report.delta_e_total == pytest.approx(n * epsilon / 2)
    assert report.eta is not None
    assert abs(report.eta - (1 - 2 * temperature * LN2 / (n * epsilon))) < 1e-12


@pytest.mark.parametrize("n", range(1, 11))
def test_ghz_exact_path_matches_formula(n: int) -> None:
    report = evaluate_exact(CollectiveStrategy(StrategyKind.GHZ, n), energy_hamiltonian(1.0), 0.1)

    assert report.s_total == pytest.approx(LN2, abs=1e-12)
    assert report.eta is not None
    assert abs(report.eta - (1 - 0.2 * LN2 / n)) < 1e-12


@pytest.mark.parametrize("n", range(1, 30))
def test_ghz_entropy_never_exceeds_balanced_dicke_entropy(n: int) -> None:
    dicke = binomial_entropy_exact(n, 0.5)

    if n == 1:
        assert dicke == pytest.approx(LN2)
    else:
        assert LN2 < dicke


@pytest.mark.parametrize("delta_e1", [0.05, 0.2, 0.37, 0.5])
def test_parallel_envelope(delta_e1: float) -> None:
    q_star, w1 = parallel_envelope(delta_e1, 1.0, 0.1)

    assert q_star >= 0.5
    assert q_star * (1 - q_star) == pytest.approx(delta_e1**2, abs=1e-12)
    assert w1 == pytest.approx(delta_e1 - 0.1 * binary_entropy(q_star))


def test_parallel_envelope_bounds_region() -> None:
    for q in np.linspace(0.05, 0.95, 19):
        for theta in np.linspace(0.0, math.pi / 2, 21):
            delta_e1 = math.sqrt(q * (1 - q)) * math.sin(2 * theta)
            _, best = parallel_envelope(delta_e1, 1.0, 0.1)
            assert delta_e1 - 0.1 * binary_entropy(q) <= best + 1e-12

    assert parallel_envelope(0.5, 1.0, 0.1)[0] == pytest.approx(0.5)
    with pytest.raises(InvalidStateError):
        parallel_envelope(0.6, 1.0, 0.1)
