"""Parallel versus collective (entangling) measurements on N identical qubits.

Two evaluation paths:

- exact: builds |ψ_i⟩^{⊗N}, measures it and reads everything off the
  post-measurement state (N <= EXACT_PATH_CAP);
- analytic: outcome statistics in closed form (binomial for Dicke,
  (1/2, 1/2) for GHZ), valid for any N.

Both fill I = Σ_μ S_μ − S_total and check η_♯ = η_∥ + T·I/(N·ΔE_1).
"""

from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass
from itertools import combinations

import numpy as np
import numpy.typing as npt
from scipy.special import entr
from scipy.stats import binom

from .constants import DECOMPOSITION_TOL, EXACT_PATH_CAP, MIN_DELTA_E
from .engine import EngineSpec, efficiency, run_cycle
from .errors import (
    AnalyticPathUnavailableError,
    DimensionMismatchError,
    ExactPathCapError,
    InvalidStateError,
    NotDiagonalError,
)
from .numerics import StateVector, basis_vector, kron_power
from .qubit import (
    binary_entropy,
    ghz_local_delta_e,
    local_delta_e,
    qubit_measurement,
    qubit_state,
)
from .quantum import (
    DensityMatrix,
    FloatArray,
    Hamiltonian,
    OutcomeDistribution,
    ProjectiveMeasurement,
    computational_measurement,
    entropy_of_diagonal_state,
    measure,
    reduced_state,
    shannon_entropy,
    sum_local_hamiltonian,
    trace_distance,
    von_neumann_entropy,
)

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:  # Python 3.10 backport of enum.StrEnum's str()/format() behaviour
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

logger = logging.getLogger(__name__)


class StrategyKind(StrEnum):
    PARALLEL = "parallel"
    TWO_QUBIT = "two-qubit"
    DICKE = "dicke"
    GHZ = "ghz"
    CUSTOM = "custom"


class ComputationPath(StrEnum):
    EXACT = "exact_state"
    ANALYTIC = "analytic"


@dataclass(frozen=True, eq=False)
class CollectiveStrategy:
    """How N identical qubits are measured.

    ``q`` is the weight of |0⟩ in the local state √q|0⟩ + √p|1⟩; GHZ
    strategies start from |g⟩^{⊗N} and ignore it.
    """

    kind: StrategyKind
    n: int
    q: float = 0.5
    basis: ProjectiveMeasurement | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidStateError(f"Strategy needs N >= 1, got {self.n}")
        if not 0.0 < self.q < 1.0:
            raise InvalidStateError(f"q must lie in (0, 1), got {self.q!r}")
        if self.kind is StrategyKind.TWO_QUBIT and self.n != 2:
            raise InvalidStateError("The two-qubit entangling strategy needs N = 2")
        if (self.kind is StrategyKind.CUSTOM) != (self.basis is not None):
            raise InvalidStateError("A basis is given exactly for custom strategies")
        if self.basis is not None and self.basis.dim != 2**self.n:
            raise DimensionMismatchError(
                f"Custom basis dimension {self.basis.dim} does not match N = {self.n}"
            )

    @property
    def p(self) -> float:
        return 1.0 - self.q


@dataclass(frozen=True)
class SubsystemLedger:
    delta_e: float
    entropy: float
    work: float


@dataclass(frozen=True, eq=False)
class StrategyReport:
    n: int
    delta_e_total: float
    s_total: float
    w_net_total: float
    eta: float | None
    eta_parallel: float | None
    i_mutual: float
    per_subsystem: SubsystemLedger
    computation_path: ComputationPath
    decomposition_residual: float | None
    outcomes: OutcomeDistribution | None = None

    @property
    def work_per_subsystem(self) -> float:
        return self.w_net_total / self.n


@dataclass(frozen=True)
class LocalEquivalenceReport:
    deviations: tuple[float, ...]
    tolerance: float

    @property
    def max_deviation(self) -> float:
        return max(self.deviations)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def _check_exact_cap(n: int) -> None:
    if n > EXACT_PATH_CAP:
        raise ExactPathCapError(
            f"N = {n} exceeds the exact-path cap of {EXACT_PATH_CAP}; "
            "use the analytic path"
        )


def _bitstring_index(ones: tuple[int, ...], n: int) -> int:
    return sum(1 << (n - 1 - position) for position in ones)


def dicke_basis(n: int) -> ProjectiveMeasurement:
    """N+1 Dicke vectors |i_♯⟩ plus the projector onto the non-symmetric sector."""
    if n < 1:
        raise InvalidStateError(f"Dicke basis needs N >= 1, got {n}")
    _check_exact_cap(n)
    dim = 2**n
    vectors: list[StateVector] = []
    for weight in range(n + 1):
        amplitudes = np.zeros(dim, dtype=np.complex128)
        indices = [_bitstring_index(ones, n) for ones in combinations(range(n), weight)]
        amplitudes[indices] = 1.0 / math.sqrt(math.comb(n, weight))
        vectors.append(StateVector(amplitudes))
    return ProjectiveMeasurement.completed(vectors, list(range(n + 1)))


def ghz_basis(n: int) -> ProjectiveMeasurement:
    """(|g⟩^{⊗N} ± |e⟩^{⊗N})/√2 plus the complement projector C."""
    if n < 1:
        raise InvalidStateError(f"GHZ basis needs N >= 1, got {n}")
    _check_exact_cap(n)
    ground = basis_vector(2**n, 0).data
    excited = basis_vector(2**n, 2**n - 1).data
    plus = StateVector((ground + excited) / math.sqrt(2.0))
    minus = StateVector((ground - excited) / math.sqrt(2.0))
    return ProjectiveMeasurement.completed([plus, minus], ["ghz+", "ghz-"])


def two_qubit_basis() -> ProjectiveMeasurement:
    """{|00⟩, |11⟩, (|01⟩+|10⟩)/√2, (|01⟩−|10⟩)/√2}."""
    r = 1.0 / math.sqrt(2.0)
    vectors = [
        StateVector([1, 0, 0, 0]),
        StateVector([0, 0, 0, 1]),
        StateVector([0, r, r, 0]),
        StateVector([0, r, -r, 0]),
    ]
    return ProjectiveMeasurement(tuple(vectors), ("00", "11", "sym", "anti"))


def _ghz_local_state() -> StateVector:
    return basis_vector(2, 0)


def _ghz_local_measurement() -> ProjectiveMeasurement:
    return ghz_basis(1)


def _collective_measurement(strategy: CollectiveStrategy) -> ProjectiveMeasurement:
    match strategy.kind:
        case StrategyKind.PARALLEL:
            return computational_measurement(2**strategy.n)
        case StrategyKind.TWO_QUBIT:
            return two_qubit_basis()
        case StrategyKind.DICKE:
            return dicke_basis(strategy.n)
        case StrategyKind.GHZ:
            return ghz_basis(strategy.n)
        case StrategyKind.CUSTOM:
            assert strategy.basis is not None
            return strategy.basis


def _local_engine(
    strategy: CollectiveStrategy, h1: Hamiltonian, temperature: float
) -> EngineSpec:
    if strategy.kind is StrategyKind.GHZ:
        return EngineSpec(_ghz_local_state(), h1, _ghz_local_measurement(), temperature)
    return EngineSpec(qubit_state(strategy.q), h1, qubit_measurement(), temperature)


def _expected_marginal(strategy: CollectiveStrategy) -> DensityMatrix:
    if strategy.kind is StrategyKind.GHZ:
        return DensityMatrix.from_array(np.eye(2) / 2)
    return DensityMatrix.from_array(np.diag([strategy.q, strategy.p]))


def _marginal_entropy(rho: DensityMatrix) -> float:
    try:
        return entropy_of_diagonal_state(rho)
    except NotDiagonalError:
        return von_neumann_entropy(rho)


def binomial_distribution(n: int, p: float) -> OutcomeDistribution:
    """b(i) = C(N,i) q^{N−i} p^i over i = number of excitations, in log domain."""
    log_pmf = binom.logpmf(np.arange(n + 1), n, p)
    return OutcomeDistribution(np.exp(log_pmf), range(n + 1))


def binomial_entropy_exact(n: int, p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(np.sum(entr(binomial_distribution(n, p).probabilities)))


def binomial_entropy_asymptotic(n: int, p: float) -> float:
    """½·ln(2πe·N·p·q), the large-N form of the binomial entropy."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return 0.5 * math.log(2.0 * math.pi * math.e * n * p * (1.0 - p))


def dicke_energy(weight: npt.ArrayLike, n: int, h1: Hamiltonian) -> FloatArray:
    """⟨i_♯|Σ_μ h_μ|i_♯⟩ = (N−i)⟨0|h1|0⟩ + i⟨1|h1|1⟩."""
    weights = np.asarray(weight, dtype=np.float64)
    return (n - weights) * h1.element(0, 0).real + weights * h1.element(1, 1).real


def _decomposition_residual(
    report_eta: float | None,
    eta_parallel: float | None,
    correlation_term: float | None,
) -> float | None:
    if report_eta is None or eta_parallel is None or correlation_term is None:
        return None
    return report_eta - eta_parallel - correlation_term


@dataclass(frozen=True)
class _Totals:
    delta_e: float
    s_total: float
    s_marginals: float


def _assemble(
    strategy: CollectiveStrategy,
    temperature: float,
    local: SubsystemLedger,
    totals: _Totals,
) -> tuple[float | None, float | None, float, float | None]:
    n = strategy.n
    w_net = totals.delta_e - temperature * totals.s_total
    eta = efficiency(totals.delta_e, w_net)
    # the parallel engine is N copies of the local one, so η_∥ = η_1
    eta_parallel = efficiency(local.delta_e, local.work)
    i_mutual = totals.s_marginals - totals.s_total
    energy_scale = n * local.delta_e
    correlation = (
        temperature * i_mutual / energy_scale if energy_scale > MIN_DELTA_E else None
    )
    residual = _decomposition_residual(eta, eta_parallel, correlation)
    if eta is None:
        logger.warning(
            "%s strategy N=%d: ΔE = %.3g <= 0, efficiency undefined",
            strategy.kind,
            n,
            totals.delta_e,
        )
    elif residual is not None and abs(residual) > DECOMPOSITION_TOL:
        logger.warning(
            "%s strategy N=%d: decomposition residual %.3g exceeds %.0e",
            strategy.kind,
            n,
            residual,
            DECOMPOSITION_TOL,
        )
    return eta, eta_parallel, i_mutual, residual


def evaluate_exact(
    strategy: CollectiveStrategy, h1: Hamiltonian, temperature: float
) -> StrategyReport:
    """Full-state evaluation: build |ψ_i⟩^{⊗N}, measure, read off the ledger."""
    n = strategy.n
    _check_exact_cap(n)
    local_spec = _local_engine(strategy, h1, temperature)
    local_report = run_cycle(local_spec)
    local = SubsystemLedger(
        delta_e=local_report.delta_e,
        entropy=local_report.s_final,
        work=local_report.w_net,
    )

    spec = EngineSpec(
        initial_state=kron_power(local_spec.initial_state, n),
        hamiltonian=sum_local_hamiltonian(h1, n),
        measurement=_collective_measurement(strategy),
        temperature=temperature,
    )
    cycle = run_cycle(spec)
    local_dims = [2] * n
    s_marginals = sum(
        _marginal_entropy(reduced_state(cycle.rho_final, site, local_dims))
        for site in range(n)
    )
    totals = _Totals(cycle.delta_e, cycle.s_final, s_marginals)
    eta, eta_parallel, i_mutual, residual = _assemble(
        strategy, temperature, local, totals
    )
    logger.debug("Exact %s N=%d: S=%.6g I=%.6g", strategy.kind, n, cycle.s_final, i_mutual)
    return StrategyReport(
        n=n,
        delta_e_total=cycle.delta_e,
        s_total=cycle.s_final,
        w_net_total=cycle.w_net,
        eta=eta,
        eta_parallel=eta_parallel,
        i_mutual=i_mutual,
        per_subsystem=local,
        computation_path=ComputationPath.EXACT,
        decomposition_residual=residual,
        outcomes=cycle.outcomes,
    )


def evaluate_analytic(
    strategy: CollectiveStrategy, h1: Hamiltonian, temperature: float
) -> StrategyReport:
    """Closed-form outcome statistics; any N."""
    n = strategy.n
    outcomes: OutcomeDistribution | None
    match strategy.kind:
        case StrategyKind.GHZ:
            delta_e1 = ghz_local_delta_e(h1)
            s_1 = math.log(2.0)
            outcomes = OutcomeDistribution(np.array([0.5, 0.5]), ("ghz+", "ghz-"))
            s_total = s_1
            delta_e = n * delta_e1
        case StrategyKind.PARALLEL:
            delta_e1 = local_delta_e(strategy.q, h1)
            s_1 = binary_entropy(strategy.q)
            outcomes = None
            s_total = n * s_1
            delta_e = n * delta_e1
        case StrategyKind.TWO_QUBIT | StrategyKind.DICKE:
            delta_e1 = local_delta_e(strategy.q, h1)
            s_1 = binary_entropy(strategy.q)
            outcomes = binomial_distribution(n, strategy.p)
            s_total = shannon_entropy(outcomes)
            e_final = float(
                np.dot(outcomes.probabilities, dicke_energy(np.arange(n + 1), n, h1))
            )
            e_initial = n * (
                strategy.q * h1.element(0, 0).real
                + strategy.p * h1.element(1, 1).real
                + 2.0 * math.sqrt(strategy.q * strategy.p) * h1.element(0, 1).real
            )
            delta_e = e_final - e_initial
        case StrategyKind.CUSTOM:
            raise AnalyticPathUnavailableError(
                "Custom bases have no closed form; use the exact path"
            )

    local = SubsystemLedger(
        delta_e=delta_e1, entropy=s_1, work=delta_e1 - temperature * s_1
    )
    totals = _Totals(delta_e, s_total, n * s_1)
    eta, eta_parallel, i_mutual, residual = _assemble(
        strategy, temperature, local, totals
    )
    return StrategyReport(
        n=n,
        delta_e_total=delta_e,
        s_total=s_total,
        w_net_total=delta_e - temperature * s_total,
        eta=eta,
        eta_parallel=eta_parallel,
        i_mutual=i_mutual,
        per_subsystem=local,
        computation_path=ComputationPath.ANALYTIC,
        decomposition_residual=residual,
        outcomes=outcomes,
    )


def evaluate_strategy(
    strategy: CollectiveStrategy, h1: Hamiltonian, temperature: float
) -> StrategyReport:
    """Analytic path when a closed form exists, exact path otherwise."""
    if strategy.kind is StrategyKind.CUSTOM:
        return evaluate_exact(strategy, h1, temperature)
    return evaluate_analytic(strategy, h1, temperature)


def verify_local_equivalence(
    strategy: CollectiveStrategy, tol: float
) -> LocalEquivalenceReport:
    """Trace distance of every collective marginal from the parallel one."""
    n = strategy.n
    _check_exact_cap(n)
    if strategy.kind is StrategyKind.GHZ:
        local_state = _ghz_local_state()
    else:
        local_state = qubit_state(strategy.q)
    dims = [2] * n
    rho_f = _post_measurement_state(kron_power(local_state, n), strategy)
    expected = _expected_marginal(strategy)
    deviations = tuple(
        trace_distance(reduced_state(rho_f, site, dims), expected) for site in range(n)
    )
    return LocalEquivalenceReport(deviations=deviations, tolerance=tol)


def _post_measurement_state(
    state: StateVector, strategy: CollectiveStrategy
) -> DensityMatrix:
    _, rho_f = measure(state, _collective_measurement(strategy))
    return rho_f


def work_gain_two_qubit(q: float, temperature: float) -> float:
    """W_♯ − W_∥ = 2pq·T·ln 2 for the two-qubit entangling basis."""
    if not 0.0 < q < 1.0:
        raise InvalidStateError(f"q must lie in (0, 1), got {q!r}")
    return 2.0 * q * (1.0 - q) * temperature * math.log(2.0)


def parallel_envelope(
    delta_e1: float, epsilon: float, temperature: float
) -> tuple[float, float]:
    """Best single-qubit engine supplying ``delta_e1``: returns (q*, W_1).

    At fixed ΔE_1 the erasure cost is least for the most lopsided q, reached
    with the basis angle π/4 where √(q*p*) = ΔE_1/ε.
    """
    ratio = delta_e1 / epsilon
    if ratio < 0.0 or ratio > 0.5 + 1e-12:
        raise InvalidStateError(
            f"ΔE_1 = {delta_e1!r} lies outside the attainable range [0, ε/2]"
        )
    q_star = 0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - 4.0 * ratio * ratio)))
    return q_star, delta_e1 - temperature * binary_entropy(q_star)
