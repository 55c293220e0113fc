"""Quantum states, projective measurements, reduced states and entropies.

All entropies are in nats. Post-measurement states carry the measurement
that diagonalizes them, so their entropy never needs an eigensolver.
"""

from __future__ import annotations

import logging
from collections.abc import Hashable, Sequence
from dataclasses import InitVar, dataclass
from functools import cached_property

import numpy as np
import numpy.typing as npt
from scipy.special import entr

from .constants import (
    COMPLEMENT_LABEL,
    DIAGONAL_TOL,
    HERMITIAN_TOL,
    NEGATIVE_PROBABILITY_TOL,
    ORTHONORMAL_TOL,
    PROBABILITY_CLAMP,
)
from .errors import DimensionMismatchError, InvalidStateError, NotDiagonalError
from .numerics import (
    ComplexArray,
    ComplexMatrix,
    StateVector,
    is_hermitian,
    outer,
    stack_columns,
)

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


def _frozen_probabilities(values: npt.ArrayLike) -> FloatArray:
    array = np.array(values, dtype=np.float64)
    array[array < PROBABILITY_CLAMP] = 0.0
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Born-rule outcome probabilities; entries below 1e-14 are clamped to 0."""

    probabilities: FloatArray
    labels: Sequence[Hashable]

    def __post_init__(self) -> None:
        raw = np.asarray(self.probabilities, dtype=np.float64)
        if raw.ndim != 1 or raw.size == 0:
            raise InvalidStateError("Probabilities must be a non-empty 1-D array")
        if len(self.labels) != raw.size:
            raise DimensionMismatchError(
                f"{raw.size} probabilities but {len(self.labels)} labels"
            )
        if np.min(raw) < -NEGATIVE_PROBABILITY_TOL:
            raise InvalidStateError(f"Negative probability {np.min(raw)!r}")
        total = float(np.sum(raw))
        if abs(total - 1.0) > ORTHONORMAL_TOL:
            raise InvalidStateError(f"Probabilities sum to {total!r}, expected 1")
        object.__setattr__(self, "probabilities", _frozen_probabilities(raw))

    def __len__(self) -> int:
        return int(self.probabilities.size)

    def probability_of(self, label: Hashable) -> float:
        return float(self.probabilities[list(self.labels).index(label)])


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Orthonormal outcome vectors, optionally closed by a complement Q.

    Completeness: Σ_k |k⟩⟨k| + Q = I, so Q = I − BB† with B the matrix of
    outcome vectors. Q is applied through B and never stored. It is reported
    as one extra outcome labelled ``"complement"``.

    ``check=False`` skips the Gram-matrix test for vectors that are
    orthonormal by construction, such as the computational basis.
    """

    vectors: tuple[StateVector, ...]
    labels: tuple[Hashable, ...]
    has_complement: bool = False
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        if len(self.vectors) != len(self.labels):
            raise DimensionMismatchError(
                f"{len(self.vectors)} basis vectors but {len(self.labels)} labels"
            )
        basis = self.basis_matrix
        if basis.shape[1] > basis.shape[0]:
            raise DimensionMismatchError(
                f"{basis.shape[1]} outcome vectors exceed dimension {basis.shape[0]}"
            )
        if check:
            gram = basis.conj().T @ basis
            if np.max(np.abs(gram - np.eye(gram.shape[0]))) > ORTHONORMAL_TOL:
                raise InvalidStateError("Measurement vectors are not orthonormal")
        if not self.has_complement and basis.shape[1] < self.dim:
            raise InvalidStateError("Measurement is not complete")

    @classmethod
    def completed(
        cls, vectors: Sequence[StateVector], labels: Sequence[Hashable]
    ) -> ProjectiveMeasurement:
        """Build a measurement, adding Q = I − Σ|k⟩⟨k| when the vectors do not span."""
        spans = len(vectors) == (vectors[0].dim if vectors else 0)
        return cls(tuple(vectors), tuple(labels), has_complement=not spans)

    @cached_property
    def basis_matrix(self) -> ComplexArray:
        return stack_columns(self.vectors)

    @cached_property
    def complement(self) -> ComplexMatrix | None:
        """Dense Q, for inspection; measuring never materializes it."""
        if not self.has_complement:
            return None
        basis = self.basis_matrix
        return ComplexMatrix(np.eye(self.dim) - basis @ basis.conj().T)

    def project_out(self, amplitudes: ComplexArray) -> ComplexArray:
        """Q|v⟩ = |v⟩ − B(B†|v⟩)."""
        basis = self.basis_matrix
        return amplitudes - basis @ (basis.conj().T @ amplitudes)

    def complement_block(self, rho: ComplexArray) -> ComplexArray:
        """QρQ from the outcome vectors alone."""
        basis = self.basis_matrix
        left = rho - basis @ (basis.conj().T @ rho)
        return left - (left @ basis) @ basis.conj().T

    @property
    def dim(self) -> int:
        return self.vectors[0].dim

    @property
    def outcome_labels(self) -> tuple[Hashable, ...]:
        if not self.has_complement:
            return self.labels
        return (*self.labels, COMPLEMENT_LABEL)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Normalized Hermitian state, optionally tagged with its diagonal basis."""

    matrix: ComplexMatrix
    diagonal_basis: ProjectiveMeasurement | None = None

    def __post_init__(self) -> None:
        m = self.matrix
        if m.rows != m.cols:
            raise DimensionMismatchError(f"Density matrix must be square, got {m.shape}")
        if not is_hermitian(m, HERMITIAN_TOL):
            raise InvalidStateError("Density matrix is not Hermitian")
        trace = complex(np.trace(m.data))
        if abs(trace - 1.0) > HERMITIAN_TOL:
            raise InvalidStateError(f"Density matrix trace is {trace!r}, expected 1")
        if np.min(np.diagonal(m.data).real) < -NEGATIVE_PROBABILITY_TOL:
            raise InvalidStateError("Density matrix has a negative diagonal entry")
        if self.diagonal_basis is not None and self.diagonal_basis.dim != m.rows:
            raise DimensionMismatchError(
                f"Diagonal basis of dimension {self.diagonal_basis.dim} "
                f"tags a state of dimension {m.rows}"
            )

    @classmethod
    def from_state(cls, state: StateVector) -> DensityMatrix:
        return cls(outer(state, state), ProjectiveMeasurement.completed([state], ["psi"]))

    @classmethod
    def from_array(cls, values: npt.ArrayLike) -> DensityMatrix:
        return cls(ComplexMatrix(values))

    @property
    def dim(self) -> int:
        return self.matrix.rows


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Hermitian energy operator, in units where k_B = 1."""

    matrix: ComplexMatrix

    def __post_init__(self) -> None:
        if not is_hermitian(self.matrix, HERMITIAN_TOL):
            raise InvalidStateError("Hamiltonian is not Hermitian")

    @classmethod
    def from_array(cls, values: npt.ArrayLike) -> Hamiltonian:
        return cls(ComplexMatrix(values))

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def element(self, row: int, col: int) -> complex:
        return complex(self.matrix.data[row, col])


QuantumState = StateVector | DensityMatrix


def _check_dims(left: int, right: int, what: str) -> None:
    if left != right:
        raise DimensionMismatchError(f"{what}: dimension {left} does not match {right}")


def measure(
    state: QuantumState, m: ProjectiveMeasurement
) -> tuple[OutcomeDistribution, DensityMatrix]:
    """Non-selective projective measurement.

    Returns the outcome distribution and Σ_k p_k |k⟩⟨k| (+ QρQ when the
    complement carries weight), tagged diagonal in ``m``.
    """
    _check_dims(state.dim, m.dim, "measure")
    basis = m.basis_matrix
    weight = 0.0
    remainder = None
    if isinstance(state, StateVector):
        probabilities = np.abs(basis.conj().T @ state.data) ** 2
        if m.has_complement:
            projected = m.project_out(state.data)
            weight = float(np.vdot(projected, projected).real)
            if weight >= PROBABILITY_CLAMP:
                remainder = np.outer(projected, projected.conj())
    else:
        rho = state.matrix.data
        probabilities = np.einsum("ik,ik->k", basis.conj(), rho @ basis).real
        if m.has_complement:
            block = m.complement_block(rho)
            weight = float(np.trace(block).real)
            if weight >= PROBABILITY_CLAMP:
                remainder = block

    probabilities = np.where(probabilities < PROBABILITY_CLAMP, 0.0, probabilities)
    post = (basis * probabilities) @ basis.conj().T
    outcome_probabilities = list(probabilities)
    if remainder is not None:
        post = post + remainder
    if m.has_complement:
        outcome_probabilities.append(weight if remainder is not None else 0.0)

    distribution = OutcomeDistribution(
        np.array(outcome_probabilities), m.outcome_labels
    )
    return distribution, DensityMatrix(ComplexMatrix(post), m)


def reduced_state(
    rho: DensityMatrix, keep: int, local_dims: Sequence[int]
) -> DensityMatrix:
    """Partial trace over every subsystem except ``keep``."""
    dims = [int(d) for d in local_dims]
    if int(np.prod(dims)) != rho.dim:
        raise DimensionMismatchError(
            f"Local dimensions {dims} do not factorize dimension {rho.dim}"
        )
    if not 0 <= keep < len(dims):
        raise DimensionMismatchError(f"Subsystem {keep} outside {len(dims)} subsystems")
    before = int(np.prod(dims[:keep]))
    after = int(np.prod(dims[keep + 1 :]))
    kept = dims[keep]
    tensor = rho.matrix.data.reshape(before, kept, after, before, kept, after)
    return DensityMatrix(ComplexMatrix(np.einsum("aibajb->ij", tensor)))


def shannon_entropy(p: OutcomeDistribution) -> float:
    return _entropy_of_probabilities(p.probabilities)


def _entropy_of_probabilities(values: npt.ArrayLike) -> float:
    probabilities = np.asarray(values, dtype=np.float64)
    probabilities = np.where(probabilities < PROBABILITY_CLAMP, 0.0, probabilities)
    return float(np.sum(entr(probabilities)))


def entropy_of_diagonal_state(rho: DensityMatrix) -> float:
    """Shannon entropy of ρ's spectrum, read off its known diagonal basis.

    Raises NotDiagonalError when ρ keeps coherences in that basis.
    """
    tag = rho.diagonal_basis
    data = rho.matrix.data
    if tag is None:
        off_diagonal = data - np.diag(np.diagonal(data))
        if np.max(np.abs(off_diagonal), initial=0.0) > DIAGONAL_TOL:
            raise NotDiagonalError(
                "State carries no diagonal basis and is not diagonal in the "
                "computational basis; use von_neumann_entropy"
            )
        return _entropy_of_probabilities(np.diagonal(data).real)

    basis = tag.basis_matrix
    rows = basis.conj().T @ data
    block = rows @ basis
    spectrum = np.diagonal(block).real
    residual = float(np.max(np.abs(block - np.diag(np.diagonal(block))), initial=0.0))
    if tag.has_complement:
        # B†ρQ: coherence between the outcome span and the complement
        leak = rows - block @ basis.conj().T
        residual = max(residual, float(np.max(np.abs(leak), initial=0.0)))
    if residual > DIAGONAL_TOL:
        raise NotDiagonalError(
            f"State is not diagonal in its tagged basis "
            f"(off-diagonal residual {residual:.3g})"
        )

    entropy = _entropy_of_probabilities(spectrum)
    if tag.has_complement:
        weight = float(np.trace(data).real) - float(np.sum(spectrum))
        if weight >= PROBABILITY_CLAMP:
            logger.debug("Complement sector carries weight; diagonalizing it")
            entropy += _entropy_of_probabilities(
                np.linalg.eigvalsh(tag.complement_block(data))
            )
    return entropy


def von_neumann_entropy(rho: DensityMatrix) -> float:
    return _entropy_of_probabilities(np.linalg.eigvalsh(rho.matrix.data))


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    _check_dims(rho.dim, sigma.dim, "trace_distance")
    difference = rho.matrix.data - sigma.matrix.data
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(difference))))


def mean_energy(state: QuantumState, h: Hamiltonian) -> float:
    """Tr[hρ] (or ⟨ψ|h|ψ⟩); the imaginary residue must vanish."""
    _check_dims(state.dim, h.dim, "mean_energy")
    if isinstance(state, StateVector):
        value = complex(np.vdot(state.data, h.matrix.data @ state.data))
    else:
        value = complex(np.einsum("ij,ji->", h.matrix.data, state.matrix.data))
    if abs(value.imag) > HERMITIAN_TOL:
        raise InvalidStateError(f"Energy has imaginary residue {value.imag!r}")
    return value.real


def multipartite_mutual_information(
    rho: DensityMatrix, local_dims: Sequence[int]
) -> float:
    """I = Σ_μ S(ρ_μ) − S(ρ)."""
    marginal_entropy = sum(
        entropy_of_diagonal_state(reduced_state(rho, site, local_dims))
        for site in range(len(local_dims))
    )
    return marginal_entropy - entropy_of_diagonal_state(rho)


def sum_local_hamiltonian(h1: Hamiltonian, n_sites: int) -> Hamiltonian:
    """H = Σ_μ h_μ for ``n_sites`` identical subsystems.

    h_μ only couples indices that differ in digit μ, so each matrix element
    of h1 is scattered straight into H without forming Kronecker products.
    """
    if n_sites < 1:
        raise DimensionMismatchError(f"Need at least one site, got {n_sites}")
    local = h1.matrix.data
    d = h1.dim
    indices = np.arange(d**n_sites)
    total = np.zeros((indices.size,) * 2, dtype=np.complex128)
    for site in range(n_sites):
        stride = d ** (n_sites - 1 - site)
        digit = (indices // stride) % d
        for row, col in np.ndindex(d, d):
            if local[row, col] == 0:
                continue
            rows = indices[digit == row]
            total[rows, rows + (col - row) * stride] += local[row, col]
    return Hamiltonian(ComplexMatrix(total))


def computational_measurement(dim: int) -> ProjectiveMeasurement:
    eye = np.eye(dim, dtype=np.complex128)
    return ProjectiveMeasurement(
        tuple(StateVector(eye[index]) for index in range(dim)),
        tuple(range(dim)),
        check=False,
    )
