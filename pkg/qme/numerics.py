"""Dense complex linear algebra for state manipulation up to 2**12 dimensions.

Kronecker convention: in ``a ⊗ b`` the FIRST factor is the most significant
index block, so subsystem 0 is the leftmost qubit of a bitstring and
``|b_0 b_1 ... b_{N-1}⟩`` sits at index ``int("b_0 b_1 ... b_{N-1}", 2)``.
Every module relies on this for partial traces.

Operations return the kind they take, except ``mat_vec``: it returns raw
amplitudes, since projectors and Hamiltonians do not preserve the norm.
Wrap the result in ``StateVector`` when the operator is unitary.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import reduce
from typing import overload

import numpy as np
import numpy.typing as npt

from .constants import HERMITIAN_TOL, NORMALIZATION_TOL
from .errors import DimensionMismatchError, InvalidStateError

ComplexArray = npt.NDArray[np.complex128]


def _frozen(values: npt.ArrayLike, ndim: int, kind: str) -> ComplexArray:
    array = np.array(values, dtype=np.complex128)
    if array.ndim != ndim:
        raise DimensionMismatchError(
            f"{kind} requires a {ndim}-D array, got shape {array.shape}"
        )
    if not np.all(np.isfinite(array)):
        raise InvalidStateError(f"{kind} entries must be finite")
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """Immutable dense complex matrix (operators such as H, h_μ and ρ)."""

    data: ComplexArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "data", _frozen(self.data, 2, "ComplexMatrix"))

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def allclose(self, other: ComplexMatrix, atol: float = 1e-12) -> bool:
        return self.shape == other.shape and bool(
            np.allclose(self.data, other.data, rtol=0.0, atol=atol)
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    """Immutable normalized ket."""

    data: ComplexArray

    def __post_init__(self) -> None:
        data = _frozen(self.data, 1, "StateVector")
        norm = float(np.vdot(data, data).real)
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise InvalidStateError(
                f"StateVector must be normalized; got squared norm {norm!r}"
            )
        object.__setattr__(self, "data", data)

    @classmethod
    def normalized(cls, amplitudes: npt.ArrayLike) -> StateVector:
        array = np.asarray(amplitudes, dtype=np.complex128)
        norm = np.linalg.norm(array)
        if norm == 0.0:
            raise InvalidStateError("Cannot normalize the zero vector")
        return cls(array / norm)

    @property
    def dim(self) -> int:
        return int(self.data.shape[0])

    def allclose(self, other: StateVector, atol: float = 1e-12) -> bool:
        return self.dim == other.dim and bool(
            np.allclose(self.data, other.data, rtol=0.0, atol=atol)
        )


PureState = StateVector


@overload
def tensor_product(a: StateVector, b: StateVector) -> StateVector: ...
@overload
def tensor_product(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix: ...
def tensor_product(
    a: StateVector | ComplexMatrix, b: StateVector | ComplexMatrix
) -> StateVector | ComplexMatrix:
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.data, b.data))
    if isinstance(a, ComplexMatrix) and isinstance(b, ComplexMatrix):
        return ComplexMatrix(np.kron(a.data, b.data))
    raise TypeError(
        f"tensor_product operands must be the same kind, got "
        f"{type(a).__name__} and {type(b).__name__}"
    )


def kron_power(a: StateVector, n: int) -> StateVector:
    if n < 1:
        raise ValueError("kron_power requires n >= 1")
    return reduce(tensor_product, [a] * n)


def conj_transpose(m: ComplexMatrix) -> ComplexMatrix:
    return ComplexMatrix(m.data.conj().T)


def mat_mul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    if a.cols != b.rows:
        raise DimensionMismatchError(
            f"Cannot multiply matrices of shapes {a.shape} and {b.shape}"
        )
    return ComplexMatrix(a.data @ b.data)


def mat_vec(m: ComplexMatrix, v: StateVector) -> ComplexArray:
    """Return ``m|v⟩`` as raw amplitudes; wrap in StateVector when it is a state."""
    if m.cols != v.dim:
        raise DimensionMismatchError(
            f"Cannot apply matrix of shape {m.shape} to vector of shape ({v.dim},)"
        )
    return m.data @ v.data


def inner_product(x: StateVector, y: StateVector) -> complex:
    if x.dim != y.dim:
        raise DimensionMismatchError(
            f"Cannot contract vectors of shapes ({x.dim},) and ({y.dim},)"
        )
    return complex(np.vdot(x.data, y.data))


def basis_vector(dim: int, index: int) -> StateVector:
    if not 0 <= index < dim:
        raise DimensionMismatchError(f"Basis index {index} outside dimension {dim}")
    amplitudes = np.zeros(dim, dtype=np.complex128)
    amplitudes[index] = 1.0
    return StateVector(amplitudes)


def identity(dim: int) -> ComplexMatrix:
    return ComplexMatrix(np.eye(dim, dtype=np.complex128))


def outer(x: StateVector, y: StateVector) -> ComplexMatrix:
    return ComplexMatrix(np.outer(x.data, y.data.conj()))


def local_operator(op: ComplexMatrix, site: int, n_sites: int) -> ComplexMatrix:
    """Embed a single-site operator at ``site`` among ``n_sites`` identical sites."""
    if not 0 <= site < n_sites:
        raise DimensionMismatchError(f"Site {site} outside range of {n_sites} sites")
    eye = np.eye(op.rows, dtype=np.complex128)
    factors = [op.data if index == site else eye for index in range(n_sites)]
    return ComplexMatrix(reduce(np.kron, factors))


def gram_matrix(vectors: Sequence[StateVector]) -> ComplexMatrix:
    stacked = stack_columns(vectors)
    return ComplexMatrix(stacked.conj().T @ stacked)


def stack_columns(vectors: Iterable[StateVector]) -> ComplexArray:
    columns = [vector.data for vector in vectors]
    if not columns:
        raise DimensionMismatchError("At least one vector is required")
    dims = {column.shape[0] for column in columns}
    if len(dims) != 1:
        raise DimensionMismatchError(f"Vectors have mixed dimensions {sorted(dims)}")
    return np.stack(columns, axis=1)


def is_hermitian(m: ComplexMatrix, tol: float = HERMITIAN_TOL) -> bool:
    return m.rows == m.cols and bool(
        np.max(np.abs(m.data - m.data.conj().T), initial=0.0) <= tol
    )
