"""Dense complex linear algebra for small qubit registers.

Everything here works on explicit 2^n x 2^n matrices (n up to ~10 on a
laptop). Qubit 0 is the most significant bit of a computational-basis
index, so for n=3 the basis state |s1 s2 s3> sits at index
s = 4*s1 + 2*s2 + s3. All values are immutable after construction and
every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

HERMITIAN_ATOL = 1e-12
UNITARY_ATOL = 1e-10
TRACE_ATOL = 1e-10
POSITIVITY_ATOL = 1e-9

IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_PAULI = {"I": IDENTITY_2, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}

for _m in (IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.setflags(write=False)


def _freeze(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=np.complex128)
    out.setflags(write=False)
    return out


def _check_dim(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or dim != 1 << n:
        raise ValueError(f"dimension must be a power of two >= 2, got {dim}")
    return n


def as_matrix(op) -> np.ndarray:
    """Accept an Operator, DensityMatrix, or plain ndarray."""
    if isinstance(op, (Operator, DensityMatrix)):
        return op.matrix
    return np.asarray(op, dtype=np.complex128)


@dataclass(frozen=True)
class Operator:
    """Dense complex square matrix on n qubits (hbar = 1 throughout)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = _freeze(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {m.shape}")
        _check_dim(m.shape[0])
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def adjoint(self) -> "Operator":
        return Operator(self.matrix.conj().T)

    def is_hermitian(self, atol: float = HERMITIAN_ATOL) -> bool:
        return bool(np.abs(self.matrix - self.matrix.conj().T).max() <= atol)

    def is_unitary(self, atol: float = UNITARY_ATOL) -> bool:
        delta = self.matrix.conj().T @ self.matrix - np.eye(self.dim)
        return bool(np.abs(delta).max() <= atol)


@dataclass(frozen=True)
class PureState:
    """Normalized state vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = _freeze(self.amplitudes).reshape(-1)
        _check_dim(a.shape[0])
        norm2 = float(np.vdot(a, a).real)
        if abs(norm2 - 1.0) > TRACE_ATOL:
            raise ValueError(f"state not normalized: sum |a_i|^2 = {norm2}")
        object.__setattr__(self, "amplitudes", a)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def to_density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian matrix; a proper state also has unit trace and rho >= 0.

    ``proper=False`` marks traceless deviation forms, which skip the
    trace and positivity checks but must still be Hermitian.
    """

    matrix: np.ndarray
    proper: bool = True

    def __post_init__(self):
        m = _freeze(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        _check_dim(m.shape[0])
        if np.abs(m - m.conj().T).max() > HERMITIAN_ATOL:
            raise ValueError("density matrix is not Hermitian")
        if self.proper:
            tr = complex(np.trace(m))
            if abs(tr - 1.0) > TRACE_ATOL:
                raise ValueError(f"density matrix trace is {tr}, expected 1")
            lo = float(np.linalg.eigvalsh(m).min())
            if lo < -POSITIVITY_ATOL:
                raise ValueError(f"density matrix has negative eigenvalue {lo}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def populations(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()


def tensor(factors: Sequence) -> Operator:
    """Kronecker product of the factors, first factor most significant."""
    if len(factors) == 0:
        raise ValueError("tensor() needs at least one factor")
    out = np.array([[1.0 + 0j]])
    for f in factors:
        out = np.kron(out, as_matrix(f))
    return Operator(out)


def pauli_on(n: int, which: str, i: int) -> Operator:
    """Single-qubit Pauli embedded at qubit i of an n-qubit register."""
    if which not in ("X", "Y", "Z"):
        raise ValueError(f"which must be 'X', 'Y' or 'Z', got {which!r}")
    if not 0 <= i < n:
        raise ValueError(f"qubit index {i} out of range for n={n}")
    return tensor([_PAULI[which] if q == i else IDENTITY_2 for q in range(n)])


def identity(n: int) -> Operator:
    return Operator(np.eye(1 << n, dtype=np.complex128))


def hermitian_exp(hamiltonian, t: float) -> Operator:
    """exp(-i H t) for Hermitian H, via eigendecomposition (exact at these dims).

    A zero time returns the exact identity so that degenerate slices do not
    pick up spurious rounding.
    """
    h = as_matrix(hamiltonian)
    if np.abs(h - h.conj().T).max() > HERMITIAN_ATOL:
        raise ValueError("hermitian_exp requires a Hermitian matrix")
    if t == 0.0:
        return Operator(np.eye(h.shape[0], dtype=np.complex128))
    w, v = np.linalg.eigh(h)
    return Operator((v * np.exp(-1j * w * t)) @ v.conj().T)


def trace_distance(rho, sigma) -> float:
    """D(rho, sigma) = sum |eig(rho - sigma)| / 2 for Hermitian arguments."""
    a, b = as_matrix(rho), as_matrix(sigma)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    for m in (a, b):
        if np.abs(m - m.conj().T).max() > 1e-10:
            raise ValueError("trace_distance requires Hermitian arguments")
    return float(0.5 * np.abs(np.linalg.eigvalsh(a - b)).sum())


def deviation(rho) -> DensityMatrix:
    """Traceless part rho - (tr rho / dim) I, the quantity NMR observes."""
    m = as_matrix(rho)
    out = m - (np.trace(m) / m.shape[0]) * np.eye(m.shape[0])
    return DensityMatrix(out, proper=False)


def apply_unitary(state, u):
    """U|psi> for a PureState, U rho U^dag for a DensityMatrix."""
    um = as_matrix(u)
    delta = np.abs(um.conj().T @ um - np.eye(um.shape[0])).max()
    if delta > 1e-8:
        raise ValueError(f"matrix is not unitary (|U^dag U - I| = {delta:.2e})")
    if isinstance(state, PureState):
        return PureState(um @ state.amplitudes)
    if isinstance(state, DensityMatrix):
        return DensityMatrix(um @ state.matrix @ um.conj().T, proper=state.proper)
    raise TypeError(f"expected PureState or DensityMatrix, got {type(state)!r}")


def spectral_norm(a) -> float:
    return float(np.linalg.norm(as_matrix(a), 2))
