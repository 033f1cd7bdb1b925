"""Independent per-spin relaxation channels and temporal-labeling prep.

Decoherence is modeled as a discrete channel applied after each slice,
with the slice's compiled wall-clock time as the exposure. Each spin
relaxes independently: phase damping multiplies its off-diagonals by
exp(-tau/T2), and optional amplitude damping decays its excited
population by exp(-tau/T1). Relaxation during the (idealized,
zero-width) pulses is ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .engine import EvolutionResult, Schedule, prepare_initial, slice_unitary_trotter, success_probability
from .hamiltonians import _coerce
from .linalg import IDENTITY_2, SIGMA_Z, DensityMatrix, apply_unitary
from .pulses import PulseSchedule

KRAUS_ATOL = 1e-10


@dataclass(frozen=True)
class KrausChannel:
    """Single-qubit channel as a list of 2x2 Kraus operators."""

    ops: tuple[np.ndarray, ...]

    def __post_init__(self):
        frozen = []
        total = np.zeros((2, 2), dtype=np.complex128)
        for op in self.ops:
            k = np.array(op, dtype=np.complex128)
            if k.shape != (2, 2):
                raise ValueError(f"Kraus operator must be 2x2, got {k.shape}")
            k.setflags(write=False)
            frozen.append(k)
            total += k.conj().T @ k
        if np.abs(total - np.eye(2)).max() > KRAUS_ATOL:
            raise ValueError("channel is not trace preserving")
        object.__setattr__(self, "ops", tuple(frozen))


def identity_channel() -> KrausChannel:
    return KrausChannel((IDENTITY_2.copy(),))


def phase_damping(t2_s: float, tau_s: float) -> KrausChannel:
    """Off-diagonals shrink by exp(-tau/T2); populations are untouched."""
    if t2_s <= 0:
        raise ValueError(f"T2 must be positive, got {t2_s}")
    if tau_s < 0:
        raise ValueError(f"tau must be >= 0, got {tau_s}")
    f = math.exp(-tau_s / t2_s)
    k0 = math.sqrt((1.0 + f) / 2.0) * IDENTITY_2
    k1 = math.sqrt((1.0 - f) / 2.0) * SIGMA_Z
    return KrausChannel((k0, k1))


def amplitude_damping(t1_s: float, tau_s: float) -> KrausChannel:
    """Decay toward |0> with probability 1 - exp(-tau/T1)."""
    if t1_s <= 0:
        raise ValueError(f"T1 must be positive, got {t1_s}")
    if tau_s < 0:
        raise ValueError(f"tau must be >= 0, got {tau_s}")
    p = 1.0 - math.exp(-tau_s / t1_s)
    k0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=np.complex128)
    k1 = np.array([[0.0, math.sqrt(p)], [0.0, 0.0]], dtype=np.complex128)
    return KrausChannel((k0, k1))


def choi_matrix(channel: KrausChannel) -> np.ndarray:
    """Choi matrix sum_k (K ⊗ I)|Phi><Phi|(K ⊗ I)^dag; PSD iff the channel is CP."""
    phi = np.zeros(4, dtype=np.complex128)
    phi[0] = phi[3] = 1.0 / math.sqrt(2.0)
    proj = np.outer(phi, phi.conj())
    out = np.zeros((4, 4), dtype=np.complex128)
    for k in channel.ops:
        big = np.kron(k, np.eye(2))
        out += big @ proj @ big.conj().T
    return out


@dataclass(frozen=True)
class RelaxationParams:
    """Per-spin T1/T2 in seconds; None disables that channel kind."""

    t1_s: tuple[float, ...] | None = None
    t2_s: tuple[float, ...] | None = None

    def __post_init__(self):
        t1 = tuple(float(x) for x in self.t1_s) if self.t1_s is not None else None
        t2 = tuple(float(x) for x in self.t2_s) if self.t2_s is not None else None
        for name, values in (("t1_s", t1), ("t2_s", t2)):
            if values is not None and any(v <= 0 or not math.isfinite(v) for v in values):
                raise ValueError(f"{name} entries must be positive and finite")
        if t1 is not None and t2 is not None:
            if len(t1) != len(t2):
                raise ValueError("t1_s and t2_s must cover the same spins")
            for i, (a, b) in enumerate(zip(t1, t2)):
                if b > 2.0 * a + 1e-15:
                    raise ValueError(f"spin {i}: T2={b} exceeds physical limit 2*T1={2 * a}")
        object.__setattr__(self, "t1_s", t1)
        object.__setattr__(self, "t2_s", t2)

    @property
    def enabled(self) -> bool:
        return self.t1_s is not None or self.t2_s is not None

    @property
    def n(self) -> int:
        if self.t1_s is not None:
            return len(self.t1_s)
        if self.t2_s is not None:
            return len(self.t2_s)
        return 0


def apply_channel(rho: np.ndarray, channel: KrausChannel, spin: int, n: int) -> np.ndarray:
    """Apply a single-qubit channel to one tensor factor of an n-spin state."""
    out = np.zeros_like(rho)
    for k in channel.ops:
        ops = [k if q == spin else np.eye(2) for q in range(n)]
        big = ops[0]
        for o in ops[1:]:
            big = np.kron(big, o)
        out += big @ rho @ big.conj().T
    return out


def apply_relaxation(rho: DensityMatrix, params: RelaxationParams, tau_s: float) -> DensityMatrix:
    """Independent relaxation of every spin for an exposure of tau seconds.

    Per-spin channels act on disjoint tensor factors, so the order of
    application across spins is immaterial.
    """
    if tau_s < 0:
        raise ValueError(f"tau must be >= 0, got {tau_s}")
    if not params.enabled or tau_s == 0.0:
        return rho
    n = params.n
    if rho.dim != (1 << n):
        raise ValueError(f"state dim {rho.dim} does not match {n} relaxing spins")
    out = rho.matrix.copy()
    for spin in range(n):
        if params.t1_s is not None:
            out = apply_channel(out, amplitude_damping(params.t1_s[spin], tau_s), spin, n)
        if params.t2_s is not None:
            out = apply_channel(out, phase_damping(params.t2_s[spin], tau_s), spin, n)
    return DensityMatrix(out)


def noisy_run(
    sched: Schedule,
    compiled: PulseSchedule,
    h_b,
    h_p,
    params: RelaxationParams | None,
    record: bool = False,
    target=None,
) -> EvolutionResult:
    """Trotter slices alternating with relaxation over each slice's wall clock."""
    if len(compiled.slices) != sched.n_slices:
        raise ValueError(
            f"compiled schedule has {len(compiled.slices)} slices, expected {sched.n_slices}"
        )
    b, p = _coerce(h_b), _coerce(h_p)
    n = b.shape[0].bit_length() - 1
    state = prepare_initial(n).to_density()
    snapshots = [] if record else None
    trace = [] if record and target is not None else None
    for m in range(sched.n_slices):
        u = slice_unitary_trotter(sched, m, b, p)
        state = apply_unitary(state, u)
        if params is not None and params.enabled:
            state = apply_relaxation(state, params, compiled.slices[m].wall_clock_s)
        if snapshots is not None:
            snapshots.append(state)
        if trace is not None:
            trace.append(success_probability(state, target))
    return EvolutionResult(
        final_state=state,
        snapshots=tuple(snapshots) if snapshots is not None else None,
        success_trace=tuple(trace) if trace is not None else None,
    )


DIAGONAL_ATOL = 1e-12


def _diagonal_or_raise(rho: DensityMatrix) -> np.ndarray:
    off = rho.matrix - np.diag(rho.matrix.diagonal())
    if np.abs(off).max() > DIAGONAL_ATOL:
        raise ValueError("temporal labeling requires diagonal (population-only) states")
    return rho.matrix.diagonal().real.copy()


def label_permutation(dim: int, shift: int) -> np.ndarray:
    """Population relabeling: cycle the non-zero states |1>..|dim-1> by ``shift``."""
    perm = np.arange(dim)
    for s in range(1, dim):
        perm[s] = ((s - 1 + shift) % (dim - 1)) + 1
    return perm


def label_experiments(thermal: DensityMatrix, shifts: Sequence[int] = (0, 1, 2)) -> list[DensityMatrix]:
    """Permuted-population copies of a thermal state (ideal labeling circuits)."""
    pops = _diagonal_or_raise(thermal)
    dim = thermal.dim
    out = []
    for shift in shifts:
        perm = label_permutation(dim, shift)
        moved = np.zeros_like(pops)
        moved[perm] = pops
        out.append(DensityMatrix(np.diag(moved.astype(np.complex128))))
    return out


def temporal_labeling(experiments: Sequence[DensityMatrix]) -> DensityMatrix:
    """Average of the labeling experiments.

    With cyclic relabelings of the non-zero subspace the average has a
    flat non-zero subspace (an effective pure state a|0..0><0..0| + b I)
    exactly when the input populations are already uniform over each
    cyclic orbit; three experiments flatten a generic thermal diagonal
    only approximately. Summing over all dim-1 shifts flattens any
    diagonal input exactly.
    """
    if len(experiments) == 0:
        raise ValueError("need at least one experiment")
    dim = experiments[0].dim
    total = np.zeros(dim, dtype=np.float64)
    for rho in experiments:
        if rho.dim != dim:
            raise ValueError("all experiments must share one dimension")
        total += _diagonal_or_raise(rho)
    avg = total / len(experiments)
    return DensityMatrix(np.diag(avg.astype(np.complex128)))
