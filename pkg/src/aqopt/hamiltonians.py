"""Problem, driver, interpolated, and NMR Hamiltonians plus gap scans.

The problem Hamiltonian encodes the cut payoff on its diagonal,

    H_p = sum_i w_i (I - sz_i)/2 + sum_{i<j} w_ij (I - sz_i sz_j)/2,

so that with the identity terms included diag(H_p)[s] = P(s) for every
assignment s. The driver is the transverse field H_b = sum_i sx_i whose
top eigenstate is the uniform superposition. Because the search is for
the maximum payoff, gap scans default to the separation of the top two
eigenvalues along the interpolation (1-s) H_b + s H_p.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .linalg import Operator, as_matrix, pauli_on
from .maxcut import WeightedGraph

DIM_LIMIT_QUBITS = 12


def _z_pattern(n: int, i: int) -> np.ndarray:
    """Diagonal of sz_i as a +-1 vector of length 2^n."""
    bits = (np.arange(1 << n) >> (n - 1 - i)) & 1
    return (1 - 2 * bits).astype(np.float64)


@dataclass(frozen=True)
class ProblemHamiltonian:
    n: int
    diagonal: np.ndarray
    include_identity: bool

    def __post_init__(self):
        d = np.asarray(self.diagonal, dtype=np.float64).copy()
        d.setflags(write=False)
        object.__setattr__(self, "diagonal", d)

    def to_operator(self) -> Operator:
        return Operator(np.diag(self.diagonal.astype(np.complex128)))


@dataclass(frozen=True)
class DriverHamiltonian:
    n: int
    operator: Operator


def build_problem(graph: WeightedGraph, include_identity: bool = True) -> ProblemHamiltonian:
    """Diagonal cut Hamiltonian.

    Terms accumulate in the same order as the payoff function (nodes
    ascending, then canonical edges), so with identities on the diagonal
    reproduces the payoff table bit for bit. With identities off each
    term drops its w/2 identity part, shifting every entry down by the
    constant (sum_i w_i + sum_{i<j} w_ij)/2, which only contributes a
    global phase to any evolution.
    """
    if graph.n > DIM_LIMIT_QUBITS:
        raise ValueError(f"n={graph.n} exceeds dense limit of {DIM_LIMIT_QUBITS}")
    n = graph.n
    diag = np.zeros(1 << n, dtype=np.float64)
    for i in range(n):
        z = _z_pattern(n, i)
        term = (1.0 - z) / 2.0 if include_identity else -z / 2.0
        diag += graph.node_weights[i] * term
    for i, j, w in graph.edges:
        zz = _z_pattern(n, i) * _z_pattern(n, j)
        term = (1.0 - zz) / 2.0 if include_identity else -zz / 2.0
        diag += w * term
    return ProblemHamiltonian(n=n, diagonal=diag, include_identity=include_identity)


def build_driver(n: int) -> DriverHamiltonian:
    """Transverse field sum_i sx_i; eigenvalues n-2k with binomial multiplicity."""
    if n < 1:
        raise ValueError("need at least one qubit")
    total = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for i in range(n):
        total += pauli_on(n, "X", i).matrix
    return DriverHamiltonian(n=n, operator=Operator(total))


def _coerce(h) -> np.ndarray:
    if isinstance(h, ProblemHamiltonian):
        return np.diag(h.diagonal.astype(np.complex128))
    if isinstance(h, DriverHamiltonian):
        return h.operator.matrix
    return as_matrix(h)


def interpolate(h_b, h_p, s: float) -> Operator:
    """(1-s) H_b + s H_p for s in [0, 1]."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"interpolation parameter s={s} outside [0, 1]")
    b, p = _coerce(h_b), _coerce(h_p)
    if b.shape != p.shape:
        raise ValueError(f"dimension mismatch: {b.shape} vs {p.shape}")
    return Operator((1.0 - s) * b + s * p)


@dataclass(frozen=True)
class GapScanResult:
    """Gap profile along the interpolation, including refinement points."""

    s_values: np.ndarray
    gaps: np.ndarray
    g_min: float
    s_at_min: float

    def __post_init__(self):
        for name in ("s_values", "gaps"):
            v = np.asarray(getattr(self, name), dtype=np.float64).copy()
            v.setflags(write=False)
            object.__setattr__(self, name, v)


def gap_scan(
    h_b,
    h_p,
    grid_points: int = 1001,
    which: str = "top-two",
    refine_levels: int = 3,
    refine_factor: int = 10,
) -> GapScanResult:
    """Scan the two extremal eigenvalues of (1-s) H_b + s H_p over [0, 1].

    A uniform grid including both endpoints is swept first; the bracket
    around the coarse minimum is then re-gridded ``refine_levels`` times,
    shrinking the spacing by ``refine_factor`` each time. The reported
    g_min is the minimum over every point evaluated. A gap that is
    degenerate to machine precision is reported as-is, not an error.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    if which not in ("top-two", "bottom-two"):
        raise ValueError(f"which must be 'top-two' or 'bottom-two', got {which!r}")
    b, p = _coerce(h_b), _coerce(h_p)
    if b.shape != p.shape:
        raise ValueError(f"dimension mismatch: {b.shape} vs {p.shape}")

    def gap_at(s: float) -> float:
        w = np.linalg.eigvalsh((1.0 - s) * b + s * p)
        return float(w[-1] - w[-2]) if which == "top-two" else float(w[1] - w[0])

    evaluated: dict[float, float] = {}
    grid = np.linspace(0.0, 1.0, grid_points)
    for s in grid:
        evaluated[float(s)] = gap_at(float(s))

    spacing = 1.0 / (grid_points - 1)
    points = grid
    for _ in range(refine_levels):
        s_vals = np.array(sorted(evaluated))
        g_vals = np.array([evaluated[s] for s in s_vals])
        k = int(np.argmin(g_vals))
        lo = s_vals[max(0, k - 1)]
        hi = s_vals[min(len(s_vals) - 1, k + 1)]
        spacing /= refine_factor
        count = max(3, int(round((hi - lo) / spacing)) + 1)
        for s in np.linspace(lo, hi, count):
            key = float(s)
            if key not in evaluated:
                evaluated[key] = gap_at(key)

    s_all = np.array(sorted(evaluated))
    g_all = np.array([evaluated[s] for s in s_all])
    k = int(np.argmin(g_all))
    return GapScanResult(
        s_values=s_all, gaps=g_all, g_min=float(g_all[k]), s_at_min=float(s_all[k])
    )


@dataclass(frozen=True)
class NmrSystem:
    """Weakly coupled spin-1/2 system in its multiply rotating frame.

    ``larmor_rad_s`` holds residual per-spin offsets from the rotating
    frame in rad/s (zero when every channel is exactly on resonance);
    scalar couplings stay in Hz as conventionally quoted.
    """

    larmor_rad_s: tuple[float, ...]
    couplings_hz: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        larmor = tuple(float(x) for x in self.larmor_rad_s)
        n = len(larmor)
        if n < 1:
            raise ValueError("need at least one spin")
        seen = set()
        canon = []
        for i, j, jij in self.couplings_hz:
            i, j, jij = int(i), int(j), float(jij)
            if i == j:
                raise ValueError(f"self coupling on spin {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"coupling ({i},{j}) out of range for n={n}")
            if i > j:
                i, j = j, i
            if (i, j) in seen:
                raise ValueError(f"duplicate coupling ({i},{j})")
            seen.add((i, j))
            canon.append((i, j, jij))
        canon.sort()
        object.__setattr__(self, "larmor_rad_s", larmor)
        object.__setattr__(self, "couplings_hz", tuple(canon))

    @property
    def n(self) -> int:
        return len(self.larmor_rad_s)

    def coupling_hz(self, i: int, j: int) -> float:
        if i > j:
            i, j = j, i
        for a, b, jij in self.couplings_hz:
            if (a, b) == (i, j):
                return jij
        return 0.0

    @classmethod
    def from_dict(cls, data: dict) -> "NmrSystem":
        try:
            larmor_hz = data["larmor_hz"]
            couplings = data.get("couplings_hz", [])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed NMR system object: {exc}") from exc
        return cls(
            larmor_rad_s=tuple(2.0 * np.pi * float(f) for f in larmor_hz),
            couplings_hz=tuple((c[0], c[1], c[2]) for c in couplings),
        )

    @classmethod
    def from_json(cls, path) -> "NmrSystem":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def build_nmr(system: NmrSystem) -> Operator:
    """Rotating-frame Hamiltonian -sum_i w_i sz_i/2 + sum_{i<j} pi J_ij sz_i sz_j / 2.

    Diagonal, in angular-frequency units (rad/s).
    """
    n = system.n
    if n > DIM_LIMIT_QUBITS:
        raise ValueError(f"n={n} exceeds dense limit of {DIM_LIMIT_QUBITS}")
    diag = np.zeros(1 << n, dtype=np.float64)
    for i in range(n):
        diag += -0.5 * system.larmor_rad_s[i] * _z_pattern(n, i)
    for i, j, jij in system.couplings_hz:
        diag += 0.5 * np.pi * jij * _z_pattern(n, i) * _z_pattern(n, j)
    return Operator(np.diag(diag.astype(np.complex128)))
