"""Compile Trotter slices into NMR refocusing pulse schedules.

Each slice becomes: a driver pulse rotating every qubit by theta_m about
x, a four-segment delay block, and a second identical driver pulse. The
delay block interleaves free evolution (segments alpha, beta, gamma,
delta) with 180-degree x pulses:

    alpha | pi on q2 | beta | pi on q1 | gamma | pi on q2 | delta | pi on q1

Each pi pulse flips the sign with which z terms accumulate on that spin,
so the net coupling phase for a pair is governed by a signed sum of the
segment lengths (the effective time; pairs in 0-based qubit order, the
classic 1-based names tau12/tau13/tau23 kept for the solver arguments):

    (q0,q1): alpha + beta - gamma - delta = tau12
    (q0,q2): alpha - beta - gamma + delta = tau13
    (q1,q2): alpha - beta + gamma - delta = tau23

Choosing the effective times tau_ij = sign * (m/M) dt h w_ij / (pi J_ij)
makes the fixed couplings J_ij realize the arbitrary edge weights w_ij
of one Trotter slice. Node weights ride along as a reference-frame shift
applied during segment alpha only: spin i evolves under the extra
generator dw_i * sz_i with dw_i = sign * (m/M) dt h w_i / (2 alpha),
which survives the block unchanged because every spin sees an even
number of pi pulses after alpha. Adding a common constant to all four
segments leaves every effective time unchanged, which is how
non-negative segment lengths are always available.

With sign = -1 (the default), the block realizes exactly the problem
phases of the engine's Trotter slice; sign = +1 realizes the phases of
the negated problem Hamiltonian. Compilation assumes each spin's frame
is on resonance during free evolution; residual Larmor offsets in the
spin system are not compensated and will show up in verification.

All pulses are modeled as instantaneous perfect rotations; finite pulse
widths enter only as an additive wall-clock cost.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .engine import Schedule, slice_unitary_trotter
from .hamiltonians import NmrSystem, build_nmr, _coerce
from .linalg import Operator, hermitian_exp, pauli_on, spectral_norm
from .maxcut import WeightedGraph

# (segment index after which the pulse fires, qubit it hits); q0 is never pulsed
REFOCUS_PULSES = ((0, 2), (1, 1), (2, 2), (3, 1))
QUBIT_PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class SpinMapping:
    """Assignment of qubit index -> spin index of the NMR system."""

    qubit_to_spin: tuple[int, ...]

    def __post_init__(self):
        spins = tuple(int(s) for s in self.qubit_to_spin)
        if sorted(spins) != list(range(len(spins))):
            raise ValueError(f"mapping {spins} is not a bijection onto 0..{len(spins) - 1}")
        object.__setattr__(self, "qubit_to_spin", spins)

    @property
    def n(self) -> int:
        return len(self.qubit_to_spin)

    def spin(self, qubit: int) -> int:
        return self.qubit_to_spin[qubit]


@dataclass(frozen=True)
class RefocusingDelays:
    """Non-negative segment lengths, in seconds."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0.0:
                raise ValueError(f"segment {name} must be finite and >= 0, got {v}")
            object.__setattr__(self, name, v)

    @property
    def total(self) -> float:
        return self.alpha + self.beta + self.gamma + self.delta

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def effective_times(self) -> tuple[float, float, float]:
        a, b, g, d = self.as_tuple()
        return (a + b - g - d, a - b - g + d, a - b + g - d)


def solve_delays(
    tau12_s: float, tau13_s: float, tau23_s: float, baseline: str = "beta-zero"
) -> RefocusingDelays:
    """Solve the three effective-time constraints for non-negative segments.

    The system is under-determined with null direction (1, 1, 1, 1), so a
    particular solution can always be shifted into the non-negative
    orthant without disturbing any effective time. ``beta-zero`` pins
    beta = 0 before shifting (matching published sequences); ``min-total``
    returns the solution minimizing alpha+beta+gamma+delta. Because the
    solution family is one-dimensional, both strategies land on the same
    segment lengths; they are kept separate to make the intent explicit.
    """
    if baseline not in ("beta-zero", "min-total"):
        raise ValueError(f"unknown baseline {baseline!r}")
    for name, tau in (("tau12", tau12_s), ("tau13", tau13_s), ("tau23", tau23_s)):
        if not math.isfinite(tau):
            raise ValueError(f"{name} must be finite, got {tau}")
    alpha = (tau13_s + tau23_s) / 2.0
    beta = 0.0
    gamma = (tau23_s - tau12_s) / 2.0
    delta = (tau13_s - tau12_s) / 2.0
    low = min(alpha, beta, gamma, delta)
    if baseline == "beta-zero":
        shift = -low if low < 0.0 else 0.0
    else:
        shift = -low
    return RefocusingDelays(alpha + shift, beta + shift, gamma + shift, delta + shift)


@dataclass(frozen=True)
class SliceSchedule:
    """One compiled slice: rotation angle, segment lengths, frame shifts.

    ``coupling_targets_s`` keeps the effective times the delays were
    solved for, in qubit-pair order (0,1), (0,2), (1,2); they scale
    exactly linearly with m/M.
    """

    m: int
    theta_rad: float
    delays: RefocusingDelays
    frame_shift_rad_s: tuple[float, float, float]
    wall_clock_s: float
    coupling_targets_s: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "theta_rad": self.theta_rad,
            "delays_s": {
                "alpha": self.delays.alpha,
                "beta": self.delays.beta,
                "gamma": self.delays.gamma,
                "delta": self.delays.delta,
            },
            "frame_shift_rad_s": list(self.frame_shift_rad_s),
            "wall_clock_s": self.wall_clock_s,
        }


@dataclass(frozen=True)
class PulseSchedule:
    """Compiled slices for a full run, with the spin system they target."""

    slices: tuple[SliceSchedule, ...]
    total_wall_clock_s: float
    sign: int
    nmr: NmrSystem
    mapping: SpinMapping

    def to_dict(self) -> dict:
        return {
            "sign": self.sign,
            "slices": [s.to_dict() for s in self.slices],
            "total_wall_clock_s": self.total_wall_clock_s,
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def _slice_targets(sched, graph, nmr, mapping, sign):
    """Full-scale (m = M) effective times and frame-shift phase targets."""
    taus_full = []
    for i, j in QUBIT_PAIRS:
        w = graph.edge_weight(i, j)
        if w == 0.0:
            taus_full.append(0.0)
            continue
        j_hz = nmr.coupling_hz(mapping.spin(i), mapping.spin(j))
        if j_hz == 0.0:
            raise ValueError(
                f"edge ({i},{j}) has weight {w} but the mapped spins are uncoupled"
            )
        taus_full.append(sign * sched.dt * sched.h_scale * w / (math.pi * j_hz))
    phases_full = [
        sign * sched.dt * sched.h_scale * graph.node_weights[i] / 2.0 for i in range(3)
    ]
    return taus_full, phases_full


def compile_slice(
    sched: Schedule,
    m: int,
    graph: WeightedGraph,
    nmr: NmrSystem,
    mapping: SpinMapping | None = None,
    sign: int = -1,
    baseline: str = "beta-zero",
    driver_pulse_s: float = 0.0,
    refocus_pulse_s: float = 0.0,
) -> SliceSchedule:
    """Compile slice m for the three-spin refocusing template."""
    if graph.n != 3 or nmr.n != 3:
        raise ValueError("the refocusing template is specific to 3 qubits / 3 spins")
    if sign not in (-1, 1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if mapping is None:
        mapping = SpinMapping((0, 1, 2))
    if mapping.n != 3:
        raise ValueError("mapping must cover exactly 3 qubits")
    f = sched.fraction(m)
    theta = sched.g_scale * (1.0 - f) * sched.dt
    taus_full, phases_full = _slice_targets(sched, graph, nmr, mapping, sign)
    # scale the m = M targets by m/M so linearity in the slice index is exact
    taus = [f * t for t in taus_full]
    phases = [f * p for p in phases_full]
    delays = solve_delays(*taus, baseline=baseline)
    shifts = []
    for i, phase in enumerate(phases):
        if phase == 0.0:
            shifts.append(0.0)
        elif delays.alpha == 0.0:
            raise ValueError(
                f"node weight on qubit {i} needs a frame shift but alpha = 0"
            )
        else:
            shifts.append(phase / delays.alpha)
    wall = delays.total + 2.0 * driver_pulse_s + 4.0 * refocus_pulse_s
    return SliceSchedule(
        m=m,
        theta_rad=theta,
        delays=delays,
        frame_shift_rad_s=(shifts[0], shifts[1], shifts[2]),
        wall_clock_s=wall,
        coupling_targets_s=(taus[0], taus[1], taus[2]),
    )


def compile_schedule(
    sched: Schedule,
    graph: WeightedGraph,
    nmr: NmrSystem,
    mapping: SpinMapping | None = None,
    sign: int = -1,
    baseline: str = "beta-zero",
    driver_pulse_s: float = 0.0,
    refocus_pulse_s: float = 0.0,
) -> PulseSchedule:
    """Compile all M+1 slices and account the total wall-clock time."""
    if mapping is None:
        mapping = SpinMapping((0, 1, 2))
    slices = tuple(
        compile_slice(
            sched,
            m,
            graph,
            nmr,
            mapping=mapping,
            sign=sign,
            baseline=baseline,
            driver_pulse_s=driver_pulse_s,
            refocus_pulse_s=refocus_pulse_s,
        )
        for m in range(sched.n_slices)
    )
    total = float(sum(s.wall_clock_s for s in slices))
    return PulseSchedule(
        slices=slices, total_wall_clock_s=total, sign=sign, nmr=nmr, mapping=mapping
    )


def _qubit_ordered_nmr(nmr: NmrSystem, mapping: SpinMapping) -> NmrSystem:
    """Re-index the spin system so entry k describes the spin of qubit k."""
    spin_to_qubit = {mapping.spin(q): q for q in range(mapping.n)}
    larmor = tuple(nmr.larmor_rad_s[mapping.spin(q)] for q in range(mapping.n))
    couplings = []
    for i, j, jij in nmr.couplings_hz:
        qi, qj = spin_to_qubit[i], spin_to_qubit[j]
        couplings.append((min(qi, qj), max(qi, qj), jij))
    return NmrSystem(larmor_rad_s=larmor, couplings_hz=tuple(couplings))


def simulate_slice(ps: PulseSchedule, index: int) -> Operator:
    """Ideal-operator simulation of one compiled slice.

    Driver pulses are theta rotations about x on every qubit, refocusing
    pulses are perfect 180-degree x rotations, and each delay segment is
    free evolution under the (qubit-ordered) spin Hamiltonian, plus the
    frame-shift generator sum_i dw_i sz_i during alpha.
    """
    s = ps.slices[index]
    n = ps.mapping.n
    h_free = build_nmr(_qubit_ordered_nmr(ps.nmr, ps.mapping)).matrix
    h_shift = np.zeros_like(h_free)
    for q in range(n):
        h_shift += s.frame_shift_rad_s[q] * pauli_on(n, "Z", q).matrix
    segments = s.delays.as_tuple()
    block = np.eye(1 << n, dtype=np.complex128)
    for k, seg_len in enumerate(segments):
        h_seg = h_free + h_shift if k == 0 else h_free
        block = hermitian_exp(h_seg, seg_len).matrix @ block
        for after, qubit in REFOCUS_PULSES:
            if after == k:
                block = hermitian_exp(pauli_on(n, "X", qubit), math.pi / 2).matrix @ block
    driver = np.zeros_like(h_free)
    for q in range(n):
        driver += pauli_on(n, "X", q).matrix
    rot = hermitian_exp(driver, s.theta_rad / 2.0).matrix
    return Operator(rot @ block @ rot)


def phase_aligned_distance(u, v) -> float:
    """Spectral-norm distance minimized over a global phase (trace-aligned)."""
    um, vm = np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)
    tr = np.trace(vm.conj().T @ um)
    phase = tr / abs(tr) if abs(tr) > 1e-14 else 1.0
    return spectral_norm(um / phase - vm)


def verify_schedule(ps: PulseSchedule, sched: Schedule, h_b, h_p) -> float:
    """Max over slices of the distance between the simulated pulse sequence
    and the engine's Trotter slice, modulo global phase.

    The compiled block realizes the problem phases of (-sign) * H_p, so
    the comparison target uses that generator; with the default sign = -1
    this is the plain Trotter slice for H_p itself.
    """
    if len(ps.slices) != sched.n_slices:
        raise ValueError(
            f"schedule has {sched.n_slices} slices, compiled object has {len(ps.slices)}"
        )
    b = _coerce(h_b)
    p = float(-ps.sign) * _coerce(h_p)
    worst = 0.0
    for m in range(sched.n_slices):
        target = slice_unitary_trotter(sched, m, b, p)
        sim = simulate_slice(ps, m)
        worst = max(worst, phase_aligned_distance(sim.matrix, target.matrix))
    return worst
