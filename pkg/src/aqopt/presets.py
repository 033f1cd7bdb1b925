"""Canonical three-qubit experiment preset.

The instance is the three-node graph with node weights (2, 2, 2) and
edge weights w12 = 2, w13 = 1, w23 = 3, whose payoff table is
[0 6 7 7 5 9 8 6] with the global maximum at s = 101 and a local
maximum at s = 110. It runs on a 1H-19F-13C spin system (qubits 1, 2, 3
mapped to H, F, C) with couplings J_HF = 50 Hz, J_HC = 224 Hz,
J_FC = -311 Hz in the on-resonance rotating frame.

FITTED_T2_S is the single global dephasing time produced by
``analysis.fit_dephasing_time`` on this preset (scripts/fit_t2.py
regenerates it); it places the optimal run length at M = 60.
"""

from __future__ import annotations

from .analysis import ExperimentConfig, NmrConfig, ScheduleConfig
from .hamiltonians import NmrSystem
from .maxcut import WeightedGraph
from .noise import RelaxationParams
from .pulses import SpinMapping

DRIVER_SCALE = 0.5887
PROBLEM_SCALE = 0.5
DT = 1.0
REFERENCE_M = 400
SIGN = -1
M_LIST = (15, 30, 60, 100, 200, 400)
FITTED_T2_S = 0.583

NODE_WEIGHTS = (2.0, 2.0, 2.0)
EDGES = ((0, 1, 2.0), (0, 2, 1.0), (1, 2, 3.0))
COUPLINGS_HZ = ((0, 1, 50.0), (0, 2, 224.0), (1, 2, -311.0))


def paper_graph() -> WeightedGraph:
    return WeightedGraph(n=3, node_weights=NODE_WEIGHTS, edges=EDGES)


def paper_nmr() -> NmrSystem:
    return NmrSystem(larmor_rad_s=(0.0, 0.0, 0.0), couplings_hz=COUPLINGS_HZ)


def paper_config() -> ExperimentConfig:
    return ExperimentConfig(
        graph=paper_graph(),
        schedule=ScheduleConfig(
            M_list=M_LIST,
            dt=DT,
            g_scale=DRIVER_SCALE,
            h_scale=PROBLEM_SCALE,
            reference_M=REFERENCE_M,
        ),
        modes=("ideal", "trotter", "noisy"),
        nmr=NmrConfig(system=paper_nmr(), mapping=SpinMapping((0, 1, 2)), sign=SIGN),
        noise=RelaxationParams(t2_s=(FITTED_T2_S,) * 3),
    )


def paper_config_dict() -> dict:
    """The preset as a plain config-file object (what ``preset paper`` emits)."""
    return {
        "graph": {
            "n": 3,
            "node_weights": list(NODE_WEIGHTS),
            "edges": [list(e) for e in EDGES],
        },
        "schedule": {
            "M_list": list(M_LIST),
            "dt": DT,
            "g_scale": DRIVER_SCALE,
            "h_scale": PROBLEM_SCALE,
            "reference_M": REFERENCE_M,
        },
        "nmr": {
            "larmor_hz": [0.0, 0.0, 0.0],
            "couplings_hz": [list(c) for c in COUPLINGS_HZ],
            "mapping": [0, 1, 2],
            "sign": SIGN,
        },
        "noise": {"t1_s": None, "t2_s": [FITTED_T2_S] * 3},
        "modes": ["ideal", "trotter", "noisy"],
    }
