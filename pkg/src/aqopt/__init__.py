"""Simulator and pulse-schedule compiler for discrete-time adiabatic
optimization of weighted MAXCUT instances on fixed-Hamiltonian NMR
hardware."""

from .linalg import (
    DensityMatrix,
    Operator,
    PureState,
    apply_unitary,
    deviation,
    hermitian_exp,
    pauli_on,
    tensor,
    trace_distance,
)
from .maxcut import (
    CutAssignment,
    GreedyResult,
    PayoffTable,
    WeightedGraph,
    brute_force_max,
    greedy_search,
    payoff,
    payoff_table,
)
from .hamiltonians import (
    DriverHamiltonian,
    GapScanResult,
    NmrSystem,
    ProblemHamiltonian,
    build_driver,
    build_nmr,
    build_problem,
    gap_scan,
    interpolate,
)
from .engine import (
    EvolutionResult,
    Schedule,
    prepare_initial,
    run,
    slice_unitary_ideal,
    slice_unitary_trotter,
    success_probability,
    trotter_slice_error,
)
from .pulses import (
    PulseSchedule,
    RefocusingDelays,
    SliceSchedule,
    SpinMapping,
    compile_schedule,
    compile_slice,
    solve_delays,
    verify_schedule,
)
from .noise import (
    KrausChannel,
    RelaxationParams,
    amplitude_damping,
    apply_relaxation,
    noisy_run,
    phase_damping,
    temporal_labeling,
)
from .analysis import (
    ExperimentConfig,
    SweepRow,
    T2Fit,
    compare_states,
    fit_dephasing_time,
    sweep,
)

__version__ = "0.1.0"
