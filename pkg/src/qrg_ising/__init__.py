"""Block renormalization group for the transverse-field Ising chain.

The package follows one pipeline: treat two-site blocks exactly (`block`),
measure the entanglement of the kept block state (`concurrence`), iterate
the coupling map to larger effective sizes (`flow`), extract finite-size
scaling exponents and the data collapse (`scaling`), and cross-check the
critical point against dense diagonalization and free fermions (`chain`).
`cli` exposes each stage as a subcommand emitting plot-ready files.
"""

from .block import (
    Coupling,
    CriticalExponents,
    FixedPoint,
    GroundDoublet,
    block_hamiltonian,
    critical_exponents,
    diagonalize_symmetric,
    fixed_points,
    ground_doublet,
    pauli,
    rg_map_closed,
    rg_map_numeric,
)
from .chain import (
    ChainSpec,
    ChainState,
    apply_hamiltonian,
    dense_hamiltonian,
    ground_state,
    jw_dispersion,
    jw_gap,
    jw_ground_energy,
    nearest_neighbor_concurrence,
)
from .concurrence import (
    SPIN_FLIP_OPERATOR,
    block_concurrence,
    block_pure_state,
    concurrence_mixed,
    concurrence_pure,
    concurrence_spectrum,
    partial_trace,
    spin_flip,
)
from .flow import (
    Curve,
    FlowStep,
    FlowTrace,
    concurrence_at_log_coupling,
    concurrence_curve,
    derivative_at,
    derivative_curve,
    find_derivative_minimum,
    flow,
    renormalized_concurrence,
)
from .scaling import CollapseReport, ScalingFit, collapse, fit_power_law, minima_table

__version__ = "0.1.0"

__all__ = [
    "Coupling",
    "GroundDoublet",
    "FixedPoint",
    "CriticalExponents",
    "pauli",
    "block_hamiltonian",
    "diagonalize_symmetric",
    "ground_doublet",
    "rg_map_closed",
    "rg_map_numeric",
    "fixed_points",
    "critical_exponents",
    "SPIN_FLIP_OPERATOR",
    "spin_flip",
    "concurrence_spectrum",
    "concurrence_mixed",
    "concurrence_pure",
    "block_pure_state",
    "block_concurrence",
    "partial_trace",
    "FlowStep",
    "FlowTrace",
    "Curve",
    "flow",
    "concurrence_at_log_coupling",
    "renormalized_concurrence",
    "concurrence_curve",
    "derivative_at",
    "derivative_curve",
    "find_derivative_minimum",
    "ScalingFit",
    "CollapseReport",
    "fit_power_law",
    "minima_table",
    "collapse",
    "ChainSpec",
    "ChainState",
    "apply_hamiltonian",
    "dense_hamiltonian",
    "ground_state",
    "jw_dispersion",
    "jw_gap",
    "jw_ground_energy",
    "nearest_neighbor_concurrence",
]
