"""Pseudo-spectral laboratory for a two-component shallow-water family.

Layers: spectral grid and Fourier multipliers (`spectral`), dyadic frequency
decomposition and Besov norms (`littlewood_paley`), the equations and their
conserved quantities (`bfamily`), fixed-step RK4 (`integrate`), oscillatory
initial-data families (`sequences`), the measurement harness (`experiments`,
`validation`), and artifact emission (`report`, `cli`).
"""

from ._version import __version__
from .bfamily import BFamilyParams, State, conserved_quantities, momentum, rhs
from .experiments import (
    CheckResult,
    DeviationRow,
    ExperimentConfig,
    ExperimentResult,
    RateFit,
    concentration_experiment,
    data_approximation_experiment,
    evolve_experiment,
    fit_rate,
    measure_pair,
    norm_scaling_experiment,
    riemann_limit_experiment,
    riemann_limit_gap,
    separation_experiment,
    taylor_remainder_experiment,
)
from .integrate import (
    BlowUpError,
    CflViolationError,
    SolverConfig,
    Trajectory,
    evolve,
    rk4_step,
)
from .littlewood_paley import (
    BesovParams,
    DyadicPartition,
    besov_norm,
    block_profile,
    build_partition,
    lp_block,
    smooth_bump_symbol,
)
from .sequences import (
    CARRIER_RATIO,
    BumpSpec,
    CapacityError,
    SequenceIndex,
    build_f_n,
    build_g_n,
    bump_phi,
    capacity_check,
    drift_fields,
    initial_data,
    max_feasible_n,
)
from .spectral import (
    Field,
    Grid1D,
    GridMismatchError,
    derivative,
    helmholtz_solve,
    lp_norm,
    make_grid,
    multiply_dealiased,
    nonlocal_deriv,
)
from .validation import run_validation

__all__ = [
    "__version__",
    "BFamilyParams",
    "State",
    "conserved_quantities",
    "momentum",
    "rhs",
    "CheckResult",
    "DeviationRow",
    "ExperimentConfig",
    "ExperimentResult",
    "RateFit",
    "concentration_experiment",
    "data_approximation_experiment",
    "evolve_experiment",
    "fit_rate",
    "measure_pair",
    "norm_scaling_experiment",
    "riemann_limit_experiment",
    "riemann_limit_gap",
    "separation_experiment",
    "taylor_remainder_experiment",
    "BlowUpError",
    "CflViolationError",
    "SolverConfig",
    "Trajectory",
    "evolve",
    "rk4_step",
    "BesovParams",
    "DyadicPartition",
    "besov_norm",
    "block_profile",
    "build_partition",
    "lp_block",
    "smooth_bump_symbol",
    "CARRIER_RATIO",
    "BumpSpec",
    "CapacityError",
    "SequenceIndex",
    "build_f_n",
    "build_g_n",
    "bump_phi",
    "capacity_check",
    "drift_fields",
    "initial_data",
    "max_feasible_n",
    "Field",
    "Grid1D",
    "GridMismatchError",
    "derivative",
    "helmholtz_solve",
    "lp_norm",
    "make_grid",
    "multiply_dealiased",
    "nonlocal_deriv",
    "run_validation",
]
