"""Velocity-space kinetic solver for runaway-electron dynamics.

Evolves a distribution F(t, x, v) under a constant external field, the
Landau-Coulomb self-collision operator, and a spherical ion-drag
diffusion, and verifies the slow heating laws of the electron bulk:
linear momentum tracking, logarithmic temperature growth, and an
inverse-square friction decay.
"""

from .config import parse_config, resolved_lines, write_resolved
from .diagnostics import (DEFAULT_TOLERANCES, Check, FitResult,
                          TimeSeriesRecord, fit_friction_decay,
                          fit_linear_momentum, fit_log_growth,
                          frame_distance, verdict_lines, verify_series)
from .errors import (ConfigurationError, DegenerateStateError,
                     GridMismatchError, SimulationAbort)
from .frame import MacroState, from_frame, macro_rhs, to_frame, transformed_rhs
from .friction import (FieldSpec, field_advection, friction_R,
                       projector_drift, spherical_diffusion)
from .grid import (Distribution, MomentSet, VelocityGrid, build_grid,
                   maxwellian, moments, unit_maxwellian)
from .integrator import SimConfig, SimState, initial_state, run, stability_dt
from .io import (read_series_csv, read_snapshot, write_series_csv,
                 write_snapshot)
from .landau import (KernelFields, bilinear_Gamma, collision_Q,
                     convolve_kernels, linear_L, linearized_cL)
from .micro_macro import MacroCoefficients, l2_distance, project_P, weighted_norm

__version__ = "0.1.0"

__all__ = [
    "Check", "ConfigurationError", "DEFAULT_TOLERANCES",
    "DegenerateStateError", "Distribution", "FieldSpec", "FitResult",
    "GridMismatchError", "KernelFields", "MacroCoefficients", "MacroState",
    "MomentSet", "SimConfig", "SimState", "SimulationAbort",
    "TimeSeriesRecord", "VelocityGrid", "bilinear_Gamma", "build_grid",
    "collision_Q", "convolve_kernels", "field_advection",
    "fit_friction_decay", "fit_linear_momentum", "fit_log_growth",
    "frame_distance", "friction_R", "from_frame", "initial_state",
    "l2_distance", "linear_L", "linearized_cL", "macro_rhs", "maxwellian",
    "moments", "parse_config", "project_P", "projector_drift",
    "read_series_csv", "read_snapshot", "resolved_lines", "run",
    "spherical_diffusion", "stability_dt", "to_frame", "transformed_rhs",
    "unit_maxwellian", "verdict_lines", "verify_series", "weighted_norm",
    "write_resolved", "write_series_csv", "write_snapshot",
]
