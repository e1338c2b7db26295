"""Steady-state cooling of a levitated magnet via Kerr-induced magnon squeezing.

The package solves the second-moment dynamics of a linearized cavity
magnomechanical system in which a two-tone drive maps the magnon self-Kerr
nonlinearity onto degenerate squeezing, evaluates the weak-coupling closed
forms and their optimization conditions, and designs the physical drive
powers that realize a target operating point.
"""

__version__ = "0.1.0"

from .bogoliubov import BogoliubovFrame, build_frame, identity_frame, optimal_phases
from .constants import (
    DEFAULT_CONSTANTS,
    GeometryParams,
    PhysicalConstants,
    SystemParams,
    kerr_coefficient,
    thermal_occupation,
    tripartite_coupling,
)
from .design import (
    DriveConfig,
    DriveDesign,
    LinearizedParams,
    SteadyAmplitudes,
    forward_solve,
    inverse_design,
    linearized_params,
)
from .moments import (
    LinearSystem,
    MomentState,
    build_original_system,
    build_system,
    integrate,
    original_frame_steady,
    steady_state,
)

__all__ = [
    "BogoliubovFrame",
    "DEFAULT_CONSTANTS",
    "DriveConfig",
    "DriveDesign",
    "GeometryParams",
    "LinearSystem",
    "LinearizedParams",
    "MomentState",
    "PhysicalConstants",
    "SteadyAmplitudes",
    "SystemParams",
    "build_frame",
    "build_original_system",
    "build_system",
    "forward_solve",
    "identity_frame",
    "integrate",
    "inverse_design",
    "kerr_coefficient",
    "linearized_params",
    "optimal_phases",
    "original_frame_steady",
    "steady_state",
    "thermal_occupation",
    "tripartite_coupling",
]
