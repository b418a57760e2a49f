"""Traveling waves and simulation for a hyperbolic cell-cell repulsion model.

Density is transported along the gradient of a screened-Poisson pressure and
grows logistically; the package computes continuous traveling-wave profiles
by fixed-point iteration, simulates the full system with a first-order
upwind finite-volume scheme, and post-processes front speeds and
wound-healing times.
"""

from .analysis import (
    FrontTrack,
    SpeedFit,
    SpeedReport,
    fit_speed,
    healing_time,
    mass,
    speed_report,
    track_front,
)
from .core import (
    Grid1D,
    ModelParams,
    NormalizedParams,
    Profile,
    SimState,
    WaveParams,
    admissible_profile,
    default_eta,
    normalize,
    weighted_distance,
    weighted_norm,
)
from .elliptic import PressureField, discrete_solve, flux_velocity, green_convolve
from .kernels import backend_name
from .pde import SchemeConfig, simulate, step, upwind_flux
from .wave import (
    CoefficientFields,
    FixedPointReport,
    apply_T,
    c_star,
    chi_bar,
    coefficients,
    export_wave,
    logistic_init,
    sharp_speed_bracket,
    solve_profile,
    speed_ordering_check,
    verify_residual,
)

__version__ = "0.1.0"
