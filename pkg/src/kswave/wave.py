"""Traveling-wave profiles via fixed-point iteration, plus closed-form speed
quantities.

The wave ODE is solved in the increasing orientation (limits 0 at -inf, 1 at
+inf, anchored by U(0) = u0): freezing the pressure of a candidate profile
turns the ODE into a logistic equation

    U'(x) = lam(x) U(x) - kap(x) U(x)^2,
    lam = (1 + (chi/sigma^2) P) / (c - chi P'),
    kap = (1 + chi/sigma^2) / (c - chi P'),

whose explicit solution defines one application of the operator.  Iterating
from a shifted logistic until successive iterates stop moving in the
weighted distance produces the profile; physical (decreasing) orientation is
recovered by reflection on export.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .core import (
    DECREASING,
    INCREASING,
    Grid1D,
    Profile,
    WaveParams,
    admissible_profile,
    check_admissible,
    check_wave_params,
    weighted_distance,
)
from .elliptic import PressureField, green_convolve


def c_star(chi: float, sigma: float) -> float:
    """Speed threshold 2*sqrt(chi*(1 + chi/sigma^2)) above which a continuous
    wave exists."""
    if not (chi > 0.0 and sigma > 0.0):
        raise ValueError("chi and sigma must be positive")
    return 2.0 * math.sqrt(chi * (1.0 + chi / sigma**2))


def sharp_speed_bracket(chi: float, sigma: float) -> tuple[float, float]:
    """Open interval (sigma*chi_hat/(2 + chi_hat), sigma*chi_hat/2) bracketing
    the sharp-wave speed, chi_hat = chi/sigma^2."""
    if not (chi > 0.0 and sigma > 0.0):
        raise ValueError("chi and sigma must be positive")
    chi_hat = chi / sigma**2
    return sigma * chi_hat / (2.0 + chi_hat), sigma * chi_hat / 2.0


def speed_ordering_check(chi: float, sigma: float) -> tuple[float, float, float, float]:
    """Return (c_star, 2 chi/sigma, chi/(2 sigma), sharp upper bound) and
    verify the theoretical ordering chain; a violation is a formula bug."""
    cs = c_star(chi, sigma)
    a = 2.0 * chi / sigma
    b = chi / (2.0 * sigma)
    sharp_hi = sharp_speed_bracket(chi, sigma)[1]
    chain = (cs, a, b, sharp_hi)
    eps = 1e-12 * max(chain)
    if not (cs >= a - eps and a >= b - eps and b >= sharp_hi - eps):
        raise RuntimeError(f"speed ordering chain violated: {chain}")
    return chain


def _sharp_existence_fn(chi_hat: float) -> float:
    # Root of this map over (0, 2) is the upper limit on chi_hat for the
    # sharp-wave construction.
    return math.log((2.0 - chi_hat) / chi_hat) + (2.0 / (2.0 + chi_hat)) * (
        0.5 * chi_hat * math.log(0.5 * chi_hat) + 1.0 - 0.5 * chi_hat
    )


def chi_bar() -> float:
    """Unique root in (0, 2) of the sharp-wave existence function.

    The function tends to +inf as chi_hat -> 0+ and to -inf as chi_hat -> 2-,
    so a bracketing root find cannot fail.
    """
    return brentq(_sharp_existence_fn, 1e-12, 2.0 - 1e-12, xtol=1e-13, rtol=8.9e-16)


@dataclass(frozen=True)
class CoefficientFields:
    """Frozen logistic coefficients lam(x), kap(x) of one operator application."""

    grid: Grid1D
    lam: np.ndarray
    kap: np.ndarray


@dataclass(frozen=True)
class FixedPointReport:
    """Diagnostics of a fixed-point solve."""

    iterations: int
    final_distance: float
    ode_residual: float
    converged: bool
    tail_left: float
    tail_right: float


def coefficients(pressure: PressureField, wp: WaveParams, chi: float,
                 sigma: float) -> CoefficientFields:
    """Pointwise logistic coefficients from a pressure field.

    The denominator c - chi*P' stays at or above c/2 for any admissible
    source; falling materially below that signals an inadmissible source.
    """
    denom = wp.c - chi * pressure.dp
    floor = 0.5 * wp.c
    if float(np.min(denom)) < floor - 1e-9 * max(1.0, wp.c):
        raise ValueError("pressure gradient too steep: source is not admissible")
    chi_hat = chi / sigma**2
    lam = (1.0 + chi_hat * pressure.p) / denom
    kap = (1.0 + chi_hat) / denom
    return CoefficientFields(grid=pressure.grid, lam=lam, kap=kap)


def _apply_with_pressure(u: Profile, wp: WaveParams, chi, sigma, tails, check):
    if check:
        check_wave_params(wp, chi, sigma)
        check_admissible(u, wp.c, chi)
        u.grid.anchor_index()
    pressure = green_convolve(u, sigma, tails=tails)
    coeff = coefficients(pressure, wp, chi, sigma)
    anchor = u.grid.anchor_index()
    v = kernels.logistic_profile(coeff.lam, coeff.kap, u.grid.dx, anchor, wp.u0)
    dv = coeff.lam * v - coeff.kap * v * v
    out = admissible_profile(u.grid, v, dv, wp.c, chi, mode="lenient")
    return out, pressure, coeff


def apply_T(u: Profile, wp: WaveParams, chi: float, sigma: float,
            tails=(0.0, 1.0), check: bool = True) -> Profile:
    """One application of the wave operator to an admissible profile.

    Pipeline: pressure of the candidate (constant tails outside the domain,
    by default 0 on the left and 1 on the right to match the wave limits),
    frozen logistic coefficients, then the explicit logistic solution
    anchored at V(0) = u0.  The output derivative is taken from the ODE
    itself, V' = lam V - kap V^2.  The admissible bounds are invariant under
    the operator; the output is clamped only at rounding level.
    """
    out, _, _ = _apply_with_pressure(u, wp, chi, sigma, tails, check)
    return out


def logistic_init(grid: Grid1D, wp: WaveParams, chi: float) -> Profile:
    """Shifted logistic u0 e^(x/c) / (1 + u0 (e^(x/c) - 1)): the exact fixed
    point for flat pressure, and admissible whenever the wave parameters are."""
    x = grid.centers
    c = wp.c
    v = np.empty_like(x)
    pos = x >= 0.0
    v[pos] = wp.u0 / ((1.0 - wp.u0) * np.exp(-x[pos] / c) + wp.u0)
    ex = np.exp(x[~pos] / c)
    v[~pos] = wp.u0 * ex / ((1.0 - wp.u0) + wp.u0 * ex)
    dv = v * (1.0 - v) / c
    return admissible_profile(grid, v, dv, wp.c, chi, mode="lenient")


def verify_residual(u: Profile, p: PressureField, wp: WaveParams, chi: float,
                    sigma: float) -> float:
    """Sup-norm residual of the wave ODE at interior nodes.

    Evaluates |(c - chi P') U' - U((1 + (chi/sigma^2) P) - (1 + chi/sigma^2) U)|
    with U' from centered differences of the samples; the stored derivative
    satisfies the frozen-coefficient ODE identically, so differencing is what
    makes this an independent check.
    """
    if not u.grid.matches(p.grid):
        raise ValueError("profile and pressure live on different grids")
    dx = u.grid.dx
    du = (u.u[2:] - u.u[:-2]) / (2.0 * dx)
    chi_hat = chi / sigma**2
    mid = slice(1, -1)
    lhs = (wp.c - chi * p.dp[mid]) * du
    rhs = u.u[mid] * ((1.0 + chi_hat * p.p[mid]) - (1.0 + chi_hat) * u.u[mid])
    return float(np.max(np.abs(lhs - rhs)))


def solve_profile(wp: WaveParams, chi: float, sigma: float, grid: Grid1D,
                  init: Profile | None = None, tol: float = 1e-10,
                  max_iter: int = 500) -> tuple[Profile, PressureField, FixedPointReport]:
    """Iterate the wave operator to a fixed point.

    Stops when the weighted distance between successive iterates drops below
    ``tol`` (rate ``wp.eta``); non-convergence within ``max_iter`` returns
    ``converged=False`` rather than raising.  The returned pressure is
    recomputed from the final profile so that the bundle is self-consistent,
    and the report carries the independent ODE residual plus the tail values
    U(x_min) and 1 - U(x_max).
    """
    check_wave_params(wp, chi, sigma)
    if init is None:
        init = logistic_init(grid, wp, chi)
    else:
        check_admissible(init, wp.c, chi)
    if not init.grid.matches(grid):
        raise ValueError("initial profile does not live on the stated grid")
    grid.anchor_index()

    current = init
    distance = math.inf
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        new = apply_T(current, wp, chi, sigma, check=False)
        distance = weighted_distance(new, current, wp.eta)
        current = new
        if distance < tol:
            converged = True
            break

    pressure = green_convolve(current, sigma)
    residual = verify_residual(current, pressure, wp, chi, sigma)
    report = FixedPointReport(
        iterations=iterations,
        final_distance=distance,
        ode_residual=residual,
        converged=converged,
        tail_left=float(current.u[0]),
        tail_right=float(1.0 - current.u[-1]),
    )
    return current, pressure, report


def export_wave(u: Profile) -> Profile:
    """Reflect an increasing-orientation profile to the physical decreasing
    one (limits 1 behind, 0 ahead); the value at x = 0 is preserved."""
    if u.orientation != INCREASING:
        raise ValueError("export expects an increasing-orientation profile")
    grid = Grid1D(x_min=-u.grid.x_max, x_max=-u.grid.x_min, m=u.grid.m)
    return Profile(grid=grid, u=u.u[::-1], du=-u.du[::-1], orientation=DECREASING)


def reflect_pressure(p: PressureField) -> PressureField:
    """Companion reflection for pressure fields exported with a wave."""
    grid = Grid1D(x_min=-p.grid.x_max, x_max=-p.grid.x_min, m=p.grid.m)
    return PressureField(grid=grid, p=p.p[::-1], dp=-p.dp[::-1])
