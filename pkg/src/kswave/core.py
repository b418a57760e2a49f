"""Shared parameter, grid and field types.

The model evolves a cell density u(t, x) by repulsive transport along the
gradient of a nonlocal pressure p (solving p - sigma^2 p'' = u) plus
logistic growth.  After scaling time by the growth rate and density by the
carrying capacity, the equation keeps only the repulsion coefficient chi
and the sensing length sigma; wave computations work in those normalized
variables throughout.
"""

import math
from dataclasses import dataclass, field

import numpy as np

ADMISSIBLE_TOL = 1e-12

INCREASING = "increasing"
DECREASING = "decreasing"


def _frozen_array(values, n=None):
    a = np.ascontiguousarray(values, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError("expected a 1-D array of samples")
    if n is not None and a.shape[0] != n:
        raise ValueError(f"expected {n} samples, got {a.shape[0]}")
    if not np.all(np.isfinite(a)):
        raise ValueError("samples must be finite")
    a = a.copy()
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ModelParams:
    """Physical constants: repulsion chi, sensing length sigma, growth rate
    (per day) and carrying capacity."""

    chi: float
    sigma: float
    growth: float = 1.0
    capacity: float = 1.0

    def __post_init__(self):
        for name in ("chi", "sigma", "growth", "capacity"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class NormalizedParams:
    """Parameters with growth and capacity scaled to one; chi_hat = chi/sigma^2."""

    chi: float
    sigma: float
    chi_hat: float = field(init=False)

    def __post_init__(self):
        if not (self.chi > 0.0 and self.sigma > 0.0):
            raise ValueError("chi and sigma must be strictly positive")
        object.__setattr__(self, "chi_hat", self.chi / self.sigma**2)


def normalize(params: ModelParams) -> NormalizedParams:
    """Absorb growth rate and capacity into the time and density scales.

    The rescaled equation keeps chi and sigma unchanged; chi_hat = chi/sigma^2
    is cached because it controls both speed formulas.
    """
    return NormalizedParams(chi=params.chi, sigma=params.sigma)


@dataclass(frozen=True)
class WaveParams:
    """Wave speed c, anchor value u0 = U(0) and weighted-norm rate eta."""

    c: float
    u0: float
    eta: float

    def __post_init__(self):
        if not self.c > 0.0:
            raise ValueError("wave speed c must be positive")
        if not 0.0 < self.u0 < 1.0:
            raise ValueError("anchor value u0 must lie in (0, 1)")
        if not self.eta > 0.0:
            raise ValueError("eta must be positive")


def default_eta(sigma: float) -> float:
    """Midpoint of the admissible range (0, 1/sigma) for the decay rate of
    the weighted norm; no optimality is claimed."""
    return 0.5 / sigma


def check_wave_params(wp: WaveParams, chi: float, sigma: float) -> None:
    """Reject wave parameters outside the existence regime.

    Requires c >= 2*sqrt(chi*(1 + chi/sigma^2)), u0 below
    sigma^2 / (2*(sigma^2 + chi)) and eta < 1/sigma.
    """
    c_min = 2.0 * math.sqrt(chi * (1.0 + chi / sigma**2))
    if wp.c < c_min * (1.0 - 1e-12):
        raise ValueError(f"wave speed {wp.c} below the continuous-wave threshold {c_min}")
    u0_max = sigma**2 / (2.0 * (sigma**2 + chi))
    if not wp.u0 < u0_max:
        raise ValueError(f"anchor value {wp.u0} must be below {u0_max}")
    if not wp.eta < 1.0 / sigma:
        raise ValueError(f"eta {wp.eta} must be below 1/sigma = {1.0 / sigma}")


@dataclass(frozen=True)
class Grid1D:
    """Uniform cell-centered mesh with m cells on [x_min, x_max]."""

    x_min: float
    x_max: float
    m: int
    dx: float = field(init=False)
    centers: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("need at least two cells")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")
        dx = (self.x_max - self.x_min) / self.m
        centers = self.x_min + (np.arange(self.m) + 0.5) * dx
        centers.setflags(write=False)
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "centers", centers)

    @classmethod
    def symmetric(cls, half_width: float, dx: float) -> "Grid1D":
        """Grid whose centers run -L, -L+dx, ..., L inclusive (odd count).

        x = 0 is then an exact sample point, which wave solves rely on to
        anchor the profile.  half_width must be an integer multiple of dx.
        """
        n = round(half_width / dx)
        if n < 1 or abs(n * dx - half_width) > 1e-9 * max(1.0, half_width):
            raise ValueError("half_width must be a positive integer multiple of dx")
        edge = (n + 0.5) * dx
        return cls(x_min=-edge, x_max=edge, m=2 * n + 1)

    def matches(self, other: "Grid1D") -> bool:
        return (
            self.m == other.m
            and math.isclose(self.x_min, other.x_min, rel_tol=0.0, abs_tol=1e-12)
            and math.isclose(self.x_max, other.x_max, rel_tol=0.0, abs_tol=1e-12)
        )

    def anchor_index(self) -> int:
        """Index of the sample at x = 0; raises if the grid has none."""
        i = int(np.argmin(np.abs(self.centers)))
        if abs(self.centers[i]) > 1e-9 * self.dx:
            raise ValueError("grid has no sample at x = 0")
        return i


@dataclass(frozen=True)
class Profile:
    """Sampled candidate wave profile: values u, derivative du, orientation."""

    grid: Grid1D
    u: np.ndarray
    du: np.ndarray
    orientation: str = INCREASING

    def __post_init__(self):
        if self.orientation not in (INCREASING, DECREASING):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        object.__setattr__(self, "u", _frozen_array(self.u, self.grid.m))
        object.__setattr__(self, "du", _frozen_array(self.du, self.grid.m))


def _check_range(a, lo, hi, tol, what):
    worst = max(float(np.max(lo - a, initial=0.0)), float(np.max(a - hi, initial=0.0)))
    if worst > tol:
        raise ValueError(f"{what} outside [{lo}, {hi}] by {worst:.3e} (tolerance {tol:.0e})")


def admissible_profile(grid, u, du, c, chi, orientation=INCREASING, mode="strict",
                       tol=ADMISSIBLE_TOL) -> Profile:
    """Build a profile enforcing the admissible-set bounds.

    In the increasing orientation: values in [0, 1], derivative in
    [0, c/(2 chi)], values nondecreasing; the decreasing orientation mirrors
    the bounds.  Violations beyond ``tol`` are errors in either mode;
    ``mode='lenient'`` additionally clamps rounding-level excursions back
    into the bounds, ``mode='strict'`` stores the samples as given.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"unknown mode {mode!r}")
    u = np.asarray(u, dtype=np.float64)
    du = np.asarray(du, dtype=np.float64)
    bound = c / (2.0 * chi)
    if orientation == INCREASING:
        du_lo, du_hi = 0.0, bound
        drift = float(np.min(np.diff(u), initial=0.0))
    else:
        du_lo, du_hi = -bound, 0.0
        drift = -float(np.max(np.diff(u), initial=0.0))
    _check_range(u, 0.0, 1.0, tol, "profile values")
    _check_range(du, du_lo, du_hi, tol, "profile derivative")
    if drift < -tol:
        raise ValueError(f"profile violates monotonicity by {-drift:.3e} (tolerance {tol:.0e})")
    if mode == "lenient":
        u = np.clip(u, 0.0, 1.0)
        du = np.clip(du, du_lo, du_hi)
    return Profile(grid=grid, u=u, du=du, orientation=orientation)


def check_admissible(p: Profile, c: float, chi: float, tol: float = ADMISSIBLE_TOL) -> None:
    """Raise unless ``p`` satisfies the admissible-set bounds within tol."""
    admissible_profile(p.grid, p.u, p.du, c, chi, orientation=p.orientation, tol=tol)


def weighted_norm(p: Profile, eta: float) -> float:
    """Weighted sup norm: sup e^(-eta|x|)|u| + sup e^(-eta|x|)|du|."""
    if not eta > 0.0:
        raise ValueError("eta must be positive")
    w = np.exp(-eta * np.abs(p.grid.centers))
    return float(np.max(w * np.abs(p.u)) + np.max(w * np.abs(p.du)))


def weighted_distance(p1: Profile, p2: Profile, eta: float) -> float:
    """Weighted distance between two profiles on the same grid (values and
    derivatives)."""
    if not eta > 0.0:
        raise ValueError("eta must be positive")
    if not p1.grid.matches(p2.grid):
        raise ValueError("profiles live on different grids")
    w = np.exp(-eta * np.abs(p1.grid.centers))
    return float(np.max(w * np.abs(p1.u - p2.u)) + np.max(w * np.abs(p1.du - p2.du)))


@dataclass(frozen=True)
class SimState:
    """Cell-averaged density at time t (days)."""

    t: float
    grid: Grid1D
    u: np.ndarray

    def __post_init__(self):
        u = np.ascontiguousarray(self.u, dtype=np.float64)
        if u.shape != (self.grid.m,):
            raise ValueError("density vector does not match the grid")
        low = float(np.min(u, initial=0.0))
        if low < -1e-14:
            raise ValueError(f"density has negative entries down to {low:.3e}")
        u = np.maximum(u, 0.0)
        u.setflags(write=False)
        object.__setattr__(self, "u", u)
