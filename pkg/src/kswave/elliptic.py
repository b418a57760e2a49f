"""Screened-Poisson pressure solves: p - sigma^2 p'' = u.

Two routes are provided and kept deliberately independent of each other:

* :func:`green_convolve` — convolution with the exact kernel
  exp(-|x|/sigma)/(2*sigma) against the piecewise-linear interpolant of the
  samples, with constant tails outside the truncated domain.  The derivative
  comes from the signed-kernel integral, not from differencing p.
* :func:`discrete_solve` — the tridiagonal second-difference system with
  Neumann closure used by the time stepper.

Truncating the line to [-L, L] replaces decay conditions by constant tails
(Green route) or zero-gradient rows (discrete route); the resulting boundary
layer has width of order sigma * ln(1/tol), so quantities read more than a
few sigma away from the ends are unaffected.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import Grid1D, Profile


@dataclass(frozen=True)
class PressureField:
    """Pressure samples p and derivative dp on a grid."""

    grid: Grid1D
    p: np.ndarray
    dp: np.ndarray

    def __post_init__(self):
        for name in ("p", "dp"):
            a = np.array(getattr(self, name), dtype=np.float64)
            if a.shape != (self.grid.m,):
                raise ValueError(f"{name} does not match the grid")
            a.setflags(write=False)
            object.__setattr__(self, name, a)


def green_convolve(source: Profile, sigma: float, tails=(0.0, 1.0)) -> PressureField:
    """Pressure of a sampled source by exact-kernel convolution.

    ``tails`` are the constant extensions (left, right) of the source outside
    the grid; both must lie in [0, 1] like the source itself.  The kernel has
    unit mass, so a constant source reproduces itself exactly.
    """
    if not sigma > 0.0:
        raise ValueError("sigma must be positive")
    left, right = float(tails[0]), float(tails[1])
    if not (0.0 <= left <= 1.0 and 0.0 <= right <= 1.0):
        raise ValueError("tail constants must lie in [0, 1]")
    p, dp = kernels.exp_convolve(source.u, source.grid.dx, sigma, left, right)
    return PressureField(grid=source.grid, p=p, dp=dp)


def discrete_solve(u, sigma: float, dx: float) -> np.ndarray:
    """Solve the Neumann-closed tridiagonal system (I - (sigma^2/dx^2) A) p = u.

    A is the second-difference matrix whose first and last diagonal entries
    are -1 (zero-gradient ghost cells).  Row sums of A vanish, so constants
    are reproduced, and the matrix is an M-matrix: 0 <= u <= 1 implies
    0 <= p <= 1.
    """
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 1 or u.shape[0] < 2:
        raise ValueError("need a density vector with at least two cells")
    if not dx > 0.0:
        raise ValueError("dx must be positive")
    r = (sigma / dx) ** 2
    return kernels.screened_poisson(u, r)


def flux_velocity(p, dx: float) -> np.ndarray:
    """Face velocities v = -dp/dx (length m+1); boundary faces are zero."""
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or p.shape[0] < 2:
        raise ValueError("need a pressure vector with at least two cells")
    if not dx > 0.0:
        raise ValueError("dx must be positive")
    return kernels.face_velocities(p, dx)
