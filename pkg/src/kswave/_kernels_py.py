"""Pure-Python (numpy/scipy) implementations of the hot kernels.

These mirror the compiled extension ``kswave._kernels`` exactly; the active
backend is chosen in :mod:`kswave.kernels`.  All routines operate on
contiguous float64 arrays sampled on a uniform grid.
"""

import numpy as np
from scipy.linalg import solveh_banded
from scipy.signal import lfilter


def _as_f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def screened_poisson(u, r):
    """Solve (I - r*A) p = u where A is the second-difference matrix with
    Neumann corner entries (-1 instead of -2), r = sigma^2/dx^2.

    The matrix is symmetric positive definite (strictly diagonally dominant),
    so a Cholesky-based banded solve needs no pivoting.
    """
    u = _as_f64(u)
    m = u.shape[0]
    ab = np.empty((2, m))
    ab[0, :] = -r
    ab[1, :] = 1.0 + 2.0 * r
    ab[1, 0] = 1.0 + r
    ab[1, m - 1] = 1.0 + r
    return solveh_banded(ab, u, lower=False)


def _panel_weights(dx, sigma):
    # Exact integrals of exp(-s/sigma) * {1, s/dx} over one panel.  c2 goes
    # through a Taylor branch for tiny dx/sigma to avoid cancellation.
    alpha = dx / sigma
    c1 = -np.expm1(-alpha)
    e = 1.0 - c1
    if alpha < 1e-3:
        c2 = alpha * (0.5 - alpha * (1.0 / 6.0 - alpha * (1.0 / 24.0 - alpha / 120.0)))
    else:
        c2 = 1.0 - c1 / alpha
    w_near = sigma * c2
    w_far = sigma * (c1 - c2)
    return e, w_near, w_far


def exp_convolve(u, dx, sigma, left_tail, right_tail):
    """Convolve samples with the kernel exp(-|x|/sigma)/(2*sigma).

    The source is the piecewise-linear interpolant of ``u`` inside the grid,
    extended by the constants ``left_tail``/``right_tail`` outside.  Each
    panel is integrated in closed form, so constants are reproduced exactly
    and smooth sources converge at second order.  Returns ``(p, dp)`` where
    ``dp`` is the signed-kernel integral (the exact derivative of ``p`` for
    the interpolated source).
    """
    u = _as_f64(u)
    m = u.shape[0]
    e, w_near, w_far = _panel_weights(dx, sigma)

    # One-sided accumulations: il[i] integrates the kernel against the source
    # left of x_i, ir[i] against the source right of x_i.
    x_in = w_far * u[:-1] + w_near * u[1:]
    il0 = sigma * left_tail
    il = np.empty(m)
    il[0] = il0
    il[1:] = lfilter([1.0], [1.0, -e], x_in, zi=np.array([e * il0]))[0]

    ur = u[::-1]
    x_in = w_far * ur[:-1] + w_near * ur[1:]
    ir0 = sigma * right_tail
    ir = np.empty(m)
    ir[0] = ir0
    ir[1:] = lfilter([1.0], [1.0, -e], x_in, zi=np.array([e * ir0]))[0]
    ir = ir[::-1]

    p = (il + ir) / (2.0 * sigma)
    dp = (ir - il) / (2.0 * sigma * sigma)
    return p, dp


def logistic_profile(lam, kap, dx, anchor, u0):
    """Accumulate the logistic-form solution of v' = lam(x) v - kap(x) v^2
    anchored at v(x[anchor]) = u0.

    Coefficients are frozen to their panel averages, for which each panel
    integral has a closed form; the result is exact for constant lam, kap
    and second-order accurate otherwise.  All exponentials on the growing
    side are evaluated with non-positive arguments, so arbitrarily long
    domains cannot overflow.
    """
    lam = _as_f64(lam)
    kap = _as_f64(kap)
    n = lam.shape[0]
    mu = 0.5 * (lam[:-1] + lam[1:])
    kb = 0.5 * (kap[:-1] + kap[1:])
    if np.any(mu <= 0.0):
        raise ValueError("panel growth coefficient must be positive")

    steps = dx * mu
    lam_int = np.empty(n)
    lam_int[anchor] = 0.0
    if anchor < n - 1:
        lam_int[anchor + 1 :] = np.cumsum(steps[anchor:])
    if anchor > 0:
        lam_int[:anchor] = -np.cumsum(steps[:anchor][::-1])[::-1]

    v = np.empty(n)

    # Left of the anchor the integral of lam is <= 0, so the direct formula
    # is overflow-safe.
    e_left = np.exp(lam_int[: anchor + 1])
    if anchor > 0:
        t = kb[:anchor] * (e_left[1:] - e_left[:-1]) / mu[:anchor]
        w = np.empty(anchor + 1)
        w[anchor] = 0.0
        w[:anchor] = -np.cumsum(t[::-1])[::-1]
    else:
        w = np.zeros(1)
    den = 1.0 + u0 * w
    if np.any(den <= 0.0):
        raise RuntimeError("logistic denominator not positive; inadmissible input")
    v[: anchor + 1] = u0 * e_left / den

    # Right of the anchor: same formula, guarded against exp overflow.  The
    # recursion form keeps every exponent non-positive.
    if anchor < n - 1:
        if lam_int[-1] < 600.0:
            e_right = np.exp(lam_int[anchor:])
            t = kb[anchor:] * (e_right[1:] - e_right[:-1]) / mu[anchor:]
            c = np.empty(n - anchor)
            c[0] = 0.0
            c[1:] = np.cumsum(t)
            v[anchor:] = u0 * e_right / (1.0 + u0 * c)
        else:
            d = 1.0
            for j in range(anchor, n - 1):
                q = -np.expm1(-steps[j])
                d = (1.0 - q) * d + u0 * kb[j] * q / mu[j]
                v[j + 1] = u0 / d
    v[anchor] = u0
    return v


def face_velocities(p, dx):
    """Face velocities -dp/dx with no-flux (zero) boundary faces."""
    p = _as_f64(p)
    m = p.shape[0]
    v = np.zeros(m + 1)
    v[1:-1] = -(p[1:] - p[:-1]) / dx
    return v


def upwind_update(u, v, chi_dt_dx, growth_dt):
    """One explicit upwind finite-volume update with logistic reaction.

    ``v`` holds m+1 face velocities (boundary faces zero), ``chi_dt_dx`` is
    chi*dt/dx and ``growth_dt`` is dt times the reaction rate (0 disables
    the reaction).
    """
    u = _as_f64(u)
    vi = v[1:-1]
    flux = np.empty(u.shape[0] + 1)
    flux[0] = 0.0
    flux[-1] = 0.0
    flux[1:-1] = np.where(vi >= 0.0, vi * u[:-1], vi * u[1:])
    un = u - chi_dt_dx * np.diff(flux)
    if growth_dt != 0.0:
        un += growth_dt * u * (1.0 - u)
    return un
