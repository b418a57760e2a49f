# Compiled hot kernels; signatures mirror kswave._kernels_py.

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, expm1

cnp.import_array()


def screened_poisson(u, double r):
    cdef const double[::1] d = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t m = d.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m)
    cdef double[::1] x = out
    cdef double[::1] cp = np.empty(m)
    cdef double[::1] dp = np.empty(m)
    cdef double off = -r
    cdef double b0 = 1.0 + r
    cdef double bi = 1.0 + 2.0 * r
    cdef double w
    cdef Py_ssize_t i

    # Thomas elimination; strict diagonal dominance makes it stable
    # without pivoting.
    cp[0] = off / b0
    dp[0] = d[0] / b0
    for i in range(1, m - 1):
        w = 1.0 / (bi - off * cp[i - 1])
        cp[i] = off * w
        dp[i] = (d[i] - off * dp[i - 1]) * w
    w = 1.0 / (b0 - off * cp[m - 2])
    dp[m - 1] = (d[m - 1] - off * dp[m - 2]) * w

    x[m - 1] = dp[m - 1]
    for i in range(m - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return out


def exp_convolve(u, double dx, double sigma, double left_tail, double right_tail):
    cdef const double[::1] s = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t m = s.shape[0]
    cdef double alpha = dx / sigma
    cdef double c1 = -expm1(-alpha)
    cdef double e = 1.0 - c1
    cdef double c2
    if alpha < 1e-3:
        c2 = alpha * (0.5 - alpha * (1.0 / 6.0 - alpha * (1.0 / 24.0 - alpha / 120.0)))
    else:
        c2 = 1.0 - c1 / alpha
    cdef double w_near = sigma * c2
    cdef double w_far = sigma * (c1 - c2)

    cdef cnp.ndarray[cnp.float64_t, ndim=1] p_out = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dp_out = np.empty(m)
    cdef double[::1] p = p_out
    cdef double[::1] dp = dp_out
    cdef double[::1] il = np.empty(m)
    cdef double[::1] ir = np.empty(m)
    cdef Py_ssize_t i

    il[0] = sigma * left_tail
    for i in range(1, m):
        il[i] = e * il[i - 1] + w_far * s[i - 1] + w_near * s[i]
    ir[m - 1] = sigma * right_tail
    for i in range(m - 2, -1, -1):
        ir[i] = e * ir[i + 1] + w_far * s[i + 1] + w_near * s[i]

    cdef double inv_p = 1.0 / (2.0 * sigma)
    cdef double inv_dp = 1.0 / (2.0 * sigma * sigma)
    for i in range(m):
        p[i] = (il[i] + ir[i]) * inv_p
        dp[i] = (ir[i] - il[i]) * inv_dp
    return p_out, dp_out


def logistic_profile(lam, kap, double dx, Py_ssize_t anchor, double u0):
    cdef const double[::1] la = np.ascontiguousarray(lam, dtype=np.float64)
    cdef const double[::1] ka = np.ascontiguousarray(kap, dtype=np.float64)
    cdef Py_ssize_t n = la.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] v_out = np.empty(n)
    cdef double[::1] v = v_out
    cdef double[::1] lam_int = np.empty(n)
    cdef Py_ssize_t j
    cdef double mu, kb, q, d, el_next, el, w, den

    for j in range(n - 1):
        if la[j] + la[j + 1] <= 0.0:
            raise ValueError("panel growth coefficient must be positive")

    lam_int[anchor] = 0.0
    for j in range(anchor, n - 1):
        lam_int[j + 1] = lam_int[j] + dx * 0.5 * (la[j] + la[j + 1])
    for j in range(anchor - 1, -1, -1):
        lam_int[j] = lam_int[j + 1] - dx * 0.5 * (la[j] + la[j + 1])

    # Leftward sweep: exp arguments are <= 0, direct formula is safe.
    el_next = 1.0
    w = 0.0
    v[anchor] = u0
    for j in range(anchor - 1, -1, -1):
        mu = 0.5 * (la[j] + la[j + 1])
        kb = 0.5 * (ka[j] + ka[j + 1])
        el = exp(lam_int[j])
        w -= kb * (el_next - el) / mu
        den = 1.0 + u0 * w
        if den <= 0.0:
            raise RuntimeError("logistic denominator not positive; inadmissible input")
        v[j] = u0 * el / den
        el_next = el

    # Rightward sweep: recursion on d = exp(-int lam) * (1 + u0 * int kap e^..)
    # keeps every exponent non-positive regardless of domain length.
    d = 1.0
    for j in range(anchor, n - 1):
        mu = 0.5 * (la[j] + la[j + 1])
        kb = 0.5 * (ka[j] + ka[j + 1])
        q = -expm1(-dx * mu)
        d = (1.0 - q) * d + u0 * kb * q / mu
        v[j + 1] = u0 / d
    return v_out


def face_velocities(p, double dx):
    cdef const double[::1] q = np.ascontiguousarray(p, dtype=np.float64)
    cdef Py_ssize_t m = q.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] v_out = np.zeros(m + 1)
    cdef double[::1] v = v_out
    cdef double inv_dx = 1.0 / dx
    cdef Py_ssize_t i
    for i in range(1, m):
        v[i] = -(q[i] - q[i - 1]) * inv_dx
    return v_out


def upwind_update(u, v, double chi_dt_dx, double growth_dt):
    cdef const double[::1] s = np.ascontiguousarray(u, dtype=np.float64)
    cdef const double[::1] w = np.ascontiguousarray(v, dtype=np.float64)
    cdef Py_ssize_t m = s.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m)
    cdef double[::1] un = out
    cdef double flux_left = 0.0
    cdef double flux_right
    cdef double vf
    cdef Py_ssize_t i

    for i in range(m):
        if i == m - 1:
            flux_right = 0.0
        else:
            vf = w[i + 1]
            flux_right = vf * s[i] if vf >= 0.0 else vf * s[i + 1]
        un[i] = s[i] - chi_dt_dx * (flux_right - flux_left)
        if growth_dt != 0.0:
            un[i] += growth_dt * s[i] * (1.0 - s[i])
        flux_left = flux_right
    return out
