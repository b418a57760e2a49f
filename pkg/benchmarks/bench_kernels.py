"""Timing comparison of the compiled kernels against the pure-Python fallback.

Run with ``python benchmarks/bench_kernels.py``.  Representative sizes match
the shipped scenarios: the wave grid (half-width 60, dx 0.05) and the
simulation grid (domain 40, dx 0.025).
"""

import time

import numpy as np

from kswave import _kernels_py

try:
    from kswave import _kernels
except ImportError:
    _kernels = None


def timeit(fn, *args, repeat=200):
    fn(*args)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def main():
    rng = np.random.default_rng(0)
    m_wave, m_sim = 2401, 1600
    u_wave = np.sort(rng.random(m_wave))
    lam = 0.35 + 0.3 * rng.random(m_wave)
    kap = lam + 0.2 * rng.random(m_wave)
    u_sim = rng.random(m_sim)
    v_sim = _kernels_py.face_velocities(_kernels_py.screened_poisson(u_sim, 1600.0), 0.025)

    cases = [
        ("screened_poisson (m=1600)", "screened_poisson", (u_sim, 1600.0)),
        ("exp_convolve (m=2401)", "exp_convolve", (u_wave, 0.05, 1.0, 0.0, 1.0)),
        ("logistic_profile (m=2401)", "logistic_profile", (lam, kap, 0.05, m_wave // 2, 0.2)),
        ("face_velocities (m=1600)", "face_velocities", (u_sim, 0.025)),
        ("upwind_update (m=1600)", "upwind_update", (u_sim, v_sim, 0.1, 0.01)),
    ]

    print(f"{'kernel':34s} {'python':>12s} {'compiled':>12s} {'speedup':>9s}")
    for label, name, args in cases:
        t_py = timeit(getattr(_kernels_py, name), *args)
        if _kernels is None:
            print(f"{label:34s} {t_py * 1e6:10.1f} us {'n/a':>12s} {'n/a':>9s}")
            continue
        t_cy = timeit(getattr(_kernels, name), *args)
        print(f"{label:34s} {t_py * 1e6:10.1f} us {t_cy * 1e6:10.1f} us {t_py / t_cy:8.1f}x")


if __name__ == "__main__":
    main()
