import numpy as np
import pytest

from kswave.core import Grid1D, admissible_profile


def random_admissible(rng, grid, c, chi):
    """Random smooth nondecreasing profile inside the admissible set."""
    m, dx = grid.m, grid.dx
    bound = c / (2.0 * chi)
    k = int(rng.integers(2, max(3, min(100, m // 4))))
    du = np.convolve(rng.random(m), np.ones(2 * k + 1) / (2 * k + 1), mode="same")
    du *= rng.uniform(0.05, 0.95) * bound / du.max()
    lo = rng.uniform(0.0, 0.25)
    u = lo + np.concatenate([[0.0], np.cumsum(0.5 * (du[:-1] + du[1:]) * dx)])
    hi = rng.uniform(0.5, 1.0)
    if u[-1] > hi:
        s = (hi - lo) / (u[-1] - lo)
        u = lo + (u - lo) * s
        du = du * s
    return admissible_profile(grid, u, du, c, chi, mode="lenient")


def tanh_profile(grid, c, chi, rate=0.35):
    """Smooth reference profile with analytic derivative."""
    x = grid.centers
    u = 0.5 * (1.0 + np.tanh(rate * x))
    du = 0.5 * rate / np.cosh(rate * x) ** 2
    return admissible_profile(grid, u, du, c, chi, mode="lenient")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def small_grid():
    return Grid1D.symmetric(10.0, 0.1)
