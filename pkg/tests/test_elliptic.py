import numpy as np
import pytest

from kswave.core import Grid1D, Profile
from kswave.elliptic import discrete_solve, flux_velocity, green_convolve

from conftest import tanh_profile


def dense_oracle(u, sigma, dx):
    """Reference solve of the Neumann-closed system by dense elimination."""
    m = len(u)
    r = (sigma / dx) ** 2
    a = np.diag(-2.0 * np.ones(m)) + np.diag(np.ones(m - 1), 1) + np.diag(np.ones(m - 1), -1)
    a[0, 0] = -1.0
    a[m - 1, m - 1] = -1.0
    return np.linalg.solve(np.eye(m) - r * a, u)


class TestGreenConvolve:
    def test_constant_source_is_exact(self):
        g = Grid1D.symmetric(20.0, 0.05)
        src = Profile(g, np.full(g.m, 0.37), np.zeros(g.m))
        pf = green_convolve(src, 1.0, tails=(0.37, 0.37))
        assert np.max(np.abs(pf.p - 0.37)) < 1e-12
        assert np.max(np.abs(pf.dp)) < 1e-12

    def test_zero_source(self):
        g = Grid1D.symmetric(5.0, 0.1)
        pf = green_convolve(Profile(g, np.zeros(g.m), np.zeros(g.m)), 0.7, tails=(0.0, 0.0))
        assert np.max(np.abs(pf.p)) == 0.0
        assert np.max(np.abs(pf.dp)) == 0.0

    def test_step_source_closed_form(self):
        # Step with the mean value at the jump node; unit sensing length.
        g = Grid1D.symmetric(20.0, 1e-3)
        x = g.centers
        u = np.where(x > 0, 1.0, 0.0)
        u[g.anchor_index()] = 0.5
        pf = green_convolve(Profile(g, u, np.zeros(g.m)), 1.0, tails=(0.0, 1.0))
        exact_p = np.where(x < 0, 0.5 * np.exp(x), 1.0 - 0.5 * np.exp(-x))
        assert np.max(np.abs(pf.p - exact_p)) < 1e-6
        # The derivative has a corner at the jump: first-order there, second
        # order away from it.
        exact_dp = 0.5 * np.exp(-np.abs(x))
        away = np.abs(x) > 0.01
        assert np.max(np.abs(pf.dp - exact_dp)[away]) < 1e-6
        assert np.max(np.abs(pf.dp - exact_dp)) < 1e-3

    def test_derivative_bound_for_increasing_source(self):
        g = Grid1D.symmetric(25.0, 0.05)
        src = tanh_profile(g, 3.0, 1.0)
        pf = green_convolve(src, 1.3, tails=(0.0, 1.0))
        assert np.min(pf.dp) >= -1e-14
        assert np.max(pf.dp) <= np.max(src.du) + 1e-12

    def test_linearity(self, rng):
        g = Grid1D.symmetric(8.0, 0.1)
        u1 = rng.random(g.m)
        u2 = rng.random(g.m)
        a, b = 0.3, -1.7
        z = np.zeros(g.m)
        p1 = green_convolve(Profile(g, u1, z), 0.9, tails=(0.0, 0.0))
        p2 = green_convolve(Profile(g, u2, z), 0.9, tails=(0.0, 0.0))
        p12 = green_convolve(Profile(g, a * u1 + b * u2, z), 0.9, tails=(0.0, 0.0))
        assert np.max(np.abs(p12.p - (a * p1.p + b * p2.p))) < 1e-12
        assert np.max(np.abs(p12.dp - (a * p1.dp + b * p2.dp))) < 1e-12

    def test_input_validation(self, small_grid):
        src = Profile(small_grid, np.zeros(small_grid.m), np.zeros(small_grid.m))
        with pytest.raises(ValueError):
            green_convolve(src, 0.0)
        with pytest.raises(ValueError):
            green_convolve(src, 1.0, tails=(-0.1, 1.0))
        with pytest.raises(ValueError):
            green_convolve(src, 1.0, tails=(0.0, 1.5))


class TestDiscreteSolve:
    def test_constant_in_kernel_of_difference_matrix(self):
        p = discrete_solve(np.full(301, 0.42), 1.7, 0.05)
        assert np.max(np.abs(p - 0.42)) < 1e-12

    def test_three_cell_example_vs_oracle(self):
        u = np.array([1.0, 0.0, 0.0])
        assert np.max(np.abs(discrete_solve(u, 1.0, 1.0) - dense_oracle(u, 1.0, 1.0))) < 1e-14

    def test_random_systems_vs_oracle(self, rng):
        worst = 0.0
        for _ in range(40):
            m = int(rng.integers(2, 51))
            sigma = rng.uniform(0.1, 2.0)
            dx = rng.uniform(0.05, 0.5)
            u = rng.random(m)
            worst = max(worst, float(np.max(np.abs(
                discrete_solve(u, sigma, dx) - dense_oracle(u, sigma, dx)))))
        assert worst < 1e-12

    def test_maximum_principle(self, rng):
        for _ in range(20):
            u = rng.random(200)
            p = discrete_solve(u, rng.uniform(0.2, 2.0), 0.1)
            assert np.min(p) >= -1e-12
            assert np.max(p) <= 1.0 + 1e-12

    def test_ones_fixed_point(self, rng):
        for _ in range(5):
            sigma = rng.uniform(0.1, 3.0)
            dx = rng.uniform(0.02, 0.5)
            p = discrete_solve(np.ones(77), sigma, dx)
            assert np.max(np.abs(p - 1.0)) < 1e-12

    def test_linearity(self, rng):
        u1, u2 = rng.random(60), rng.random(60)
        a, b = 2.0, -0.4
        lhs = discrete_solve(a * u1 + b * u2, 0.8, 0.1)
        rhs = a * discrete_solve(u1, 0.8, 0.1) + b * discrete_solve(u2, 0.8, 0.1)
        assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_input_validation(self):
        with pytest.raises(ValueError):
            discrete_solve(np.ones(1), 1.0, 0.1)
        with pytest.raises(ValueError):
            discrete_solve(np.ones(5), 1.0, 0.0)


class TestSelfConvergence:
    def test_interior_order_two(self):
        # Gaussian source, both solvers on nested grids; boundary layers are
        # exponentially small in the interior window.
        errs = []
        for dx in (0.1, 0.05, 0.025):
            g = Grid1D.symmetric(12.0, dx)
            x = g.centers
            u = np.exp(-0.5 * x * x)
            pg = green_convolve(Profile(g, u, np.zeros(g.m)), 1.0, tails=(0.0, 0.0)).p
            pd = discrete_solve(u, 1.0, dx)
            keep = np.abs(x) <= 6.0
            errs.append(float(np.max(np.abs(pg[keep] - pd[keep]))))
        orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        assert np.all(orders > 1.8)
        assert np.all(orders < 2.2)


class TestFluxVelocity:
    def test_constant_pressure(self):
        assert np.max(np.abs(flux_velocity(np.full(50, 2.0), 0.1))) == 0.0

    def test_two_cell_difference(self):
        v = flux_velocity(np.array([0.0, 1.0]), 1.0)
        assert v.tolist() == [0.0, -1.0, 0.0]

    def test_increasing_pressure_pushes_left(self):
        v = flux_velocity(np.linspace(0.0, 1.0, 30), 0.05)
        assert v[0] == 0.0 and v[-1] == 0.0
        assert np.all(v[1:-1] < 0.0)

    def test_length(self):
        assert flux_velocity(np.zeros(33), 0.1).shape == (34,)
