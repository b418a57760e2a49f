"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``.  The figure runs are
cached at module level and shared between the front-speed, ordering,
healing and pressure-bound criteria.
"""

import functools
import math
import time

import numpy as np

from kswave.analysis import fit_speed, healing_time, mass, track_front
from kswave.cli import PRESETS, ic_function
from kswave.core import Grid1D, ModelParams, SimState, WaveParams, normalize
from kswave.elliptic import discrete_solve, green_convolve
from kswave.pde import SchemeConfig, simulate, step
from kswave.wave import (
    apply_T,
    c_star,
    chi_bar,
    sharp_speed_bracket,
    solve_profile,
    speed_ordering_check,
)
from kswave.core import Profile, admissible_profile

from conftest import random_admissible


def _report(number, ok, detail, elapsed, limit):
    status = "PASS" if ok else "FAIL"
    print(f"\ncriterion {number:2d} [{status}] {detail} ({elapsed:.2f} s, limit {limit:g} s)")
    assert ok, f"criterion {number}: {detail}"
    assert elapsed < limit, f"criterion {number} exceeded its runtime budget"


@functools.cache
def _preset_snapshots(name, snapshot_dt):
    p = PRESETS[name]
    dx = p.get("grid.dx", 0.05)
    k = p["ic.K"]
    grid = Grid1D(-k, k, round(2.0 * k / dx))
    u0 = ic_function(p["ic.name"], p["ic.beta"], k)(grid.centers)
    model = ModelParams(chi=p.get("model.chi", 1.0), sigma=p.get("model.sigma", 1.0),
                        growth=p.get("model.growth", 1.0))
    cfg = SchemeConfig(growth=model.growth)
    t_end = p.get("sim.t_end", 20.0)
    n = round(t_end / snapshot_dt)
    times = [float(t) for t in np.linspace(0.0, t_end, n + 1)]
    return simulate(u0, grid, normalize(model), cfg, t_end, snapshot_times=times), model


def test_criterion_1_formula_suite():
    t0 = time.perf_counter()
    ok = abs(c_star(1.0, 1.0) - 2.0 * math.sqrt(2.0)) < 1e-12
    lo, hi = sharp_speed_bracket(1.0, 1.0)
    ok &= abs(lo - 1.0 / 3.0) < 1e-12 and abs(hi - 0.5) < 1e-12
    rng = np.random.default_rng(7)
    for _ in range(100):
        speed_ordering_check(rng.uniform(1e-3, 10.0), rng.uniform(1e-3, 10.0))
    root = chi_bar()
    residual = abs(
        math.log((2.0 - root) / root)
        + (2.0 / (2.0 + root)) * (0.5 * root * math.log(0.5 * root) + 1.0 - 0.5 * root)
    )
    ok &= residual < 1e-10
    elapsed = time.perf_counter() - t0
    _report(1, ok, f"formulas: c_star/bracket exact, ordering sweep ok, "
                   f"chi_bar={root:.12f} residual={residual:.1e}", elapsed, 1.0)


def test_criterion_2_elliptic_oracle_and_convergence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(40):
        m = int(rng.integers(2, 51))
        sigma = rng.uniform(0.1, 2.0)
        dx = rng.uniform(0.05, 0.5)
        r = (sigma / dx) ** 2
        a = np.diag(-2.0 * np.ones(m)) + np.diag(np.ones(m - 1), 1) + np.diag(np.ones(m - 1), -1)
        a[0, 0] = a[m - 1, m - 1] = -1.0
        u = rng.random(m)
        ref = np.linalg.solve(np.eye(m) - r * a, u)
        worst = max(worst, float(np.max(np.abs(discrete_solve(u, sigma, dx) - ref))))
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
    ok = worst < 1e-12 and bool(np.all((orders > 1.8) & (orders < 2.2)))
    elapsed = time.perf_counter() - t0
    _report(2, ok, f"oracle max diff={worst:.2e}, self-convergence orders={np.round(orders, 3)}",
            elapsed, 5.0)


def test_criterion_3_operator_invariance():
    t0 = time.perf_counter()
    wp = WaveParams(c=2.0 * math.sqrt(2.0), u0=0.2, eta=0.5)
    grid = Grid1D.symmetric(30.0, 0.05)
    rng = np.random.default_rng(13)
    bound = wp.c / 2.0
    anchor = grid.anchor_index()
    ok = True
    worst_anchor = 0.0
    for _ in range(200):
        v = apply_T(random_admissible(rng, grid, wp.c, 1.0), wp, 1.0, 1.0)
        ok &= bool(np.all(v.u > 0.0)) and float(np.max(v.u)) <= 1.0 + 1e-12
        ok &= float(np.min(v.du)) >= 0.0 and float(np.max(v.du)) <= bound + 1e-12
        ok &= float(np.min(np.diff(v.u))) >= -1e-12
        worst_anchor = max(worst_anchor, abs(float(v.u[anchor]) - wp.u0))
    ok = ok and worst_anchor < 1e-14
    elapsed = time.perf_counter() - t0
    _report(3, bool(ok), f"200 profiles invariant, worst anchor error={worst_anchor:.1e}",
            elapsed, 30.0)


def test_criterion_4_constant_coefficient_closed_form():
    t0 = time.perf_counter()
    wp = WaveParams(c=2.0 * math.sqrt(2.0), u0=0.2, eta=0.5)
    g = Grid1D.symmetric(30.0, 0.01)
    u = admissible_profile(g, np.ones(g.m), np.zeros(g.m), wp.c, 1.0)
    v = apply_T(u, wp, 1.0, 1.0, tails=(1.0, 1.0))
    ex = np.exp((2.0 / wp.c) * g.centers)
    closed = wp.u0 * ex / (1.0 + wp.u0 * (ex - 1.0))
    err = float(np.max(np.abs(v.u - closed)))
    elapsed = time.perf_counter() - t0
    _report(4, err < 1e-8, f"logistic closed form max err={err:.2e} at dx=0.01", elapsed, 1.0)


def test_criterion_5_fixed_point_wave():
    t0 = time.perf_counter()
    wp = WaveParams(c=2.0 * math.sqrt(2.0), u0=0.2, eta=0.5)
    grid = Grid1D.symmetric(60.0, 0.05)
    prof, _, rep = solve_profile(wp, 1.0, 1.0, grid, tol=1e-10, max_iter=500)
    ok = rep.converged and rep.final_distance < 1e-10
    ok &= rep.ode_residual < 1e-3
    ok &= rep.tail_left < 1e-3 and rep.tail_right < 1e-3
    elapsed = time.perf_counter() - t0
    _report(5, bool(ok),
            f"converged in {rep.iterations} its, gap={rep.final_distance:.1e}, "
            f"residual={rep.ode_residual:.1e}, tails=({rep.tail_left:.1e},{rep.tail_right:.1e})",
            elapsed, 120.0)


def test_criterion_6_mass_conservation():
    t0 = time.perf_counter()
    grid = Grid1D(-10.0, 10.0, 200)
    params = normalize(ModelParams(1.0, 1.0, 1.0, 1.0))
    cfg = SchemeConfig(reaction_on=False)
    rng = np.random.default_rng(17)
    state = SimState(0.0, grid, rng.random(grid.m))
    m0 = mass(state)
    previous = m0
    worst_step = 0.0
    for _ in range(10_000):
        state = step(state, params, cfg, dt=0.01)
        current = mass(state)
        worst_step = max(worst_step, abs(current - previous) / m0)
        previous = current
    total = abs(previous - m0) / m0
    ok = worst_step < 1e-12 and total < 1e-8
    elapsed = time.perf_counter() - t0
    _report(6, ok, f"mass drift per step={worst_step:.1e}, over 1e4 steps={total:.1e}",
            elapsed, 30.0)


def test_criterion_7_constant_speed_front():
    t0 = time.perf_counter()
    snapshots, _ = _preset_snapshots("fig4", 0.5)
    track = track_front(snapshots, level=0.5)
    full = fit_speed(track, window=(5.0, 20.0))
    first = fit_speed(track, window=(5.0, 12.5))
    second = fit_speed(track, window=(12.5, 20.0))
    rel = abs(first.speed - second.speed) / full.speed
    ok = full.r_squared > 0.999 and rel < 0.02
    elapsed = time.perf_counter() - t0
    _report(7, ok, f"fig4 speed={full.speed:.4f}, r2={full.r_squared:.6f}, "
                   f"half-window spread={100 * rel:.2f}%", elapsed, 120.0)


def test_criterion_8_sharp_slower_than_continuous():
    t0 = time.perf_counter()
    fig4, _ = _preset_snapshots("fig4", 0.5)
    fig6, _ = _preset_snapshots("fig6", 0.5)
    s4 = fit_speed(track_front(fig4, 0.5), window=(5.0, 20.0)).speed
    s6 = fit_speed(track_front(fig6, 0.5), window=(5.0, 20.0)).speed
    elapsed = time.perf_counter() - t0
    _report(8, s6 < s4, f"ramp front {s6:.4f} < exponential-tail front {s4:.4f}",
            elapsed, 240.0)


def test_criterion_9_wound_healing_anchors():
    t0 = time.perf_counter()
    fig10, _ = _preset_snapshots("fig10", 0.1)
    fig12, _ = _preset_snapshots("fig12", 0.1)
    t10 = healing_time(fig10, 0.95)
    t12 = healing_time(fig12, 0.95)
    ok = t10 is not None and t12 is not None
    if ok:
        ok = abs(t10 - 2.0) <= 1.0 and abs(t12 - 5.0) <= 1.0 and t10 < t12
    elapsed = time.perf_counter() - t0
    _report(9, bool(ok), f"healing: imperfect wound {t10} days, perfect wound {t12} days",
            elapsed, 240.0)


def test_criterion_10_pressure_bounds_on_snapshots():
    t0 = time.perf_counter()
    checked = 0
    worst_lo, worst_hi = 0.0, 0.0
    for name, dt in (("fig4", 0.5), ("fig6", 0.5), ("fig10", 0.1), ("fig12", 0.1)):
        snapshots, model = _preset_snapshots(name, dt)
        for snap in snapshots:
            if float(np.min(snap.u)) < 0.0 or float(np.max(snap.u)) > 1.0 + 1e-10:
                continue
            p = discrete_solve(snap.u, model.sigma, snap.grid.dx)
            worst_lo = min(worst_lo, float(np.min(p)))
            worst_hi = max(worst_hi, float(np.max(p)) - 1.0)
            checked += 1
    ok = checked > 0 and worst_lo >= -1e-12 and worst_hi <= 1e-12
    elapsed = time.perf_counter() - t0
    _report(10, ok, f"{checked} snapshots: min p={worst_lo:.1e}, max excess={worst_hi:.1e}",
            elapsed, 240.0)
