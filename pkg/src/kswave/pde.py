"""Explicit upwind finite-volume solver for the repulsion-growth system.

Each step solves the discrete pressure system, forms face velocities
v = -dp/dx (zero at the boundary faces, so mass is conserved exactly when
the reaction is off), upwinds the transport flux and applies the logistic
reaction:

    u_i <- u_i - chi (dt/dx) (phi_{i+1/2} - phi_{i-1/2}) + dt g u_i (1 - u_i)

The density is normalized by the carrying capacity; ``SchemeConfig.growth``
carries the reaction rate g so scenarios stated in raw time units run
unchanged.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import Grid1D, NormalizedParams, SimState
from .elliptic import discrete_solve, flux_velocity


@dataclass(frozen=True)
class SchemeConfig:
    """Time-stepping knobs: Courant factor, dt cap, reaction switch and rate."""

    cfl: float = 0.4
    dt_max: float = 0.05
    reaction_on: bool = True
    growth: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.cfl < 1.0:
            raise ValueError("cfl must lie in (0, 1)")
        if not self.dt_max > 0.0:
            raise ValueError("dt_max must be positive")
        if self.growth < 0.0:
            raise ValueError("growth rate must be nonnegative")


def upwind_flux(v, u_left, u_right):
    """First-order upwind flux: v*u_left for v >= 0, v*u_right otherwise."""
    return np.where(np.asarray(v) >= 0.0, v * np.asarray(u_left), v * np.asarray(u_right))[()]


def stable_dt(v, dx: float, chi: float, cfg: SchemeConfig) -> float:
    """Largest admitted step: cfl * min(dx/(chi max|v|), 1/growth), capped by
    dt_max.  The advective bound keeps the update a nonnegative combination;
    the reaction bound keeps explicit logistic growth nonexpansive."""
    dt = cfg.dt_max
    vmax = float(np.max(np.abs(v)))
    if vmax > 0.0:
        dt = min(dt, cfg.cfl * dx / (chi * vmax))
    if cfg.reaction_on and cfg.growth > 0.0:
        dt = min(dt, cfg.cfl / cfg.growth)
    return dt


def step(state: SimState, params: NormalizedParams, cfg: SchemeConfig,
         dt: float | None = None) -> SimState:
    """Advance one explicit step; ``dt=None`` takes the stability bound.

    A requested dt above the stability bound is rejected.  Negative output
    beyond rounding level (-1e-14) indicates a scheme bug and is an error;
    rounding-level negatives are clamped by the state constructor.
    """
    dx = state.grid.dx
    p = discrete_solve(state.u, params.sigma, dx)
    v = flux_velocity(p, dx)
    bound = stable_dt(v, dx, params.chi, cfg)
    if dt is None:
        dt = bound
    elif dt > bound * (1.0 + 1e-12):
        raise ValueError(f"dt={dt} exceeds the stability bound {bound}")
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    growth_dt = dt * cfg.growth if cfg.reaction_on else 0.0
    un = kernels.upwind_update(state.u, v, params.chi * dt / dx, growth_dt)
    low = float(np.min(un))
    if low < -1e-14:
        raise RuntimeError(f"scheme produced negative density {low:.3e}")
    return SimState(t=state.t + dt, grid=state.grid, u=un)


def simulate(u0, grid: Grid1D, params: NormalizedParams, cfg: SchemeConfig,
             t_end: float, snapshot_times=None) -> list[SimState]:
    """March from t=0 to t_end and return states at the requested times.

    Steps are shortened to land on each snapshot time exactly, so no
    temporal interpolation is involved.  ``snapshot_times=None`` records
    only the final state; t_end = 0 returns the initial data.
    """
    if t_end < 0.0:
        raise ValueError("t_end must be nonnegative")
    state = SimState(t=0.0, grid=grid, u=u0)
    if snapshot_times is None:
        times = [float(t_end)]
    else:
        times = [float(t) for t in snapshot_times]
        if any(t < 0.0 or t > t_end for t in times):
            raise ValueError("snapshot times must lie in [0, t_end]")
        if sorted(set(times)) != times:
            raise ValueError("snapshot times must be strictly increasing")

    dx = grid.dx
    out: list[SimState] = []
    pending = list(times)
    while pending and pending[0] <= 0.0:
        out.append(state)
        pending.pop(0)
    while pending:
        target = pending[0]
        while state.t < target:
            # One pressure solve serves both the stability bound and the flux.
            p = discrete_solve(state.u, params.sigma, dx)
            v = flux_velocity(p, dx)
            bound = stable_dt(v, dx, params.chi, cfg)
            remaining = target - state.t
            if remaining <= bound:
                dt, t_new = remaining, target  # land on the snapshot exactly
            else:
                dt, t_new = bound, state.t + bound
            growth_dt = dt * cfg.growth if cfg.reaction_on else 0.0
            un = kernels.upwind_update(state.u, v, params.chi * dt / dx, growth_dt)
            low = float(np.min(un))
            if low < -1e-14:
                raise RuntimeError(f"scheme produced negative density {low:.3e}")
            state = SimState(t=t_new, grid=grid, u=un)
        out.append(state)
        pending.pop(0)
    return out
