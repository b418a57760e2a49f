"""Post-processing: front tracking, speed fits, healing time, mass audit and
comparison of measured speeds against the closed-form thresholds."""

from dataclasses import dataclass

import numpy as np

from .core import NormalizedParams, SimState
from .wave import c_star, sharp_speed_bracket

RIGHTWARD = "rightward"
LEFTWARD = "leftward"


@dataclass(frozen=True)
class FrontTrack:
    """Level-crossing positions of a moving front, one per snapshot."""

    times: np.ndarray
    positions: np.ndarray
    level: float

    def __post_init__(self):
        t = np.asarray(self.times, dtype=np.float64)
        if np.any(np.diff(t) <= 0.0):
            raise ValueError("sample times must be strictly increasing")


@dataclass(frozen=True)
class SpeedFit:
    """Least-squares line through (t, position) samples."""

    speed: float
    intercept: float
    r_squared: float
    window: tuple[float, float]


@dataclass(frozen=True)
class SpeedReport:
    """Measured front speed alongside the closed-form thresholds."""

    measured: float
    c_star: float
    sharp_lo: float
    sharp_hi: float
    consistent_continuous: bool
    anomalous_below_sharp: bool


def _crossing(u, x, level, direction):
    above = u >= level
    if not above.any():
        raise ValueError("no crossing: density everywhere below the level")
    flips = np.flatnonzero(above[:-1] != above[1:])
    if len(flips) > 1 and flips.max() - flips.min() > 2:
        raise ValueError("ambiguous crossing: multiple fronts beyond one-cell noise")
    if direction == RIGHTWARD:
        i = int(np.flatnonzero(above)[-1])
        if i == len(u) - 1:
            raise ValueError("no crossing: front at or beyond the right boundary")
        j = i + 1
    elif direction == LEFTWARD:
        i = int(np.flatnonzero(above)[0])
        if i == 0:
            raise ValueError("no crossing: front at or beyond the left boundary")
        j = i - 1
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return x[i] + (x[j] - x[i]) * (u[i] - level) / (u[i] - u[j])


def track_front(snapshots, level: float = 0.5, direction: str = RIGHTWARD) -> FrontTrack:
    """Locate the level crossing of each snapshot, scanning from the stated
    side; the position interpolates linearly between the bracketing cells."""
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")
    times = np.array([s.t for s in snapshots])
    positions = np.array(
        [_crossing(s.u, s.grid.centers, level, direction) for s in snapshots]
    )
    return FrontTrack(times=times, positions=positions, level=level)


def fit_speed(track: FrontTrack, window: tuple[float, float] | None = None) -> SpeedFit:
    """Fit position = speed * t + intercept over the window.

    The default window is the last 75% of the track, skipping the initial
    transient.  At least three samples are required.
    """
    t = np.asarray(track.times)
    if window is None:
        window = (t[0] + 0.25 * (t[-1] - t[0]), t[-1])
    keep = (t >= window[0]) & (t <= window[1])
    if int(keep.sum()) < 3:
        raise ValueError("need at least three samples inside the window")
    ts = t[keep]
    xs = np.asarray(track.positions)[keep]
    speed, intercept = np.polyfit(ts, xs, 1)
    residuals = xs - (speed * ts + intercept)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((xs - xs.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return SpeedFit(speed=float(speed), intercept=float(intercept),
                    r_squared=r_squared, window=(float(window[0]), float(window[1])))


def healing_time(snapshots, threshold: float = 0.95) -> float | None:
    """First snapshot time at which min_x u >= threshold; None if the run
    never heals.  Snapshots should be at most ~0.1 days apart for a
    meaningful reading."""
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie in (0, 1)")
    for s in snapshots:
        if float(np.min(s.u)) >= threshold:
            return float(s.t)
    return None


def mass(state: SimState) -> float:
    """Total mass: sum of cell averages times dx."""
    return float(np.sum(state.u) * state.grid.dx)


def speed_report(measured: SpeedFit, params: NormalizedParams) -> SpeedReport:
    """Bundle a measured speed with the closed-form thresholds.

    A measured speed at or above the continuous-wave threshold is flagged
    consistent with the continuous regime; one below the sharp-wave lower
    bound is flagged anomalous.
    """
    cs = c_star(params.chi, params.sigma)
    lo, hi = sharp_speed_bracket(params.chi, params.sigma)
    return SpeedReport(
        measured=measured.speed,
        c_star=cs,
        sharp_lo=lo,
        sharp_hi=hi,
        consistent_continuous=measured.speed >= cs - 1e-9 * max(1.0, cs),
        anomalous_below_sharp=measured.speed < lo,
    )
