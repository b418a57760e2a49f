"""Scenario runner: named reproductions of the simulation figures, wave
profile solves, speed tables and parameter sweeps, all emitting flat CSV.

Configs are one ``key = value`` per line with dotted keys (``model.chi = 4``);
presets fill the same keys.  Outputs are deterministic: the same config
produces bit-identical files.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analysis import fit_speed, healing_time, mass, track_front
from .core import Grid1D, ModelParams, WaveParams, default_eta, normalize
from .elliptic import discrete_solve
from .pde import SchemeConfig, simulate
from .wave import c_star, export_wave, reflect_pressure, sharp_speed_bracket, solve_profile

IC_NAMES = ("exp-tail", "ramp", "wound-imperfect", "wound-perfect", "custom-csv")

PRESETS = {
    # Single-front runs, all model constants equal to one.
    "fig3": {"kind": "pde-sim", "ic.name": "exp-tail", "ic.beta": 1.0, "ic.K": 20.0,
             "sim.snapshot_dt": 20.0, "sim.summary": "mass"},
    "fig4": {"kind": "pde-sim", "ic.name": "exp-tail", "ic.beta": 1.0, "ic.K": 20.0,
             "sim.snapshot_dt": 1.0, "sim.summary": "speed"},
    "fig5": {"kind": "pde-sim", "ic.name": "ramp", "ic.beta": 0.1, "ic.K": 20.0,
             "sim.snapshot_dt": 20.0, "sim.summary": "mass"},
    "fig6": {"kind": "pde-sim", "ic.name": "ramp", "ic.beta": 0.1, "ic.K": 20.0,
             "sim.snapshot_dt": 1.0, "sim.summary": "speed"},
    # Wound-healing runs: chi and growth both 4, raw time units.  The finer
    # grid keeps the healing-time reading resolution-converged.
    "fig9": {"kind": "pde-sim", "ic.name": "wound-imperfect", "ic.beta": 0.5, "ic.K": 20.0,
             "model.chi": 4.0, "model.growth": 4.0, "sim.t_end": 7.0, "grid.dx": 0.025,
             "sim.snapshot_dt": 7.0, "sim.summary": "mass"},
    "fig10": {"kind": "pde-sim", "ic.name": "wound-imperfect", "ic.beta": 0.5, "ic.K": 20.0,
              "model.chi": 4.0, "model.growth": 4.0, "sim.t_end": 7.0, "grid.dx": 0.025,
              "sim.snapshot_dt": 0.1, "sim.summary": "healing"},
    "fig11": {"kind": "pde-sim", "ic.name": "wound-perfect", "ic.beta": 0.07, "ic.K": 20.0,
              "model.chi": 4.0, "model.growth": 4.0, "sim.t_end": 7.0, "grid.dx": 0.025,
              "sim.snapshot_dt": 7.0, "sim.summary": "mass"},
    "fig12": {"kind": "pde-sim", "ic.name": "wound-perfect", "ic.beta": 0.07, "ic.K": 20.0,
              "model.chi": 4.0, "model.growth": 4.0, "sim.t_end": 7.0, "grid.dx": 0.025,
              "sim.snapshot_dt": 0.1, "sim.summary": "healing"},
}


def ic_function(name: str, beta: float, k: float):
    """Initial-distribution formula by name, as a callable of x."""
    if name not in IC_NAMES:
        raise ValueError(f"unknown initial condition {name!r}; choose from {IC_NAMES}")
    if name == "custom-csv":
        raise ValueError("custom-csv data comes from ic.path, not a formula")
    if not beta > 0.0:
        raise ValueError("ic beta must be positive")
    if not k > 0.0:
        raise ValueError("ic K must be positive")

    def exp_tail(x):
        z = np.exp(-beta * (x + k))
        return 2.0 * z / (1.0 + z)

    def exp_tail_mirror(x):
        z = np.exp(-beta * (k - x))
        return 2.0 * z / (1.0 + z)

    def ramp(x):
        return np.maximum(1.0 - beta * (x + k), 0.0)

    def ramp_mirror(x):
        return np.maximum(1.0 - beta * (k - x), 0.0)

    if name == "exp-tail":
        return exp_tail
    if name == "ramp":
        return ramp
    if name == "wound-imperfect":
        return lambda x: 0.5 * exp_tail(x) + 0.5 * exp_tail_mirror(x)
    return lambda x: 0.5 * ramp(x) + 0.5 * ramp_mirror(x)


def build_ic(name: str, beta: float, k: float, grid: Grid1D, path: str | None = None):
    """Sample the named initial distribution at the cell centers."""
    if name == "custom-csv":
        if not path:
            raise ValueError("custom-csv needs ic.path")
        data = np.loadtxt(path, delimiter=",", skiprows=1)
        return np.interp(grid.centers, data[:, 0], data[:, 1])
    return ic_function(name, beta, k)(grid.centers)


@dataclass
class ScenarioConfig:
    """Resolved scenario: model constants, initial data, grids and knobs."""

    kind: str
    name: str = "scenario"
    model: ModelParams = field(default_factory=lambda: ModelParams(1.0, 1.0, 1.0, 1.0))
    ic_name: str = "exp-tail"
    beta: float = 1.0
    K: float = 20.0
    ic_path: str | None = None
    dx: float = 0.05
    t_end: float = 20.0
    snapshot_dt: float = 1.0
    cfl: float = 0.4
    dt_max: float = 0.05
    summary: str = "mass"
    wave_c: float | None = None
    wave_u0: float = 0.2
    wave_eta: float | None = None
    wave_half_width: float = 60.0
    wave_tol: float = 1e-10
    wave_max_iter: int = 500
    speeds_chi: tuple = (1.0,)
    speeds_sigma: tuple = (1.0,)
    speeds_measured: float | None = None

    @classmethod
    def from_dict(cls, d: dict, name: str = "scenario") -> "ScenarioConfig":
        d = dict(d)
        kind = d.pop("kind", None)
        if kind not in ("pde-sim", "wave-solve", "speed-table"):
            raise ValueError(f"kind must be pde-sim, wave-solve or speed-table, got {kind!r}")
        model = ModelParams(
            chi=float(d.pop("model.chi", 1.0)),
            sigma=float(d.pop("model.sigma", 1.0)),
            growth=float(d.pop("model.growth", 1.0)),
            capacity=float(d.pop("model.capacity", 1.0)),
        )
        cfg = cls(
            kind=kind,
            name=name,
            model=model,
            ic_name=str(d.pop("ic.name", "exp-tail")),
            beta=float(d.pop("ic.beta", 1.0)),
            K=float(d.pop("ic.K", 20.0)),
            ic_path=d.pop("ic.path", None),
            dx=float(d.pop("grid.dx", 0.05)),
            t_end=float(d.pop("sim.t_end", 20.0)),
            snapshot_dt=float(d.pop("sim.snapshot_dt", 1.0)),
            cfl=float(d.pop("sim.cfl", 0.4)),
            dt_max=float(d.pop("sim.dt_max", 0.05)),
            summary=str(d.pop("sim.summary", "mass")),
            wave_c=(None if "wave.c" not in d else float(d.pop("wave.c"))),
            wave_u0=float(d.pop("wave.u0", 0.2)),
            wave_eta=(None if "wave.eta" not in d else float(d.pop("wave.eta"))),
            wave_half_width=float(d.pop("wave.half_width", 60.0)),
            wave_tol=float(d.pop("wave.tol", 1e-10)),
            wave_max_iter=int(d.pop("wave.max_iter", 500)),
            speeds_chi=_as_tuple(d.pop("speeds.chi", (1.0,))),
            speeds_sigma=_as_tuple(d.pop("speeds.sigma", (1.0,))),
            speeds_measured=(None if "speeds.measured" not in d
                             else float(d.pop("speeds.measured"))),
        )
        if d:
            raise ValueError(f"unknown config keys: {sorted(d)}")
        if cfg.ic_name not in IC_NAMES:
            raise ValueError(f"unknown initial condition {cfg.ic_name!r}")
        if cfg.summary not in ("mass", "speed", "healing"):
            raise ValueError(f"unknown summary kind {cfg.summary!r}")
        return cfg


def _as_tuple(v):
    if isinstance(v, (tuple, list)):
        return tuple(float(x) for x in v)
    return (float(v),)


def parse_config(text: str) -> dict:
    """Parse ``key = value`` lines (# comments allowed) into a flat dict."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = _parse_value(value)
    return out


def _parse_value(s: str):
    if "," in s:
        return tuple(_parse_value(p.strip()) for p in s.split(","))
    low = s.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def _fmt(x) -> str:
    return repr(float(x))


def _write_csv(path, header, columns, created):
    with open(path, "w") as f:
        f.write(header + "\n")
        for row in zip(*columns):
            f.write(",".join(_fmt(v) for v in row) + "\n")
    created.append(path)


def _run_pde(cfg: ScenarioConfig, out_dir: str, created: list) -> str:
    grid = Grid1D(x_min=-cfg.K, x_max=cfg.K, m=round(2.0 * cfg.K / cfg.dx))
    u0 = build_ic(cfg.ic_name, cfg.beta, cfg.K, grid, cfg.ic_path) / cfg.model.capacity
    params = normalize(cfg.model)
    scheme = SchemeConfig(cfl=cfg.cfl, dt_max=cfg.dt_max, reaction_on=True,
                          growth=cfg.model.growth)
    n = max(1, round(cfg.t_end / cfg.snapshot_dt)) if cfg.t_end > 0.0 else 0
    times = [float(t) for t in np.linspace(0.0, cfg.t_end, n + 1)]
    snapshots = simulate(u0, grid, params, scheme, cfg.t_end, snapshot_times=times)

    for snap in snapshots:
        p = discrete_solve(snap.u, params.sigma, grid.dx)
        path = os.path.join(out_dir, f"snapshot_t{snap.t:g}.csv")
        _write_csv(path, "x,u,p",
                   (grid.centers, snap.u * cfg.model.capacity, p * cfg.model.capacity),
                   created)

    if cfg.summary == "speed":
        fit = fit_speed(track_front(snapshots, level=0.5))
        return (f"{cfg.name}: front_speed={fit.speed:.6f} r_squared={fit.r_squared:.6f} "
                f"window=[{fit.window[0]:g},{fit.window[1]:g}] snapshots={len(snapshots)}")
    if cfg.summary == "healing":
        t_heal = healing_time(snapshots, threshold=0.95)
        shown = "not-healed" if t_heal is None else f"{t_heal:.2f}"
        return f"{cfg.name}: healing_time={shown} threshold=0.95 snapshots={len(snapshots)}"
    return f"{cfg.name}: final_mass={mass(snapshots[-1]):.6f} snapshots={len(snapshots)}"


def _run_wave(cfg: ScenarioConfig, out_dir: str, created: list) -> str:
    params = normalize(cfg.model)
    c = cfg.wave_c if cfg.wave_c is not None else c_star(params.chi, params.sigma)
    eta = cfg.wave_eta if cfg.wave_eta is not None else default_eta(params.sigma)
    wp = WaveParams(c=c, u0=cfg.wave_u0, eta=eta)
    grid = Grid1D.symmetric(cfg.wave_half_width, cfg.dx)
    profile, pressure, report = solve_profile(
        wp, params.chi, params.sigma, grid, tol=cfg.wave_tol, max_iter=cfg.wave_max_iter
    )
    exported = export_wave(profile)
    p_exported = reflect_pressure(pressure)
    _write_csv(os.path.join(out_dir, "profile.csv"), "x,U,dU,P,dP",
               (exported.grid.centers, exported.u, exported.du,
                p_exported.p, p_exported.dp), created)
    return (f"{cfg.name}: converged={report.converged} iterations={report.iterations} "
            f"distance={report.final_distance:.3e} residual={report.ode_residual:.3e} "
            f"tails=({report.tail_left:.2e},{report.tail_right:.2e})")


def _run_speeds(cfg: ScenarioConfig, out_dir: str, created: list) -> str:
    rows = []
    for chi in cfg.speeds_chi:
        for sigma in cfg.speeds_sigma:
            lo, hi = sharp_speed_bracket(chi, sigma)
            measured = "" if cfg.speeds_measured is None else _fmt(cfg.speeds_measured)
            rows.append((_fmt(chi), _fmt(sigma), _fmt(c_star(chi, sigma)),
                         _fmt(lo), _fmt(hi), measured))
    path = os.path.join(out_dir, "speeds.csv")
    with open(path, "w") as f:
        f.write("chi,sigma,c_star,sharp_lo,sharp_hi,measured\n")
        for row in rows:
            f.write(",".join(row) + "\n")
    created.append(path)
    return f"{cfg.name}: wrote {len(rows)} speed rows"


def _write_gnuplot(cfg: ScenarioConfig, out_dir: str, created: list) -> None:
    path = os.path.join(out_dir, "plot.gp")
    with open(path, "w") as f:
        f.write("set xlabel 'x'\nset ylabel 'u'\nset key off\n")
        if cfg.kind == "pde-sim":
            f.write("plot for [file in system('ls snapshot_t*.csv')] "
                    "file using 1:2 with lines\n")
        elif cfg.kind == "wave-solve":
            f.write("plot 'profile.csv' using 1:2 with lines\n")
    created.append(path)


def run(config: ScenarioConfig, out_dir: str, gnuplot: bool = False) -> str:
    """Execute one scenario, writing CSV outputs into ``out_dir``.

    Partial outputs are removed if the scenario fails.  Returns the one-line
    summary (also printed by the command-line entry point).
    """
    os.makedirs(out_dir, exist_ok=True)
    created: list[str] = []
    try:
        if config.kind == "pde-sim":
            summary = _run_pde(config, out_dir, created)
        elif config.kind == "wave-solve":
            summary = _run_wave(config, out_dir, created)
        else:
            summary = _run_speeds(config, out_dir, created)
        if gnuplot:
            _write_gnuplot(config, out_dir, created)
    except BaseException:
        for path in created:
            try:
                os.remove(path)
            except OSError:
                pass
        raise
    return summary


def _scenario_data(args, default_kind: str) -> tuple[dict, str]:
    data: dict = {}
    name = default_kind
    if args.preset:
        if args.preset not in PRESETS:
            raise ValueError(f"unknown preset {args.preset!r}; choose from {sorted(PRESETS)}")
        data.update(PRESETS[args.preset])
        name = args.preset
    if args.config:
        with open(args.config) as f:
            data.update(parse_config(f.read()))
        name = os.path.splitext(os.path.basename(args.config))[0]
    data.setdefault("kind", default_kind)
    if args.dx is not None:
        data["grid.dx"] = args.dx
    if args.cfl is not None:
        data["sim.cfl"] = args.cfl
    if args.tol is not None:
        data["wave.tol"] = args.tol
    for extra in args.set or []:
        key, sep, value = extra.partition("=")
        if not sep:
            raise ValueError(f"--set expects key=value, got {extra!r}")
        data[key.strip()] = _parse_value(value.strip())
    return data, name


def _sweep_worker(payload):
    data, name, out_dir = payload
    cfg = ScenarioConfig.from_dict(data, name=name)
    return run(cfg, out_dir)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="kswave",
                                     description="Wave profiles and simulations of the "
                                                 "cell-cell repulsion model")
    sub = parser.add_subparsers(dest="command", required=True)
    for command, kind in (("simulate", "pde-sim"), ("wave", "wave-solve"),
                          ("speeds", "speed-table"), ("sweep", "pde-sim")):
        p = sub.add_parser(command)
        p.add_argument("--config", help="path to a key = value config file")
        p.add_argument("--preset", help="named scenario, e.g. fig4")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--dx", type=float, help="grid spacing override")
        p.add_argument("--cfl", type=float, help="Courant factor override")
        p.add_argument("--tol", type=float, help="fixed-point tolerance override")
        p.add_argument("--gnuplot", action="store_true", help="emit a plot.gp script")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="set any config key, repeatable")
        p.set_defaults(kind=kind)
    sweep = sub.choices["sweep"]
    sweep.add_argument("--param", required=True, help="config key to sweep, e.g. model.chi")
    sweep.add_argument("--values", required=True, help="comma-separated values")
    sweep.add_argument("--workers", type=int, default=2)

    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            base_data, base_name = _scenario_data(args, args.kind)
            ScenarioConfig.from_dict(dict(base_data), name=base_name)  # validate early
            jobs = []
            for v in (v.strip() for v in args.values.split(",")):
                data = dict(base_data)
                data[args.param] = _parse_value(v)
                tag = f"{base_name}_{args.param.replace('.', '_')}_{v}"
                jobs.append((data, tag, os.path.join(args.out, tag)))
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                for summary in pool.map(_sweep_worker, jobs):
                    print(summary)
        else:
            data, name = _scenario_data(args, args.kind)
            cfg = ScenarioConfig.from_dict(data, name=name)
            print(run(cfg, args.out, gnuplot=args.gnuplot))
    except Exception as exc:  # surfaced as a machine-readable line
        print(json.dumps({"error": str(exc), "scenario": getattr(args, "preset", None)
                          or getattr(args, "config", None) or args.command}),
              file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
