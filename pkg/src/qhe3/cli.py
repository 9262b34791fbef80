"""Command-line front end.

One JSON config describes a working point (reduced units, omega1 - omega0
= 1) and optionally a parameter sweep; subcommands select what to compute:

  stationary   thermodynamic summary (power, heat fluxes, efficiencies)
  sweep        the same over a parameter grid
  flows        population/coherence split of the heat currents
  fcs          entropy production, power variance parts, uncertainty product
  tur-scan     uncertainty product over a grid, reporting the minimum
  dynamics     transient relaxation from a chosen initial state

Results go to CSV (one row per working point or time sample, 'NA' where a
quantity is undefined) with a .meta.json sidecar recording the resolved
configuration.  Exit codes: 0 success, 2 configuration problem, 3 internal
consistency check failed.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import numpy as np

from . import __version__
from .decomposition import decompose_heat
from .dissipator import build_table
from .errors import BoundaryError, ConfigError, EngineError, InvariantViolation, ParameterError
from .fcs import entropy_production, fcs_report
from .model import CouplingTable, EngineParams, validated
from .stationary import engine_domain, optimal_frequency, solve, thermo_report

MODES = ("stationary", "sweep", "flows", "fcs", "tur-scan", "dynamics")

CONFIG_KEYS = {"omega20", "lambda", "beta_c", "beta_h", "scheme", "gamma",
               "ratio", "table", "omega", "sweep", "workers", "dynamics"}
REQUIRED_KEYS = ("omega20", "lambda", "beta_c", "beta_h")
SWEEP_AXES = ("omega20", "lambda", "omega", "beta_c", "beta_h", "gamma", "ratio")
DYNAMICS_KEYS = {"initial", "t_end", "dt", "method", "sample_every"}

DEFAULT_SWEEP = [{"axis": "omega20", "min": 1.05, "max": 4.95, "count": 101},
                 {"axis": "lambda", "min": 0.02, "max": 0.88, "count": 101}]

COORD_COLUMNS = (("omega20", "w10"), ("lambda", "w10"), ("omega", "w10"),
                 ("beta_c", "1/w10"), ("beta_h", "1/w10"))

MODE_COLUMNS = {
    "stationary": (("theta", "rad"), ("power", "w10^2"), ("qdot_c", "w10^2"),
                   ("qdot_h", "w10^2"), ("eta", "1"), ("eta_ssd", "1"),
                   ("eta_carnot", "1"), ("rho0", "1"), ("domain_flag", None)),
    "sweep": (("power", "w10^2"), ("qdot_c", "w10^2"), ("qdot_h", "w10^2"),
              ("eta", "1"), ("eta_ssd", "1"), ("sigma_dot", "w10"),
              ("domain_flag", None)),
    "flows": (("power", "w10^2"), ("qdot_h", "w10^2"), ("qdot_c", "w10^2"),
              ("qd_h", "w10^2"), ("qnd_h", "w10^2"), ("qnd_c", "w10^2"),
              ("eta_nd", "1"), ("pattern", None), ("domain_flag", None)),
    "fcs": (("power", "w10^2"), ("sigma_dot", "w10"), ("var1", "w10^3"),
            ("var2", "w10^3"), ("var3", "w10^3"), ("var4", "w10^3"),
            ("var_power", "w10^3"), ("tur", "1"), ("domain_flag", None)),
    "tur-scan": (("power", "w10^2"), ("sigma_dot", "w10"), ("var_power", "w10^3"),
                 ("tur", "1"), ("domain_flag", None)),
}

DYNAMICS_COLUMNS = (("t", "1/w10"), ("rho00", "1"), ("rho11", "1"), ("rho22", "1"),
                    ("delta1", "1"), ("delta2", "1"), ("abs_x1", "1"), ("abs_y2", "1"),
                    ("wdot", "w10^2"), ("qdot_c", "w10^2"), ("qdot_h", "w10^2"))


def load_config(path: str) -> dict:
    """Read and structurally validate the JSON configuration."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    unknown = set(raw) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = [k for k in REQUIRED_KEYS if k not in raw]
    if missing:
        raise ConfigError(f"missing required config keys: {missing}")
    return raw


def resolve_config(raw: dict) -> dict:
    """Apply defaults and check value-level consistency."""
    cfg = {"scheme": "uniform", "gamma": 1.0, "ratio": 0.25, "table": None,
           "omega": "optimal", "sweep": [], "workers": 1, "dynamics": {}}
    cfg.update(raw)

    for key in ("omega20", "lambda", "beta_c", "beta_h", "gamma", "ratio"):
        if not isinstance(cfg[key], (int, float)) or isinstance(cfg[key], bool):
            raise ConfigError(f"config key {key!r} must be a number")
    omega = cfg["omega"]
    if omega != "optimal" and (not isinstance(omega, (int, float)) or isinstance(omega, bool)):
        raise ConfigError("config key 'omega' must be a number or the string 'optimal'")

    if cfg["table"] is not None:
        if cfg["scheme"] != "custom":
            raise ConfigError("a coupling table is only accepted with scheme 'custom'")
        if (not isinstance(cfg["table"], list) or len(cfg["table"]) != 4
                or not all(isinstance(v, (int, float)) for v in cfg["table"])):
            raise ConfigError("coupling table must be a list of four numbers "
                              "[gamma_c_10, gamma_c_20, gamma_h_10, gamma_h_20]")

    if not isinstance(cfg["workers"], int) or cfg["workers"] < 1:
        raise ConfigError("workers must be a positive integer")

    sweep = cfg["sweep"]
    if not isinstance(sweep, list) or len(sweep) > 2:
        raise ConfigError("sweep must be a list of at most two axis objects")
    seen = set()
    for ax in sweep:
        if not isinstance(ax, dict) or set(ax) != {"axis", "min", "max", "count"}:
            raise ConfigError("each sweep axis needs exactly the keys axis/min/max/count")
        if ax["axis"] not in SWEEP_AXES:
            raise ConfigError(f"unknown sweep axis {ax['axis']!r}; expected one of {SWEEP_AXES}")
        if ax["axis"] in seen:
            raise ConfigError(f"sweep axis {ax['axis']!r} listed twice")
        seen.add(ax["axis"])
        if not (isinstance(ax["count"], int) and ax["count"] >= 2):
            raise ConfigError("sweep count must be an integer >= 2")
        if not (math.isfinite(ax["min"]) and math.isfinite(ax["max"]) and ax["min"] < ax["max"]):
            raise ConfigError("sweep needs finite min < max")
        if ax["axis"] == "omega" and "omega" in raw:
            raise ConfigError("sweeping omega: drop the scalar 'omega' key "
                              "(a fixed or 'optimal' value would conflict)")
        if ax["axis"] in ("gamma", "ratio") and cfg["scheme"] == "custom":
            raise ConfigError(f"sweeping {ax['axis']!r} needs a named scheme, not 'custom'")

    dyn = cfg["dynamics"]
    if not isinstance(dyn, dict):
        raise ConfigError("dynamics must be an object")
    unknown = set(dyn) - DYNAMICS_KEYS
    if unknown:
        raise ConfigError(f"unknown dynamics keys: {sorted(unknown)}")
    cfg["dynamics"] = {"initial": "ground", "t_end": 50.0, "dt": 1e-3,
                       "method": "rk4", "sample_every": 10, **dyn}
    return cfg


def _table_for(cfg: dict, gamma: float, ratio: float) -> CouplingTable:
    explicit = None if cfg["table"] is None else CouplingTable(*map(float, cfg["table"]))
    return build_table(cfg["scheme"], gamma=gamma, ratio=ratio, table=explicit)


def _make_params(cfg: dict, point: dict) -> EngineParams:
    """Assemble one validated working point, resolving omega='optimal'."""
    table = _table_for(cfg, point["gamma"], point["ratio"])
    omega = point["omega"]
    try:
        params = EngineParams.from_reduced(point["omega20"], point["lambda"],
                                           1.0 if omega == "optimal" else float(omega),
                                           point["beta_c"], point["beta_h"], table)
        validated(params)
        if omega == "optimal":
            params = replace(params, omega=optimal_frequency(params))
    except ParameterError as exc:
        raise ConfigError(f"invalid working point ({_point_label(point)}): {exc}") from exc
    return params


def _point_label(point: dict) -> str:
    return ", ".join(f"{k}={point[k]}" for k in ("omega20", "lambda", "beta_c", "beta_h"))


def build_tasks(cfg: dict, mode: str):
    """Expand the sweep into a task list of (mode, params, extra_coords)."""
    sweep = cfg["sweep"]
    if not sweep and mode in ("sweep", "tur-scan"):
        sweep = DEFAULT_SWEEP
    base = {"omega20": cfg["omega20"], "lambda": cfg["lambda"], "omega": cfg["omega"],
            "beta_c": cfg["beta_c"], "beta_h": cfg["beta_h"],
            "gamma": cfg["gamma"], "ratio": cfg["ratio"]}
    grids = [np.linspace(ax["min"], ax["max"], ax["count"]) for ax in sweep]
    axes = [ax["axis"] for ax in sweep]

    tasks = []
    if not sweep:
        tasks.append((mode, _make_params(cfg, base), {}))
    elif len(sweep) == 1:
        for v in grids[0]:
            point = {**base, axes[0]: float(v)}
            tasks.append((mode, _make_params(cfg, point), _extra(axes, point)))
    else:
        for v0 in grids[0]:
            for v1 in grids[1]:
                point = {**base, axes[0]: float(v0), axes[1]: float(v1)}
                tasks.append((mode, _make_params(cfg, point), _extra(axes, point)))
    return tasks, axes


def _extra(axes: list, point: dict) -> dict:
    """Coordinate columns beyond the standard five, for swept gamma/ratio."""
    return {a: point[a] for a in axes if a in ("gamma", "ratio")}


def _point_worker(task) -> dict:
    """Evaluate one working point; must stay module level for pickling."""
    mode, params, extra = task
    core = solve(params)
    verdict = engine_domain(params, core)
    flag = verdict.verdict if verdict.verdict != "out" else "out: " + ",".join(verdict.failed)
    in_domain = verdict.is_engine

    row = {"omega20": params.omega2 - params.omega0, "lambda": params.lam,
           "omega": params.omega, "beta_c": params.beta_c, "beta_h": params.beta_h,
           **extra, "domain_flag": flag, "power": core.power,
           "qdot_c": core.qdot_c, "qdot_h": core.qdot_h}

    if mode in ("stationary", "sweep"):
        tr = thermo_report(params, core)
        row.update(eta=tr.eta if in_domain else None,
                   eta_ssd=tr.eta_ssd, eta_carnot=tr.eta_carnot, rho0=tr.rho0,
                   theta=core.spc.theta)
        if mode == "sweep":
            row["sigma_dot"] = entropy_production(params, core)
    elif mode == "flows":
        try:
            dec = decompose_heat(params, core)
            row.update(qd_h=dec.qd_h, qnd_h=dec.qnd_h, qnd_c=dec.qnd_c,
                       eta_nd=dec.eta_nd if in_domain else None,
                       pattern=dec.pattern if in_domain else None)
        except BoundaryError:
            row.update(qd_h=None, qnd_h=None, qnd_c=None, eta_nd=None,
                       pattern="boundary" if in_domain else None)
    elif mode in ("fcs", "tur-scan"):
        rep = fcs_report(params, core)
        row.update(sigma_dot=rep.sigma_dot, var_power=rep.var_power,
                   tur=rep.tur if in_domain else None)
        if mode == "fcs":
            row.update(var1=rep.var1, var2=rep.var2, var3=rep.var3, var4=rep.var4)
    return row


def run_points(cfg: dict, mode: str, workers: int):
    tasks, axes = build_tasks(cfg, mode)
    if workers > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (8 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_point_worker, tasks, chunksize=chunk))
    else:
        rows = [_point_worker(t) for t in tasks]
    extra_cols = tuple((a, "w10" if a == "gamma" else "1")
                       for a in axes if a in ("gamma", "ratio"))
    columns = COORD_COLUMNS + extra_cols + MODE_COLUMNS[mode]
    return rows, columns


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, str):
        return value
    value = float(value)
    return "NA" if math.isnan(value) else repr(value)


def write_csv(path: str, columns, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([name if unit is None else f"{name}[{unit}]"
                         for name, unit in columns])
        for row in rows:
            writer.writerow([_fmt(row.get(name)) for name, _ in columns])


def write_meta(out_path: str, mode: str, cfg: dict, n_rows: int, extra: dict | None = None) -> None:
    meta = {"mode": mode, "rows": n_rows, "version": __version__,
            "config": {k: v for k, v in cfg.items() if k != "workers"}}
    if extra:
        meta.update(extra)
    with open(out_path + ".meta.json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def run_dynamics(cfg: dict, out: str) -> str:
    from .dynamics import integrate

    if cfg["sweep"]:
        raise ConfigError("dynamics mode does not sweep; drop the 'sweep' key")
    base = {"omega20": cfg["omega20"], "lambda": cfg["lambda"], "omega": cfg["omega"],
            "beta_c": cfg["beta_c"], "beta_h": cfg["beta_h"],
            "gamma": cfg["gamma"], "ratio": cfg["ratio"]}
    params = _make_params(cfg, base)
    dyn = cfg["dynamics"]
    traj = integrate(params, initial=dyn["initial"], t_end=dyn["t_end"],
                     dt=dyn["dt"], method=dyn["method"],
                     sample_every=dyn["sample_every"])
    mags = traj.aux_magnitudes
    rows = [{"t": traj.times[i], "rho00": traj.states[i, 0], "rho11": traj.states[i, 1],
             "rho22": traj.states[i, 2], "delta1": traj.states[i, 3],
             "delta2": traj.states[i, 4], "abs_x1": mags[i, 0], "abs_y2": mags[i, 1],
             "wdot": traj.wdot[i], "qdot_c": traj.qdot_c[i], "qdot_h": traj.qdot_h[i]}
            for i in range(len(traj.times))]
    write_csv(out, DYNAMICS_COLUMNS, rows)

    target = solve(params).state.as_vector()
    dist = float(np.linalg.norm(traj.states[-1] - target))
    write_meta(out, "dynamics", cfg, len(rows),
               {"final_distance_to_stationary": dist})
    return (f"wrote {len(rows)} samples to {out}; "
            f"final distance to stationary state {dist:.3e}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qhe3",
        description="Stationary thermodynamics and fluctuations of a driven "
                    "three-level heat engine")
    parser.add_argument("--version", action="version", version=f"qhe3 {__version__}")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        p = sub.add_parser(mode)
        p.add_argument("--config", "-c", required=True, help="JSON configuration file")
        p.add_argument("--out", "-o", default=None, help="output CSV path")
        p.add_argument("--workers", "-w", type=int, default=None,
                       help="process count for sweeps (overrides config)")
    args = parser.parse_args(argv)
    out = args.out or f"{args.mode.replace('-', '_')}.csv"

    try:
        cfg = resolve_config(load_config(args.config))
        workers = args.workers if args.workers is not None else cfg["workers"]
        if workers < 1:
            raise ConfigError("workers must be a positive integer")

        if args.mode == "dynamics":
            print(run_dynamics(cfg, out))
            return 0

        rows, columns = run_points(cfg, args.mode, workers)
        write_csv(out, columns, rows)
        n_in = sum(r["domain_flag"] == "in" for r in rows)
        extra = None
        if args.mode == "tur-scan":
            best = min((r for r in rows if r.get("tur") is not None),
                       key=lambda r: r["tur"], default=None)
            if best is not None:
                extra = {"tur_min": best["tur"],
                         "tur_min_at": {k: best[k] for k in
                                        ("omega20", "lambda", "omega")}}
                print(f"minimum uncertainty product {best['tur']:.8f} at "
                      f"omega20={best['omega20']:.6g}, lambda={best['lambda']:.6g}, "
                      f"omega={best['omega']:.6g}")
            else:
                print("no engine points in the scanned window")
        write_meta(out, args.mode, cfg, len(rows), extra)
        print(f"wrote {len(rows)} rows to {out} ({n_in} inside the engine domain)")
        if len(rows) == 1:
            row = rows[0]
            for name, unit in columns:
                tag = name if unit is None else f"{name}[{unit}]"
                print(f"  {tag} = {_fmt(row.get(name))}")
        return 0
    except InvariantViolation as exc:
        print(f"error: internal consistency check failed: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, EngineError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
