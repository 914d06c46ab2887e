"""Command-line driver: ``wqed-scatter <scenario> --config <path> [--out <path>] [--emit-plot]``."""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import g2corr, plotscripts
from .config import SCENARIOS, RunConfig, parse_config
from .errors import ConfigError, WQEDError
from .params import E, H_PLANCK, CircuitParams, derive_params, power_to_flux
from .rates import thermal_occupation, transition_rates
from .scatter2 import DriveSpec, analytic_rt, numeric_rt
from .scatter3 import ThreeLevelDrive, analytic_r_probe, numeric_r_probe
from .transmon import solve_transmon

TWO_PI = 2.0 * math.pi

COLUMNS = {
    "spectrum": ["level [1]", "f [GHz]", "f_down [GHz]", "X_down [e]", "epsilon [MHz]",
                 "Gamma_down [MHz]", "Gamma_up [MHz]", "Gamma_phi [MHz]", "gamma_down [MHz]"],
    "two-level": ["delta_over_gamma10 [1]", "Re_r [1]", "Im_r [1]", "R [1]", "T [1]"],
    "three-level": ["deltaP_over_Gamma10 [1]", "NinC_rel [1]", "Re_r [1]", "Im_r [1]", "Tp [1]"],
    "g2": ["T [mK]", "BW [MHz]", "tau [ns]", "g2 [1]"],
}

EPILOG = """\
CSV columns (rates and frequencies are ordinary frequencies, i.e. divided by 2 pi):
  spectrum     {spectrum}
  two-level    {two}
               (method = both appends Re_r_numeric [1], Im_r_numeric [1])
  three-level  {three}
  g2           {g2}

Flux keys take the suffix _rel (N / (Gamma10 / 2 pi)) or _per_s; detuning keys take
_rel (units of gamma10 for two-level, Gamma10 for three-level) or a frequency suffix.
WQED_THREADS caps the number of sweep points evaluated in parallel.
""".format(
    spectrum=", ".join(COLUMNS["spectrum"]),
    two=", ".join(COLUMNS["two-level"]),
    three=", ".join(COLUMNS["three-level"]),
    g2=", ".join(COLUMNS["g2"]),
)


def _threads():
    raw = os.environ.get("WQED_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"WQED_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(f"WQED_THREADS must be a positive integer, got {raw!r}")
    return n


def _pmap(fn, items):
    items = list(items)
    workers = min(_threads(), len(items)) or 1
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _single(cfg, key, default=None):
    v = cfg.si(key, default)
    if isinstance(v, list):
        if len(v) != 1:
            raise ConfigError(f"key {key!r} takes a single value in scenario {cfg.scenario!r}",
                              key=key)
        v = v[0]
    return v


def _flux(cfg, key, Gamma10, omega10=None):
    q = cfg.get(key)
    if q is None:
        if key == "Nin" and cfg.has("P"):
            p = cfg.get("P")
            return power_to_flux(p.value, omega10, unit=p.unit)
        return None
    if q.unit == "rel":
        scale = Gamma10 / TWO_PI
        return [v * scale for v in q.value] if isinstance(q.value, list) else q.value * scale
    return q.si()


def _detuning(cfg, key, unit_rate, default):
    q = cfg.get(key)
    if q is None:
        return default * unit_rate
    if q.unit == "rel":
        return q.value * unit_rate
    return q.si()


def _nth(cfg):
    T = _single(cfg, "T", 0.0)
    if T > 0:
        return thermal_occupation(cfg.si("f10"), T)
    return 0.0


def run_spectrum(cfg: RunConfig):
    p = CircuitParams(
        Cc=cfg.si("Cc"), CJ=cfg.si("CJ"), EJ=cfg.si("EJ"), Z0=cfg.si("Z0", 50.0),
        T=_single(cfg, "T", 0.0), VDC=cfg.si("VDC", 0.0), nPorts=cfg.raw("nPorts", 1),
    )
    d = derive_params(p)
    if cfg.has("ng"):
        d = replace(d, ng=cfg.raw("ng"))
    spec = solve_transmon(d.EC, p.EJ, d.ng, cfg.raw("nLevels", 3), cfg.raw("nCut"))
    rates = transition_rates(spec, d, p.T)
    MHz = TWO_PI * 1e6
    nan = math.nan
    rows = []
    for k in range(spec.nLevels):
        row = [k, spec.omegas[k] / TWO_PI / 1e9]
        if k:
            row += [spec.transition(k, k - 1) / TWO_PI / 1e9, abs(spec.chargeME[k, k - 1]) / E]
        else:
            row += [nan, nan]
        row.append(spec.epsilons[k] / H_PLANCK / 1e6)
        if k:
            row += [rates.GammaDown[k, k - 1] / MHz, rates.GammaUp[k - 1, k] / MHz]
        else:
            row += [nan, nan]
        row.append(rates.GammaPhi[k] / MHz)
        row.append(rates.gammaTotal[k, k - 1] / MHz if k else nan)
        rows.append(row)
    return COLUMNS["spectrum"], rows


def run_two_level(cfg: RunConfig):
    G = cfg.si("Gamma10")
    n = _nth(cfg)
    Nin = _flux(cfg, "Nin", G, cfg.si("f10"))
    probe = DriveSpec(Nin, 0.0, G * (1 + n), cfg.si("gamma10"), n)
    g10 = probe.gamma10
    deltas = np.linspace(_detuning(cfg, "delta_min", g10, -10.0),
                         _detuning(cfg, "delta_max", g10, 10.0),
                         cfg.raw("delta_points", 201))
    method = cfg.raw("method", "analytic")
    solvers = {"analytic": [analytic_rt], "numeric": [numeric_rt],
               "both": [analytic_rt, numeric_rt]}[method]

    def point(D):
        spec = replace(probe, delta=float(D))
        return [s(spec) for s in solvers]

    results = _pmap(point, deltas)
    header = list(COLUMNS["two-level"])
    if method == "both":
        header += ["Re_r_numeric [1]", "Im_r_numeric [1]"]
    rows = []
    for D, res in zip(deltas, results):
        row = [D / g10, res[0].r.real, res[0].r.imag, res[0].R, res[0].T]
        if method == "both":
            row += [res[1].r.real, res[1].r.imag]
        rows.append(row)
    return header, rows


def run_three_level(cfg: RunConfig):
    G = cfg.si("Gamma10")
    n10 = _nth(cfg)
    rates = {k: cfg.si(k) for k in ("Gamma21", "gamma10", "gamma20", "gamma21") if cfg.has(k)}
    NinP = _flux(cfg, "NinP", G) or 0.0
    deltaC = _detuning(cfg, "deltaC", G, 0.0)
    if cfg.raw("sweep", "detuning") == "control":
        lo, hi = _flux(cfg, "NinC_min", G), _flux(cfg, "NinC_max", G)
        npts = cfg.raw("NinC_points", 61)
        if cfg.raw("NinC_spacing", "log") == "log":
            if lo <= 0:
                raise ConfigError("log-spaced NinC sweep needs NinC_min > 0", key="NinC_min")
            NinCs = np.geomspace(lo, hi, npts)
        else:
            NinCs = np.linspace(lo, hi, npts)
        deltaPs = np.array([_detuning(cfg, "deltaP", G, 0.0)])
    else:
        NinCs = np.atleast_1d(_flux(cfg, "NinC", G))
        deltaPs = np.linspace(_detuning(cfg, "deltaP_min", G, -3.0),
                              _detuning(cfg, "deltaP_max", G, 3.0),
                              cfg.raw("deltaP_points", 121))
    method = cfg.raw("method", "analytic")
    solver = {"analytic": analytic_r_probe, "numeric": numeric_r_probe}.get(method)
    if solver is None:
        raise ConfigError(f"three-level scenario supports method analytic or numeric, not {method!r}",
                          key="method")
    grid = [(float(Nc), float(Dp)) for Nc in NinCs for Dp in deltaPs]

    def point(item):
        Nc, Dp = item
        return solver(ThreeLevelDrive(NinP, Nc, Dp, G * (1 + n10), deltaC, n10=n10, **rates))

    results = _pmap(point, grid)
    rows = [[Dp / G, Nc / (G / TWO_PI), res.r.real, res.r.imag, res.T]
            for (Nc, Dp), res in zip(grid, results)]
    return COLUMNS["three-level"], rows


def g2_configs(cfg: RunConfig):
    """One :class:`G2Config` per (T, BW) pair; scalar entries broadcast."""
    G = cfg.si("Gamma10")
    w10 = cfg.si("f10")
    Nin = _flux(cfg, "Nin", G, w10)
    Ts = cfg.si("T", [0.0])
    Ts = Ts if isinstance(Ts, list) else [Ts]
    filtered = cfg.raw("filtered", True)
    BWs = cfg.si("BW", [math.inf]) if filtered else [math.inf]
    if len(Ts) != len(BWs):
        if len(Ts) == 1:
            Ts = Ts * len(BWs)
        elif len(BWs) == 1:
            BWs = BWs * len(Ts)
        else:
            raise ConfigError("T and BW lists must have equal length (or one entry)", key="BW")
    taus = np.linspace(0.0, cfg.si("tau_max", 200e-9), cfg.raw("tau_points", 400))
    base = dict(
        field=cfg.raw("field", "reflected"), filtered=filtered, nFock=cfg.raw("nFock", 8),
        Gamma10=G, omega10=w10, Nin=Nin, tauGrid=taus,
        thermal_factor=cfg.raw("thermal_factor", "verbatim"),
    )
    out = []
    for T, bw in zip(Ts, BWs):
        kw = dict(base, T=T)
        if filtered:
            kw["gammaBW"] = bw
        out.append(g2corr.G2Config(**kw))
    return out


def run_g2(cfg: RunConfig):
    configs = g2_configs(cfg)
    curves = _pmap(g2corr.g2, configs)
    rows = []
    for c, curve in zip(configs, curves):
        bw = c.gammaBW / TWO_PI / 1e6 if c.filtered else math.inf
        for tau, val in zip(curve.taus, curve.values):
            rows.append([c.T * 1e3, bw, tau * 1e9, val])
    return COLUMNS["g2"], rows


RUNNERS = {
    "spectrum": run_spectrum,
    "two-level": run_two_level,
    "three-level": run_three_level,
    "g2": run_g2,
}


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if x is None:
        return ""
    return repr(float(x))


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def plot_script_path(out: Path) -> Path:
    return out.with_name(out.stem + "_plot.py")


def run(cfg: RunConfig, out=None, emit_plot=None, stdout=None) -> int:
    """Execute a parsed configuration and write its CSV (and plot script).

    Returns 0 on success. Solver errors propagate as :class:`WQEDError`.
    """
    out = out if out is not None else cfg.output
    if emit_plot is None:
        emit_plot = cfg.format == "csv+plotscript"
    header, rows = RUNNERS[cfg.scenario](cfg)
    text = to_csv(header, rows)
    if out is None or out == "-":
        if emit_plot:
            raise ConfigError("--emit-plot needs --out so the script can locate the CSV")
        (stdout or sys.stdout).write(text)
        return 0
    out = Path(out)
    with open(out, "w", newline="") as fh:
        fh.write(text)
    if emit_plot:
        plot_script_path(out).write_text(plotscripts.render(cfg.scenario, out.name))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="wqed-scatter",
        description="Scattering of coherent microwaves on a transmon in an open transmission line.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("scenario", choices=SCENARIOS)
    ap.add_argument("--config", required=True, help="key = value configuration file")
    ap.add_argument("--out", help="CSV output path (default: stdout)")
    ap.add_argument("--emit-plot", action="store_true",
                    help="also write <out>_plot.py that renders the CSV with matplotlib")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"wqed-scatter: error: cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        cfg = parse_config(text, scenario=args.scenario)
        return run(cfg, out=args.out, emit_plot=args.emit_plot or None)
    except ConfigError as exc:
        print(f"wqed-scatter: config error: {exc}", file=sys.stderr)
        return 2
    except WQEDError as exc:
        print(f"wqed-scatter: solver error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
