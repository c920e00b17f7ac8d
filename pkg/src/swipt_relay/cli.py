"""Command-line front end: parameter sweeps to CSV and a validation suite.

Subcommands
-----------
outage, capacity
    Sweep one parameter and emit analytic and Monte Carlo values.
theta
    Outage-optimal power split, optionally with Monte Carlo grid scans of
    outage and capacity over theta.
validate
    Cross-check the analytic results against simulation; exit 1 on failure.

Every subcommand writes CSV with the header ``param,scheme,quantity,value,stderr``.
Flags ending in ``-db`` take decibels and are converted to linear values
here, once; the rest of the package is linear-only.

Configuration files hold ``key = value`` lines (keys are the long flag names
with underscores) plus any number of ``sweep = NAME VALUES`` lines.  Flags
given on the command line override the file.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field

from .analysis import (capacity_upper_bound, check_interference_params, outage_exact_nl,
                       outage_high_snr, outage_lower_bound)
from .errors import BracketFailure, DegenerateParams, SchemeUnsupported
from .mc import estimate_capacity, estimate_outage_shared
from .model import SystemParams
from .optimum import capacity_theta_scan, mc_theta_scan, mrc_single_antenna_theta, optimal_theta
from .schemes import Scheme

HEADER = ("param", "scheme", "quantity", "value", "stderr")
NUDGE = 1e-6

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3

# sweepable name -> (SystemParams field, converter)
SWEEPABLE = {
    "rho1_db": ("rho1", lambda v: 10.0 ** (v / 10.0)),
    "rho_i_db": ("rho_i", lambda v: 10.0 ** (v / 10.0)),
    "theta": ("theta", float),
    "n_antennas": ("n_antennas", lambda v: _as_int("n_antennas", v)),
    "d1": ("d1", float),
    "d_i": ("d_i", float),
}
OUTAGE_QUANTITIES = ("outage_mc", "outage_lb", "outage_hsnr", "outage_exact", "theta_opt")
CAPACITY_QUANTITIES = ("capacity_mc", "capacity_ub")

# flag name -> (SystemParams field, is_db)
PARAM_FLAGS = {
    "n": ("n_antennas", False), "eta": ("eta", False), "theta": ("theta", False),
    "rho1_db": ("rho1", True), "rho_i_db": ("rho_i", True), "d1": ("d1", False),
    "d2": ("d2", False), "d_i": ("d_i", False), "tau": ("tau", False),
    "gamma_th_db": ("gamma_th", True),
}
# defaults: gamma_th 0 dB, eta 0.8, theta 0.5, rho_i 9.5 dB, tau 2, unit distances
DEFAULTS = {"n": 2, "eta": 0.8, "theta": 0.5, "rho1_db": 20.0, "rho_i_db": 9.5, "d1": 1.0,
            "d2": 1.0, "d_i": 1.0, "tau": 2.0, "gamma_th_db": 0.0, "mc_samples": 10 ** 6,
            "seed": 0, "workers": 1}


class UsageError(Exception):
    """Bad flag, config entry or parameter value."""


def _as_int(name, v) -> int:
    if not float(v).is_integer():
        raise UsageError(f"{name}: expected an integer, got {v!r}")
    return int(v)


def _number(name: str, text) -> float:
    try:
        return float(text)
    except (TypeError, ValueError):
        raise UsageError(f"{name}: expected a number, got {text!r}") from None


def parse_values(name: str, text: str) -> list:
    """``start:step:stop`` (inclusive) or a comma-separated list."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"{name}: range must be start:step:stop, got {text!r}")
        start, step, stop = (_number(name, p) for p in parts)
        if step <= 0 or stop < start:
            raise UsageError(f"{name}: range {text!r} is empty or has a nonpositive step")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + k * step for k in range(count)]
    vals = [_number(name, p) for p in text.split(",") if p.strip()]
    if not vals:
        raise UsageError(f"{name}: no values given")
    return vals


@dataclass
class SweepSpec:
    """One parameter sweep."""

    swept_parameter: str
    values: list
    base: SystemParams
    schemes: list
    mc_samples: int = 10 ** 6
    seed: int = 0
    outputs: tuple = ()
    workers: int = 1
    nudge: bool = False

    def __post_init__(self):
        if self.swept_parameter not in SWEEPABLE:
            raise UsageError(f"sweep: unknown parameter {self.swept_parameter!r}; "
                             f"choose from {', '.join(SWEEPABLE)}")
        if not self.values:
            raise UsageError("sweep: no values given")

    def point(self, value) -> SystemParams:
        name, conv = SWEEPABLE[self.swept_parameter]
        try:
            p = self.base.with_(**{name: conv(value)})
        except ValueError as exc:
            raise UsageError(f"{self.swept_parameter}: {exc}") from None
        return _nudge(p) if self.nudge else p


@dataclass
class SweepResult:
    rows: list = field(default_factory=list)

    def add(self, param, scheme, quantity, value, stderr=None):
        self.rows.append((param, scheme, quantity, value, stderr))


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    return format(float(v), ".12g")


def _fmt_param(name: str, value) -> str:
    return f"{name}={_fmt(value)}"


def write_csv(rows, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(HEADER)
    for param, scheme, qty, val, err in rows:
        label = scheme.value if isinstance(scheme, Scheme) else scheme
        w.writerow((param, label, qty, _fmt(val), _fmt(err)))


# ------------------------------------------------------------------ params

def _nudge(params: SystemParams) -> SystemParams:
    m1, mi = params.snr1, params.snr_i
    if abs(m1 - mi) <= 1e-12 * max(m1, mi):
        return params.with_(rho_i=params.rho_i * (1.0 + NUDGE))
    return params


def _read_config(path: str) -> tuple:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"config: cannot read {path!r}: {exc.strerror}") from None
    values, sweeps = {}, []
    for k, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {k}: expected 'key = value', got {line!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "sweep":
            parts = val.split(None, 1)
            if len(parts) != 2:
                raise UsageError(f"config line {k}: sweep needs a name and values")
            sweeps.append((parts[0], parts[1]))
        elif key in PARAM_FLAGS or key in ("mc_samples", "seed", "scheme", "quantities", "workers"):
            values[key] = val
        else:
            raise UsageError(f"config line {k}: unknown key {key!r}")
    return values, sweeps


def _settings(args) -> tuple:
    """Merge defaults, config file and flags; returns (settings, sweeps)."""
    merged = dict(DEFAULTS)
    sweeps = []
    if getattr(args, "config", None):
        cfg, sweeps = _read_config(args.config)
        merged.update(cfg)
    for key in list(PARAM_FLAGS) + ["mc_samples", "seed", "scheme", "quantities", "workers"]:
        v = getattr(args, key, None)
        if v is not None:
            merged[key] = v
    if getattr(args, "sweep", None):
        sweeps = [tuple(args.sweep)]
    return merged, sweeps


def _base_params(s: dict, nudge: bool) -> SystemParams:
    kw = {}
    for flag, (name, is_db) in PARAM_FLAGS.items():
        v = _number(flag, s[flag])
        kw[name] = 10.0 ** (v / 10.0) if is_db else v
    kw["n_antennas"] = _as_int("n", kw["n_antennas"])
    try:
        p = SystemParams(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _nudge(p) if nudge else p


def _schemes(s: dict) -> list:
    raw = s.get("scheme") or "nl,mrc,zf,mmse"
    if isinstance(raw, list):
        raw = ",".join(raw)
    try:
        return [Scheme.parse(t) for t in raw.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"scheme: {exc}") from None


def _int_setting(s: dict, key: str, lo: int) -> int:
    v = _as_int(key, _number(key, s[key]))
    if v < lo:
        raise UsageError(f"{key}: must be at least {lo}, got {v}")
    return v


# ------------------------------------------------------------------ sweeps

def run_sweep(spec: SweepSpec, result: SweepResult) -> None:
    """Evaluate every requested quantity at every sweep value."""
    want = set(spec.outputs)
    for value in spec.values:
        p = spec.point(value)
        label = _fmt_param(spec.swept_parameter, value)
        for s in spec.schemes:
            if s is Scheme.ZF_MRT and p.n_antennas < 2:
                raise UsageError("scheme: ZF/MRT needs n >= 2")
            if s.has_interference and want - {"outage_mc", "capacity_mc"}:
                check_interference_params(p, s)
        mc = {}
        if "outage_mc" in want:
            mc = estimate_outage_shared(spec.schemes, p, spec.mc_samples, spec.seed, spec.workers)
        for s in spec.schemes:
            if "outage_mc" in want:
                result.add(label, s, "outage_mc", mc[s].mean, mc[s].std_error)
            if "outage_lb" in want:
                result.add(label, s, "outage_lb", outage_lower_bound(s, p).probability)
            if "outage_hsnr" in want:
                result.add(label, s, "outage_hsnr", outage_high_snr(s, p))
            if "outage_exact" in want and s is Scheme.NOISE_LIMITED:
                result.add(label, s, "outage_exact", outage_exact_nl(p))
            if "theta_opt" in want:
                try:
                    result.add(label, s, "theta_opt", optimal_theta(s, p).theta_star)
                except BracketFailure as exc:
                    print(f"warning: {label} {s.value}: {exc}", file=sys.stderr)
                    result.add(label, s, "theta_opt", "nan")
            if "capacity_mc" in want:
                e = estimate_capacity(s, p, spec.mc_samples, spec.seed, spec.workers)
                result.add(label, s, "capacity_mc", e.mean, e.std_error)
            if "capacity_ub" in want:
                result.add(label, s, "capacity_ub", capacity_upper_bound(s, p))


def _quantities(s: dict, allowed: tuple, default: tuple) -> tuple:
    raw = s.get("quantities")
    if not raw:
        return default
    if isinstance(raw, list):
        raw = ",".join(raw)
    q = tuple(t.strip() for t in raw.split(",") if t.strip())
    bad = [t for t in q if t not in allowed]
    if bad:
        raise UsageError(f"quantities: unknown {', '.join(bad)}; choose from {', '.join(allowed)}")
    return q


def _cmd_sweep(args, allowed, default) -> SweepResult:
    s, sweeps = _settings(args)
    base = _base_params(s, args.nudge)
    if not sweeps:
        sweeps = [("rho1_db", _fmt(s["rho1_db"]))]
    result = SweepResult()
    for name, text in sweeps:
        spec = SweepSpec(name, parse_values(name, text), base, _schemes(s),
                         _int_setting(s, "mc_samples", 1000), _int_setting(s, "seed", 0),
                         _quantities(s, allowed, default), _int_setting(s, "workers", 1), args.nudge)
        run_sweep(spec, result)
    return result


def _cmd_theta(args) -> SweepResult:
    s, _ = _settings(args)
    p = _base_params(s, args.nudge)
    result = SweepResult()
    seed = _int_setting(s, "seed", 0)
    if args.grid_points < 11:
        raise UsageError(f"grid_points: must be at least 11, got {args.grid_points}")
    for sc in _schemes(s):
        sol = optimal_theta(sc, p)
        result.add("theta", sc, "theta_opt", sol.theta_star)
        result.add("theta", sc, "residual", sol.residual)
        result.add("theta", sc, "bracket", sol.bracket)
        if sc is Scheme.MRC_MRT and p.n_antennas == 1:
            result.add("theta", sc, "theta_closed_form", mrc_single_antenna_theta(p))
        if args.scan:
            scan = mc_theta_scan(sc, p, args.grid_points, _int_setting(s, "mc_samples", 1000), seed,
                                 _int_setting(s, "workers", 1))
            for t, o, e in zip(scan.theta_grid, scan.outage, scan.std_error):
                result.add(_fmt_param("theta", t), sc, "outage_mc", o, e)
            result.add("theta", sc, "argmin_theta_mc", scan.argmin_theta)
        if args.capacity_scan:
            cap = capacity_theta_scan(sc, p, args.grid_points, _int_setting(s, "mc_samples", 1000), seed,
                                      _int_setting(s, "workers", 1))
            for t, c, e in zip(cap.theta_grid, cap.capacity, cap.std_error):
                result.add(_fmt_param("theta", t), sc, "capacity_mc", c, e)
            result.add("theta", sc, "argmax_theta_capacity_mc", cap.argmax_theta)
    return result


# ------------------------------------------------------------------ validate

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool


def validation_suite(seed: int = 0, quick: bool = True, mc_samples: int | None = None,
                     workers: int = 1) -> tuple:
    """Analytic results versus simulation on a small grid.

    Returns ``(rows, checks)``.  Tolerances are in Monte Carlo standard
    errors (4 sigma); the scheme-ordering check is exact because it holds
    draw by draw.
    """
    n_mc = mc_samples or (200_000 if quick else 2_000_000)
    ns = (1, 2) if quick else (1, 2, 4)
    snrs = (10.0, 20.0) if quick else (10.0, 20.0, 30.0)
    k = 4.0
    rows, checks = [], []
    for n in ns:
        for db in snrs:
            p = SystemParams(n_antennas=n, rho1=10 ** (db / 10))
            label = f"n={n};rho1_db={_fmt(db)}"
            schemes = [Scheme.NOISE_LIMITED, Scheme.MRC_MRT, Scheme.MMSE_MRT]
            if n >= 2:
                schemes.insert(2, Scheme.ZF_MRT)
            mc = estimate_outage_shared(schemes, p, n_mc, seed, workers)
            exact = outage_exact_nl(p)
            e = mc[Scheme.NOISE_LIMITED]
            rows += [(label, "nl", "outage_mc", e.mean, e.std_error), (label, "nl", "outage_exact", exact, None)]
            checks.append(Check(f"{label} nl exact vs mc", abs(e.mean - exact) <= k * max(e.std_error, 1.0 / n_mc)))
            for s in schemes:
                lb = outage_lower_bound(s, p).probability
                es = mc[s]
                if s is not Scheme.NOISE_LIMITED:
                    rows.append((label, s.value, "outage_mc", es.mean, es.std_error))
                rows.append((label, s.value, "outage_lb", lb, None))
                checks.append(Check(f"{label} {s.value} lower bound", lb <= es.mean + k * max(es.std_error, 1.0 / n_mc)))
            mm = mc[Scheme.MMSE_MRT].mean
            others = [mc[s].mean for s in (Scheme.MRC_MRT, Scheme.ZF_MRT) if s in mc]
            checks.append(Check(f"{label} mmse best", all(mm <= o for o in others)))
            if n == 2:
                for s in schemes:
                    c = estimate_capacity(s, p, n_mc, seed, workers)
                    ub = capacity_upper_bound(s, p)
                    rows += [(label, s.value, "capacity_mc", c.mean, c.std_error),
                             (label, s.value, "capacity_ub", ub, None)]
                    checks.append(Check(f"{label} {s.value} capacity bound", ub >= c.mean - k * c.std_error))
    return rows, checks


def _cmd_validate(args, out) -> int:
    s, _ = _settings(args)
    seed = _int_setting(s, "seed", 0)
    n_mc = _int_setting(s, "mc_samples", 1000) if args.mc_samples is not None else None
    rows, checks = validation_suite(seed, args.quick, n_mc, _int_setting(s, "workers", 1))
    write_csv(rows, out)
    failed = [c.name for c in checks if not c.passed]
    for name in failed:
        print(f"FAILED: {name}", file=sys.stderr)
    print(f"validate: {len(checks) - len(failed)}/{len(checks)} checks passed", file=sys.stderr)
    return EXIT_VALIDATION if failed else EXIT_OK


# ------------------------------------------------------------------ parser

def _add_common(sp, params: bool = True):
    sp.add_argument("--config", help="key = value file; flags override it")
    sp.add_argument("--out", help="write CSV here instead of stdout")
    sp.add_argument("--seed", type=int, help="Monte Carlo seed (default 0)")
    sp.add_argument("--mc-samples", type=int, help="Monte Carlo draws per point (default 1e6)")
    sp.add_argument("--workers", type=int, help="Monte Carlo worker threads (default 1)")
    if not params:
        return
    sp.add_argument("--scheme", action="append",
                    help="nl, mrc, zf or mmse; repeat or comma-separate (default all)")
    sp.add_argument("--n", type=float, help="relay antennas (default 2)")
    sp.add_argument("--eta", type=float, help="energy conversion efficiency (default 0.8)")
    sp.add_argument("--theta", type=float, help="power-splitting ratio (default 0.5)")
    sp.add_argument("--rho1-db", type=float, help="source SNR in dB (default 20)")
    sp.add_argument("--rho-i-db", type=float, help="interferer SNR in dB (default 9.5)")
    sp.add_argument("--d1", type=float, help="source-relay distance (default 1)")
    sp.add_argument("--d2", type=float, help="relay-destination distance (default 1)")
    sp.add_argument("--d-i", type=float, help="interferer-relay distance (default 1)")
    sp.add_argument("--tau", type=float, help="path-loss exponent (default 2)")
    sp.add_argument("--gamma-th-db", type=float, help="outage threshold in dB (default 0)")
    sp.add_argument("--nudge", action="store_true",
                    help="perturb rho_i by 1e-6 relative when it coincides with rho1 after path loss")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="swipt-relay", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, qty in (("outage", OUTAGE_QUANTITIES), ("capacity", CAPACITY_QUANTITIES)):
        sp = sub.add_parser(name, help=f"{name} sweep to CSV")
        _add_common(sp)
        sp.add_argument("--sweep", nargs=2, metavar=("NAME", "VALUES"),
                        help=f"swept parameter ({', '.join(SWEEPABLE)}) and start:step:stop or a,b,c")
        sp.add_argument("--quantities", help=f"comma list from {', '.join(qty)}")
    sp = sub.add_parser("theta", help="optimal power-splitting ratio")
    _add_common(sp)
    sp.add_argument("--scan", action="store_true", help="add a Monte Carlo grid scan over theta")
    sp.add_argument("--capacity-scan", action="store_true",
                    help="add a Monte Carlo grid scan of capacity over theta")
    sp.add_argument("--grid-points", type=int, default=49, help="scan grid size (default 49)")
    sp = sub.add_parser("validate", help="analytic versus Monte Carlo cross-checks")
    _add_common(sp, params=False)
    sp.add_argument("--quick", action="store_true", help="small grid, 2e5 draws per point")
    return ap


def run(argv=None) -> int:
    """Entry point; returns the process exit code."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    buf = io.StringIO()
    try:
        if args.command == "validate":
            code = _cmd_validate(args, buf)
        else:
            if args.command == "theta":
                result = _cmd_theta(args)
            elif args.command == "outage":
                result = _cmd_sweep(args, OUTAGE_QUANTITIES, OUTAGE_QUANTITIES)
            else:
                result = _cmd_sweep(args, CAPACITY_QUANTITIES, CAPACITY_QUANTITIES)
            write_csv(result.rows, buf)
            code = EXIT_OK
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchemeUnsupported as exc:
        print(f"error: scheme: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateParams as exc:
        print(f"error: rho_i: {exc} (use --nudge)", file=sys.stderr)
        return EXIT_DEGENERATE
    except BracketFailure as exc:
        print(f"error: theta: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(buf.getvalue())
        except OSError as exc:
            print(f"error: out: cannot write {args.out!r}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())
