"""Command-line surface: run identity suites, compute phi^2, emit figure
data, and persist machine-readable reports.

Exit codes: 0 success, 1 verification failures, 2 config errors,
3 numeric/convergence errors.  Output files are byte-deterministic for a
fixed config: floats are written with 17 significant digits and reports
carry no timestamps.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import blackhole, identities, specfun, vacuumpol
from .errors import StringHorizonError

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_MANIFEST_KEYS = {"version", "description", "cases"}
_CASE_KEYS = {"check", "params"}


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    tolerance: float | None
    manifest: str | None
    out: str | None
    fmt: str
    parallelism: int

    def __post_init__(self):
        if self.tolerance is not None and not 1e-12 <= self.tolerance <= 1e-3:
            raise ConfigError(
                f"tolerance {self.tolerance} outside [1e-12, 1e-3]")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.fmt}")
        if self.parallelism < 1:
            raise ConfigError(f"parallelism must be >= 1, got {self.parallelism}")


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17e")
    return str(x)


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def _load_manifest(path: str | None) -> list[dict]:
    if path is None:
        src = resources.files("stringhorizon").joinpath("manifests/default.json")
        text = src.read_text()
        where = "default manifest"
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read manifest {path}: {exc}")
        where = path
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{where}: line {exc.lineno}, col {exc.colno}: {exc.msg}")
    unknown = set(data) - _MANIFEST_KEYS
    if unknown:
        raise ConfigError(f"{where}: unknown manifest keys {sorted(unknown)}")
    cases = data.get("cases", [])
    for i, case in enumerate(cases):
        unknown = set(case) - _CASE_KEYS
        if unknown:
            raise ConfigError(f"{where}: case {i}: unknown keys {sorted(unknown)}")
        name = case.get("check")
        if name not in identities.CHECKS:
            raise ConfigError(f"{where}: case {i}: unknown check {name!r}")
        sig = inspect.signature(identities.CHECKS[name])
        bad = set(case.get("params", {})) - set(sig.parameters)
        if bad:
            raise ConfigError(
                f"{where}: case {i} ({name}): unknown params {sorted(bad)}")
    return cases


def _records_csv(records: list[dict]) -> str:
    cols = ["name", "params", "lmax", "mmax", "tol", "lhs", "rhs",
            "residual_abs", "residual_rel", "residual", "certified_tail",
            "passed", "note", "error"]
    lines = [",".join(cols)]
    for r in records:
        row = []
        for c in cols:
            v = r.get(c, "")
            if c == "params":
                v = ";".join(f"{k}={_fmt(v2)}" for k, v2 in sorted(v.items()))
            elif isinstance(v, float):
                v = _fmt(v)
            elif v is None:
                v = ""
            row.append(f'"{v}"' if "," in str(v) else str(v))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    cfg = RunConfig("verify", args.tolerance, args.manifest, args.out,
                    args.format, args.parallelism)
    cases = _load_manifest(cfg.manifest)
    if not cases:
        print("warning: empty manifest, nothing to verify")
        _emit(_json_dumps([]) if cfg.fmt == "json" else _records_csv([]),
              cfg.out)
        return EXIT_OK
    records = identities.run_cases(cases, tol_override=cfg.tolerance,
                                   parallelism=cfg.parallelism)
    n_err = sum(1 for r in records if "error" in r)
    n_fail = sum(1 for r in records if not r.get("passed") and "error" not in r)
    for r in records:
        if "error" in r:
            print(f"ERROR {r['name']}: {r['error']}")
        else:
            status = "PASS" if r["passed"] else "FAIL"
            print(f"{status} {r['name']} residual={_fmt(r['residual'])} "
                  f"tail={_fmt(r['certified_tail'])}")
    print(f"{len(records)} checks: {len(records) - n_fail - n_err} passed, "
          f"{n_fail} failed, {n_err} errored")
    _emit(_json_dumps(records) if cfg.fmt == "json" else _records_csv(records),
          cfg.out)
    if n_err:
        return EXIT_NUMERIC
    if n_fail:
        return EXIT_FAILURES
    return EXIT_OK


# ----------------------------------------------------------------------
# phi2
# ----------------------------------------------------------------------

def cmd_phi2(args) -> int:
    RunConfig("phi2", None, None, args.out, args.format, 1)
    res = vacuumpol.phi2_result(args.theta, args.alpha, args.mass)
    payload = {
        "theta": res.theta, "alpha": res.alpha, "M": res.M,
        "phi2_closed": res.value_closed,
        "phi2_limit": res.value_limit,
        "extrapolation_error": res.extrapolation_error,
        "route_agreement": res.route_agreement,
    }
    if args.format == "json":
        _emit(_json_dumps(payload), args.out)
    else:
        lines = [f"{k},{_fmt(v)}" for k, v in payload.items()]
        text = "\n".join(lines) + "\n"
        if args.out is None:
            print(f"closed route:        {_fmt(res.value_closed)}")
            print(f"limit route:         {_fmt(res.value_limit)}")
            print(f"extrapolation error: {_fmt(res.extrapolation_error)}")
            print(f"route agreement:     {_fmt(res.route_agreement)}")
        else:
            _emit(text, args.out)
    return EXIT_OK


# ----------------------------------------------------------------------
# figure1
# ----------------------------------------------------------------------

def cmd_figure1(args) -> int:
    RunConfig("figure1", None, None, args.out, args.format, 1)
    try:
        alphas = [float(a) for a in args.alphas.split(",") if a]
    except ValueError as exc:
        raise ConfigError(f"bad --alphas: {exc}")
    rows = vacuumpol.figure1_data(alphas, M=args.mass, margin=args.margin,
                                  points=args.points)
    if args.format == "json":
        payload = [{"cos_theta": r[0], "alpha": r[1], "phi2_M2": r[2]}
                   for r in rows]
        _emit(_json_dumps(payload), args.out)
    else:
        lines = ["cos_theta,alpha,phi2_M2"]
        lines += [f"{_fmt(r[0])},{_fmt(r[1])},{_fmt(r[2])}" for r in rows]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ----------------------------------------------------------------------
# radial
# ----------------------------------------------------------------------

def cmd_radial(args) -> int:
    RunConfig("radial", None, None, args.out, args.format, 1)
    lam = blackhole.lambda_of(args.l, args.m, args.alpha)
    geometry = blackhole.DeficitGeometry(alpha=args.alpha, M=args.mass)
    etas = np.geomspace(1.0 + 1e-3, args.eta_max, args.points)
    if args.n == 0:
        table = [(float(e), specfun.legendre_P_axis(lam, float(e)),
                  specfun.legendre_Q(lam, float(e))) for e in etas]
        diag = {"n": 0, "lambda": lam, "branch": "analytic (P_lambda, Q_lambda)"}
    else:
        pair = blackhole.radial_solutions(args.n, lam, geometry,
                                          eta_max=args.eta_max)
        table = [(float(e), pair.p(float(e)), pair.q(float(e))) for e in etas]
        diag = {
            "n": args.n, "lambda": lam,
            "wronskian_scale": pair.wronskian_scale,
            "wronskian_target": -2.0 * abs(args.n),
            "wronskian_spread": pair.wronskian_spread,
            "exponent_fit_p": blackhole.exponent_fit(pair.p),
            "exponent_fit_q": blackhole.exponent_fit(pair.q),
            "exponent_target": abs(args.n) / 2.0,
        }
    if args.format == "json":
        payload = {"diagnostics": diag,
                   "table": [{"eta": r[0], "p": r[1], "q": r[2]} for r in table]}
        _emit(_json_dumps(payload), args.out)
    else:
        for k, v in sorted(diag.items()):
            print(f"# {k} = {_fmt(v)}")
        lines = ["eta,p,q"]
        lines += [f"{_fmt(r[0])},{_fmt(r[1])},{_fmt(r[2])}" for r in table]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="stringhorizon",
        description="Cosmic-string black-hole vacuum polarization toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the identity suite")
    v.add_argument("--manifest", default=None, help="grid manifest (JSON)")
    v.add_argument("--tolerance", type=float, default=None)
    v.add_argument("--out", default=None)
    v.add_argument("--format", choices=("csv", "json"), default="json")
    v.add_argument("--parallelism", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("phi2", help="horizon vacuum polarization, both routes")
    f.add_argument("--theta", type=float, required=True)
    f.add_argument("--alpha", type=float, required=True)
    f.add_argument("--mass", type=float, default=1.0)
    f.add_argument("--out", default=None)
    f.add_argument("--format", choices=("csv", "json"), default="csv")
    f.set_defaults(func=cmd_phi2)

    g = sub.add_parser("figure1", help="emit the horizon profile data table")
    g.add_argument("--alphas", default="1.0,0.9,0.75,0.5")
    g.add_argument("--points", type=int, default=81)
    g.add_argument("--margin", type=float, default=0.995)
    g.add_argument("--mass", type=float, default=1.0)
    g.add_argument("--out", default=None)
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.set_defaults(func=cmd_figure1)

    r = sub.add_parser("radial", help="tabulate radial solutions")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--l", type=int, required=True)
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--alpha", type=float, default=1.0)
    r.add_argument("--mass", type=float, default=1.0)
    r.add_argument("--eta-max", type=float, default=20.0)
    r.add_argument("--points", type=int, default=40)
    r.add_argument("--out", default=None)
    r.add_argument("--format", choices=("csv", "json"), default="csv")
    r.set_defaults(func=cmd_radial)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StringHorizonError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
