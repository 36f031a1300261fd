"""Batch front-end: verification suites, classification oracles, and
nilmanifold simulations with machine-readable reports.

Exit codes: 0 all checks pass, 1 at least one failure, 2 usage or
configuration error.  Output is deterministic for a fixed (config, seed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import checks
from . import classification as cls
from . import dynamics as dyn

ENV_PREFIX = "FLAGDYN_"


@dataclass(frozen=True)
class RunConfig:
    suite: str | None = None
    seed: int = 0
    samples: int | None = None
    tol: float = 1e-9
    fmt: str = "human"
    out: str | None = None

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.fmt not in ("json", "csv", "human"):
            raise ValueError(f"unknown format {self.fmt!r}")


def _env_default(name: str, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return fallback
    return cast(raw)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _render_cases(suite_name: str, cases, fmt: str) -> str:
    cases = sorted(cases, key=lambda c: c["id"])
    if fmt == "json":
        return json.dumps({"suite": suite_name, "cases": cases},
                          sort_keys=True, indent=2)
    if fmt == "csv":
        lines = ["id,anchor,pass,residual"]
        for c in cases:
            res = "" if c["residual"] is None else f"{c['residual']:.17g}"
            anchor = c["anchor"].replace('"', "'")
            lines.append(f"{c['id']},\"{anchor}\",{str(c['pass']).lower()},{res}")
        return "\n".join(lines) + "\n"
    width = max((len(c["id"]) for c in cases), default=4)
    lines = []
    for c in cases:
        mark = "PASS" if c["pass"] else "FAIL"
        res = "" if c["residual"] is None else f"  residual={c['residual']:.3g}"
        lines.append(f"[{mark}] {c['id']:<{width}}  {c['anchor']}{res}")
        for key in sorted(set(c) - {"id", "anchor", "pass", "residual"}):
            lines.append(f"       {key}: {c[key]}")
    n_pass = sum(c["pass"] for c in cases)
    lines.append(f"{n_pass}/{len(cases)} checks passed")
    return "\n".join(lines) + "\n"


def cmd_verify(config: RunConfig) -> int:
    try:
        outcomes = checks.run_checks(suite=config.suite, seed=config.seed,
                                     samples=config.samples, tol=config.tol)
    except KeyError as exc:
        sys.stderr.write(f"error: {exc.args[0]}\n")
        return 2
    cases = [{
        "id": o.check_id,
        "anchor": o.anchor,
        "pass": o.passed,
        "residual": o.residual,
    } for o in outcomes]
    _emit(_render_cases(config.suite or "all", cases, config.fmt), config.out)
    return 0 if all(c["pass"] for c in cases) else 1


_ORACLE_CASES = {}


def _oracle(name):
    def wrap(fn):
        _ORACLE_CASES[name] = fn
        return fn
    return wrap


@_oracle("subalgebra-table")
def _oracle_subalgebras(config):
    return [_report_case(r) for r in cls.verify_subalgebra_table()]


@_oracle("bracket-table")
def _oracle_brackets(config):
    return [_report_case(r) for r in cls.tresse_bracket_suite()]


def _report_case(r: cls.OracleReport):
    return {"id": r.case_id, "anchor": r.anchor, "pass": r.passed,
            "residual": r.residual,
            "expected": r.expected, "computed": r.computed}


def _degeneration_case(name):
    @_oracle(f"degeneration-{name}")
    def _run(config, name=name):
        cases = []
        for t in (Fraction(1), Fraction(1, 2), Fraction(1, 10), Fraction(1, 100)):
            res = cls.degeneration_limit(name, t)
            cases.append({
                "id": f"degeneration-{name}-t={t}",
                "anchor": "transported transverse generator along the circle, "
                          "exact in t; projected line tends to the "
                          f"{res.limit} class",
                "pass": bool(res.matches and res.sine_distance <= 3 * float(t)),
                "residual": res.sine_distance,
                "matrix": [[str(e) for e in row] for row in res.matrix],
                "limit": res.limit,
            })
        return cases
    return _run


for _name in ("t1", "t2", "a1", "a2"):
    _degeneration_case(_name)


def cmd_oracle(case: str, config: RunConfig) -> int:
    if case not in _ORACLE_CASES:
        sys.stderr.write(
            f"error: unknown oracle case {case!r}; known: "
            f"{', '.join(sorted(_ORACLE_CASES))}\n")
        return 2
    cases = _ORACLE_CASES[case](config)
    _emit(_render_cases(case, cases, config.fmt), config.out)
    return 0 if all(c["pass"] for c in cases) else 1


def _parse_matrix(text: str):
    vals = [s.strip() for s in text.split(",")]
    if len(vals) != 4:
        raise ValueError("expected four comma-separated integers a,b,c,d")
    nums = []
    for v in vals:
        f = float(v)
        if f != int(f):
            raise ValueError("linear part entries must be integers")
        nums.append(int(f))
    return ((nums[0], nums[1]), (nums[2], nums[3]))


def cmd_simulate(args, config: RunConfig) -> int:
    try:
        m = _parse_matrix(args.matrix)
        f = dyn.NilMap.of(m, tuple(float(s) for s in args.translation.split(",")))
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    start = np.array([float(s) for s in args.start.split(",")])
    orbit = dyn.iterate(f, start, args.steps)
    if config.out:
        dyn.write_trajectory_csv(config.out, orbit)
    else:
        sys.stdout.write("step,x,y,z\n")
        for k, row in enumerate(orbit):
            sys.stdout.write(f"{k},{row[0]:.17g},{row[1]:.17g},{row[2]:.17g}\n")
    return 0


def cmd_lyapunov(args, config: RunConfig) -> int:
    try:
        m = _parse_matrix(args.matrix)
        f = dyn.NilMap.of(m, tuple(float(s) for s in args.translation.split(",")))
        rates = {d: dyn.tangent_rates(f, d, n=args.steps) for d in ("u", "s", "c")}
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    report = dyn.hyperbolicity_report(f, n_iter=args.steps)
    payload = {
        "suite": "lyapunov",
        "cases": [{
            "id": f"rate-{d}",
            "anchor": "per-step log growth along the invariant frame, "
                      "finite differences vs eigenvalue",
            "pass": r.error <= max(config.tol, 1e-3),
            "residual": r.error,
            "measured": r.measured,
            "exact": r.exact,
        } for d, r in sorted(rates.items())] + [{
            "id": "partially-hyperbolic",
            "anchor": "uniform contraction, expansion, and domination at "
                      "some finite power",
            "pass": report.partially_hyperbolic,
            "residual": None,
            "n": report.n_certified,
        }],
    }
    if config.fmt == "json":
        _emit(json.dumps(payload, sort_keys=True, indent=2), config.out)
    else:
        _emit(_render_cases("lyapunov", payload["cases"], config.fmt), config.out)
    return 0 if all(c["pass"] for c in payload["cases"]) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagdyn",
        description="verification suites and simulations for the flag-space "
                    "models and their dynamics")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int,
                       default=_env_default("seed", int, 0))
        p.add_argument("--samples", type=int,
                       default=_env_default("samples", int, None))
        p.add_argument("--tol", type=float,
                       default=_env_default("tol", float, 1e-9))
        p.add_argument("--format", dest="fmt", default=_env_default("format", str, "human"),
                       choices=("json", "csv", "human"))
        p.add_argument("--out", default=_env_default("out", str, None))

    pv = sub.add_parser("verify", help="run verification suites")
    pv.add_argument("--suite", default=None,
                    help=f"one of: {', '.join(checks.suites())} (default: all)")
    add_common(pv)

    po = sub.add_parser("oracle", help="run one classification oracle")
    po.add_argument("case", help=f"one of: {', '.join(sorted(_ORACLE_CASES))}")
    add_common(po)

    ps = sub.add_parser("simulate", help="iterate a nilmanifold affine map")
    ps.add_argument("--matrix", default="2,1,1,1",
                    help="integer linear part a,b,c,d with ad-bc=1")
    ps.add_argument("--translation", default="0,0,0")
    ps.add_argument("--start", default="0.37,0.21,0.13")
    ps.add_argument("-n", "--steps", type=int, default=100)
    add_common(ps)

    pl = sub.add_parser("lyapunov", help="measure frame rates of an affine map")
    pl.add_argument("--matrix", default="2,1,1,1")
    pl.add_argument("--translation", default="0,0,0")
    pl.add_argument("-n", "--steps", type=int, default=200)
    add_common(pl)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        config = RunConfig(suite=getattr(args, "suite", None), seed=args.seed,
                           samples=args.samples, tol=args.tol,
                           fmt=args.fmt, out=args.out)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if args.command == "verify":
        return cmd_verify(config)
    if args.command == "oracle":
        return cmd_oracle(args.case, config)
    if args.command == "simulate":
        return cmd_simulate(args, config)
    if args.command == "lyapunov":
        return cmd_lyapunov(args, config)
    return 2


if __name__ == "__main__":
    sys.exit(main())
