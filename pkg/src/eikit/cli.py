"""``eikit`` command line: eval, constants, table, verify.

Exit status: 0 success, 1 verification failure, 2 usage or domain error,
3 non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import derived, quadrature, series_core, verify
from .errors import DomainError, NonConvergence
from .results import EvalResult, Method, QuadConfig, SeriesPolicy

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NONCONVERGENCE = 3

FUNCTIONS = ("ei", "li", "goodwin_staton")
METHODS = ("series", "quadrature", "lemma1", "auto")
FORMATS = ("text", "json", "csv")

_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


class UsageError(Exception):
    pass


def parse_number(text: str) -> float:
    """Plain decimal or scientific notation only (no inf, nan, hex or underscores)."""
    if not _NUMBER.match(text.strip()):
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}")
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"number out of range: {text!r}")
    return value


def _positive_number(text: str) -> float:
    value = parse_number(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text!r}")
    return value


def _points(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError(f"need at least 2 points, got {n}")
    return n


def fmt(value) -> str:
    return format(value, ".17g")


def _json_encode(obj) -> str:
    """JSON with every float rendered to 17 significant digits; nan/inf become null."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _settings(tol):
    if tol is None:
        return series_core.DEFAULT_POLICY, quadrature.DEFAULT_CONFIG
    return SeriesPolicy(abs_tol=tol), QuadConfig(abs_tol=tol)


def _ei_lemma1(x, policy):
    one = series_core.ei_one(policy)
    part = series_core.lemma1_series(x, policy)
    return EvalResult(one.value + part.value,
                      one.error_bound + part.error_bound + series_core.UNIT_ROUNDOFF * abs(one.value + part.value),
                      Method.LEMMA1_SERIES, one.work + part.work, part.amplification)


def evaluate(function: str, x: float, method: str, policy: SeriesPolicy, cfg: QuadConfig) -> EvalResult:
    if method == "auto":
        method = "series"
    if function == "ei":
        if method == "series":
            return series_core.ei_series(x, policy)
        if method == "quadrature":
            return quadrature.ei_quadrature(x, cfg)
        if x == 0:
            raise DomainError("Ei is defined on the nonzero reals R^x; x = 0 is excluded")
        return _ei_lemma1(x, policy)
    if function == "li":
        if method == "series":
            return derived.li(x, policy)
        if method == "quadrature":
            return derived.li_quadrature(x, cfg)
        if not x > 0 or x == 1.0:
            derived.li(x, policy)  # raises the domain error
        return _ei_lemma1(math.log(x), policy)
    if function == "goodwin_staton":
        if method == "series":
            return derived.goodwin_staton_rhs(x, policy)
        if method == "quadrature":
            q = derived.goodwin_staton_lhs(x, cfg)
            if not q.converged:
                raise NonConvergence(f"Goodwin-Staton quadrature at x={x!r} did not converge")
            return EvalResult(q.value, q.error_estimate, Method.CPV_QUADRATURE, q.evaluations)
        raise UsageError("goodwin_staton has no lemma1 route; use series, quadrature or auto")
    raise UsageError(f"unknown function {function!r}")


def cmd_eval(args, out) -> int:
    policy, cfg = _settings(args.tol)
    r = evaluate(args.function, args.x, args.method, policy, cfg)
    inputs = {"function": args.function, "x": args.x, "method": args.method, "tol": args.tol}
    results = {"value": r.value, "error_bound": r.error_bound, "method": str(r.method), "work": r.work}
    if args.format == "json":
        out.write(_json_encode({"command": "eval", "inputs": inputs, "results": results}) + "\n")
    elif args.format == "csv":
        out.write(_csv_text(["function", "x", "value", "error_bound", "method", "work"],
                            [[args.function, args.x, r.value, r.error_bound, str(r.method), r.work]]))
    else:
        out.write(f"{args.function}({fmt(args.x)}) = {fmt(r.value)}\n"
                  f"  error_bound = {r.error_bound:.3e}\n"
                  f"  method      = {r.method}\n"
                  f"  work        = {r.work}\n")
    return EXIT_OK


def compute_constants(policy=series_core.DEFAULT_POLICY, cfg=quadrature.DEFAULT_CONFIG):
    """Rows ``(constant, route, value, error_bound)`` plus max pairwise differences."""
    g_int = quadrature.gamma_integral(cfg)
    if not g_int.converged:
        raise NonConvergence("gamma integral did not converge")
    ei1_quad = quadrature.ei_quadrature(1.0, cfg)
    tail1 = series_core.puiseux_tail(1.0, policy)
    ei1_series = series_core.ei_one(policy)
    mu = derived.soldner_constant(verify.SOLDNER_TOL, policy)
    rows = [
        ("gamma", "integral", g_int.value, g_int.error_estimate),
        ("gamma", "harmonic_reference", verify.gamma_reference(), verify.gamma_reference_bound()),
        ("gamma", "ei_quadrature_minus_tail", ei1_quad.value - tail1.value,
         ei1_quad.error_bound + tail1.error_bound),
        ("Ei(1)", "series", ei1_series.value, ei1_series.error_bound),
        ("Ei(1)", "quadrature", ei1_quad.value, ei1_quad.error_bound),
        ("mu", "bisection_newton", mu, verify.SOLDNER_TOL),
    ]
    diffs = {}
    for name in ("gamma", "Ei(1)"):
        vals = [r[2] for r in rows if r[0] == name]
        diffs[name] = max(abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1:])
    return rows, diffs


def cmd_constants(args, out) -> int:
    rows, diffs = compute_constants()
    if args.format == "json":
        results = [{"constant": c, "route": r, "value": v, "error_bound": e} for c, r, v, e in rows]
        out.write(_json_encode({"command": "constants", "inputs": {}, "results": results,
                                "max_pairwise_diff": diffs}) + "\n")
    elif args.format == "csv":
        out.write(_csv_text(["constant", "route", "value", "error_bound"], rows))
    else:
        for c, r, v, e in rows:
            out.write(f"{c:<6} {r:<26} {fmt(v):<22} +/- {e:.1e}\n")
        for c, d in diffs.items():
            out.write(f"max pairwise |diff| for {c}: {d:.3e}\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    if not args.x_min < args.x_max:
        raise UsageError(f"need --x-min < --x-max, got {args.x_min} and {args.x_max}")
    policy, cfg = _settings(args.tol)
    rows = []
    for x in np.linspace(args.x_min, args.x_max, args.points):
        x = float(x)
        try:
            r = evaluate(args.function, x, args.method, policy, cfg)
        except DomainError as exc:
            if args.skip_singular:
                continue
            raise DomainError(f"grid point x={fmt(x)}: {exc} (pass --skip-singular to omit it)") from exc
        rows.append((x, r.value, r.error_bound, str(r.method)))
    if args.format == "json":
        inputs = {"function": args.function, "x_min": args.x_min, "x_max": args.x_max,
                  "points": args.points, "method": args.method, "skip_singular": args.skip_singular}
        results = [{"x": x, "value": v, "error_bound": e, "method": m} for x, v, e, m in rows]
        out.write(_json_encode({"command": "table", "inputs": inputs, "results": results}) + "\n")
    elif args.format == "csv":
        out.write(_csv_text(["x", "value", "error_bound", "method"], rows))
    else:
        for x, v, e, m in rows:
            out.write(f"{fmt(x):>24}  {fmt(v):>24}  {e:.2e}  {m}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = verify.run_crosschecks(tol_scale=args.tol_scale)
    if args.format == "json":
        doc = {"command": "verify", "inputs": {"tol_scale": args.tol_scale},
               "generated_at": report.generated_at,
               "records": [r.to_dict() for r in report.records], "all_pass": report.all_pass}
        out.write(_json_encode(doc) + "\n")
    elif args.format == "csv":
        out.write(_csv_text(
            ["name", "lhs", "rhs", "abs_diff", "tolerance", "pass", "diff_finite"],
            [[r.name, r.lhs, r.rhs, r.abs_diff, r.tolerance, r.passed, r.diff_finite]
             for r in report.records]))
    else:
        for r in report.records:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status}  {r.name:<44} |diff| = {r.abs_diff:.3e}  tol = {r.tolerance:.3e}"
            if r.detail and not r.passed:
                line += f"  ({r.detail})"
            out.write(line + "\n")
        failed = len(report.failures())
        out.write(f"{len(report.records) - failed}/{len(report.records)} checks passed\n")
    return EXIT_OK if report.all_pass else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eikit", description="Exponential integral toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("eval", help="evaluate ei, li or goodwin_staton at one point")
    p.add_argument("function", choices=FUNCTIONS)
    p.add_argument("--x", type=parse_number, required=True)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--tol", type=_positive_number, default=None)
    add_format(p)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("constants", help="gamma, Ei(1) and the Soldner constant by several routes")
    add_format(p)
    p.set_defaults(handler=cmd_constants)

    p = sub.add_parser("table", help="tabulate a function on a uniform grid")
    p.add_argument("function", choices=FUNCTIONS)
    p.add_argument("--x-min", type=parse_number, required=True)
    p.add_argument("--x-max", type=parse_number, required=True)
    p.add_argument("--points", type=_points, default=11)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--tol", type=_positive_number, default=None)
    p.add_argument("--skip-singular", action="store_true")
    add_format(p)
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("verify", help="run every cross-route identity check")
    p.add_argument("--tol-scale", type=_positive_number, default=1.0)
    add_format(p)
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.handler(args, out)
    except (DomainError, UsageError, ValueError) as exc:
        print(f"eikit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonConvergence as exc:
        print(f"eikit: did not converge: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE

