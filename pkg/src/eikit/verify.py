"""Independent gamma oracle and the cross-check harness.

Every identity is checked by comparing two independently computed sides; the
tolerance of a floating-point check is the sum of both sides' reported error
bounds plus a small floor, so a pass means the routes agree as well as they
claim to.  Exact identities are compared in rationals with zero tolerance.
"""

from __future__ import annotations

import datetime as _dt
import math
import os
from dataclasses import asdict, dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import derived, quadrature, series_core
from .errors import EikitError, NonConvergence
from .results import QuadConfig, QuadResult, SeriesPolicy

TOLERANCE_FLOOR = 1e-12
GAMMA_REFERENCE_TERMS = 10**6
SOLDNER_TOL = 1e-12
ROUTE_GRID = (-4.0, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0, 4.0)
LEMMA1_GRID = (0.5, 2.0)
GOODWIN_STATON_GRID = (0.5, 1.0, 2.0)
EXACT_RANGE = range(1, 31)

_FIXED_POINT_DIGITS = 50
_CHUNK = 256


@lru_cache(maxsize=8)
def gamma_reference(n_terms: int = GAMMA_REFERENCE_TERMS) -> float:
    """H_n - log n - 1/(2n) + 1/(12 n^2), rounded once to float.

    H_n is built from exact rational blocks of 256 terms, each floored to 50
    fractional digits, so the accumulated error is below n / 256 * 1e-50; the
    logarithm and corrections are taken in 60-digit decimal arithmetic.  The
    truncation error of the expansion is about 1/(120 n^4).
    """
    n = int(n_terms)
    if n < 10:
        raise ValueError(f"n_terms must be >= 10, got {n_terms}")
    scale = 10**_FIXED_POINT_DIGITS
    acc = 0
    for a in range(1, n + 1, _CHUNK):
        p, q = series_core.harmonic_range(a, min(a + _CHUNK, n + 1))
        acc += (p * scale) // q
    with localcontext() as ctx:
        ctx.prec = 60
        h = Decimal(acc) / Decimal(scale)
        dn = Decimal(n)
        g = h - dn.ln() - 1 / (2 * dn) + 1 / (12 * dn * dn)
        return float(g)


def gamma_reference_bound(n_terms: int = GAMMA_REFERENCE_TERMS) -> float:
    return 1.0 / (120.0 * float(n_terms) ** 4) + series_core.UNIT_ROUNDOFF


@dataclass(frozen=True)
class CheckRecord:
    name: str
    lhs: float
    rhs: float
    abs_diff: float
    tolerance: float
    passed: bool
    diff_finite: bool = True
    detail: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


@dataclass(frozen=True)
class VerificationReport:
    records: tuple
    generated_at: str

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list:
        return [r for r in self.records if not r.passed]

    def to_dict(self) -> dict:
        return {
            "generated_at": self.generated_at,
            "all_pass": self.all_pass,
            "records": [r.to_dict() for r in self.records],
        }


def _timestamp() -> str:
    fixed = os.environ.get("EIKIT_FIXED_TIMESTAMP")
    if fixed is not None:
        return fixed
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _quad(q: QuadResult) -> tuple[float, float]:
    if not q.converged:
        raise NonConvergence(f"quadrature did not converge (error estimate {q.error_estimate:g})")
    return q.value, q.error_estimate


def _float_check(
    name: str,
    lhs: Callable[[], tuple[float, float]],
    rhs: Callable[[], tuple[float, float]],
    tol_scale: float,
    extra: float = 0.0,
) -> CheckRecord:
    try:
        lv, lb = lhs()
        rv, rb = rhs()
    except EikitError as exc:
        return CheckRecord(name, math.nan, math.nan, math.inf, math.nan, False, False,
                           f"{type(exc).__name__}: {exc}")
    diff = abs(lv - rv)
    tol = tol_scale * (lb + rb + extra + TOLERANCE_FLOOR)
    return CheckRecord(name, lv, rv, diff, tol, diff <= tol, math.isfinite(diff))


def _exact_check(name: str, lhs: Fraction, rhs: Fraction) -> CheckRecord:
    diff = abs(lhs - rhs)
    return CheckRecord(name, float(lhs), float(rhs), float(diff), 0.0, diff == 0,
                       detail=f"{lhs} vs {rhs}")


def run_crosschecks(
    policy: SeriesPolicy = series_core.DEFAULT_POLICY,
    cfg: QuadConfig = quadrature.DEFAULT_CONFIG,
    tol_scale: float = 1.0,
) -> VerificationReport:
    """Run every cross-route check in a fixed order; failures are recorded, not raised."""
    if not tol_scale > 0:
        raise ValueError(f"tol_scale must be > 0, got {tol_scale}")

    def ev(fn, *args):
        def run():
            r = fn(*args)
            return r.value, r.error_bound
        return run

    def gamma_ref():
        return gamma_reference(GAMMA_REFERENCE_TERMS), gamma_reference_bound()

    def gamma_via_ei():
        q = quadrature.ei_quadrature(1.0, cfg)
        t = series_core.puiseux_tail(1.0, policy)
        return q.value - math.log(1.0) - t.value, q.error_bound + t.error_bound

    def ref_minus_ei_one():
        g, gb = gamma_ref()
        q = quadrature.ei_quadrature(1.0, cfg)
        return g - q.value, gb + q.error_bound

    records = []
    for x in ROUTE_GRID:
        records.append(_float_check(
            f"theorem1_grid[x={x:g}]",
            ev(series_core.ei_series, x, policy),
            ev(quadrature.ei_quadrature, x, cfg),
            tol_scale,
        ))

    gamma_integral = lambda: _quad(quadrature.gamma_integral(cfg))  # noqa: E731
    records.append(_float_check("gamma_three_ways[integral~reference]",
                                gamma_integral, gamma_ref, tol_scale))
    records.append(_float_check("gamma_three_ways[integral~ei_route]",
                                gamma_integral, gamma_via_ei, tol_scale))
    records.append(_float_check("gamma_three_ways[reference~ei_route]",
                                gamma_ref, gamma_via_ei, tol_scale))

    records.append(_float_check("ei_one_identity", ev(series_core.ei_one, policy),
                                ev(quadrature.ei_quadrature, 1.0, cfg), tol_scale))
    records.append(_float_check("lemma2", lambda: _quad(quadrature.lemma2_integral(cfg)),
                                ref_minus_ei_one, tol_scale))
    records.append(_float_check("interchange", ev(series_core.alternating_harmonic_exp_sum, policy),
                                ref_minus_ei_one, tol_scale))

    for x in LEMMA1_GRID:
        def ei_difference(x=x):
            a = series_core.ei_series(x, policy)
            b = series_core.ei_one(policy)
            return a.value - b.value, a.error_bound + b.error_bound
        records.append(_float_check(f"lemma1_route[x={x:g}]",
                                    ev(series_core.lemma1_series, x, policy),
                                    ei_difference, tol_scale))

    for x in GOODWIN_STATON_GRID:
        records.append(_float_check(
            f"goodwin_staton[x={x:g}]",
            lambda x=x: _quad(derived.goodwin_staton_lhs(x, cfg)),
            ev(derived.goodwin_staton_rhs, x, policy),
            tol_scale,
        ))

    records.extend(_soldner_checks(policy, cfg, tol_scale))

    for n in EXACT_RANGE:
        records.append(_exact_check(f"exact_identities[binomial_harmonic,n={n}]",
                                    series_core.binomial_harmonic_lhs(n), Fraction(1, n)))
    for n in EXACT_RANGE:
        records.append(_exact_check(f"exact_identities[convolution,n={n}]",
                                    series_core.convolution_coefficient_check(n),
                                    Fraction(1, n * math.factorial(n))))

    return VerificationReport(tuple(records), _timestamp())


def _soldner_checks(policy, cfg, tol_scale):
    names = ("soldner[series]", "soldner[quadrature]")
    try:
        mu = derived.soldner_constant(SOLDNER_TOL, policy)
        at_root = derived.li(mu, policy)
    except EikitError as exc:
        msg = f"{type(exc).__name__}: {exc}"
        return [CheckRecord(n, math.nan, 0.0, math.inf, math.nan, False, False, msg) for n in names]
    # li' = 1/log x, so the bracket width moves li by at most tol / log(mu); the
    # quadrature route also inherits the series error that placed the root
    root_slack = SOLDNER_TOL / abs(math.log(mu))
    return [
        _float_check(names[0], lambda: (at_root.value, at_root.error_bound),
                     lambda: (0.0, 0.0), tol_scale, root_slack),
        _float_check(names[1], lambda: _li_quad(mu, cfg), lambda: (0.0, 0.0), tol_scale,
                     root_slack + at_root.error_bound),
    ]


def _li_quad(mu, cfg):
    r = derived.li_quadrature(mu, cfg)
    return r.value, r.error_bound
