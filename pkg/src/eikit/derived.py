"""Functions built on Ei: li, the Ramanujan-Soldner constant, and Goodwin-Staton."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernels
from .errors import DomainError, NonConvergence
from .quadrature import DEFAULT_CONFIG, BuiltinIntegrand, ei_quadrature, integrate_adaptive
from .results import EvalResult, Method, QuadConfig, QuadResult, SeriesPolicy
from .series_core import DEFAULT_POLICY, ei_series

UNIT_ROUNDOFF = _kernels.UNIT_ROUNDOFF
SQRT_PI = math.sqrt(math.pi)
EXP_SQUARE_X_MAX = 6.0
GOODWIN_STATON_X_MAX = 3.0


def _li_argument(x: float) -> float:
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise DomainError(f"li needs a finite x > 0, got {x}")
    if x == 1.0:
        raise DomainError("li is undefined at x = 1 (log 1 = 0 and Ei is undefined at 0)")
    return math.log(x)


def li(x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> EvalResult:
    """Logarithmic integral li(x) = Ei(log x), through the series route."""
    y = _li_argument(x)
    r = ei_series(y, policy)
    # rounding of log x moves Ei by at most |Ei'(y)| u |y| = u x
    return EvalResult(r.value, r.error_bound + UNIT_ROUNDOFF * x, r.method, r.work)


def li_quadrature(x: float, cfg: QuadConfig = DEFAULT_CONFIG) -> EvalResult:
    y = _li_argument(x)
    r = ei_quadrature(y, cfg)
    return EvalResult(r.value, r.error_bound + UNIT_ROUNDOFF * x, r.method, r.work)


def soldner_constant(tol: float = 1e-12, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Positive root of li, by bisection on [1.1, 2] then two guarded Newton steps."""
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    lo, hi = 1.1, 2.0
    if not li(lo, policy).value < 0.0 < li(hi, policy).value:
        raise NonConvergence("li does not change sign on [1.1, 2]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if li(mid, policy).value < 0.0:
            lo = mid
        else:
            hi = mid
    mu = 0.5 * (lo + hi)
    for _ in range(2):
        # li'(x) = 1 / log x
        step = li(mu, policy).value * math.log(mu)
        candidate = mu - step
        if lo <= candidate <= hi:
            mu = candidate
    return mu


def erf_scaled_core(x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> EvalResult:
    """Integral of e^(t^2) over [0, x] from sum x^(2n+1) / (n! (2n+1))."""
    x = float(x)
    if not math.isfinite(x) or abs(x) > EXP_SQUARE_X_MAX:
        raise DomainError(f"|x| must be <= {EXP_SQUARE_X_MAX}, got {x}")
    value, tail, roundoff, terms, converged = _kernels.exp_square_integral_sum(
        abs(x), policy.abs_tol, policy.rel_tol, policy.max_terms
    )
    if not converged:
        raise NonConvergence(f"e^(t^2) series at x={x!r} not within tolerance after {terms} terms")
    return EvalResult(math.copysign(value, x), tail + roundoff, Method.PUISEUX_SERIES, terms)


def goodwin_staton_rhs(x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> EvalResult:
    """e^(-x^2) sqrt(pi) int_0^x e^(t^2) dt - e^(-x^2) Ei(x^2) / 2."""
    x = float(x)
    if not (0.0 < x <= GOODWIN_STATON_X_MAX):
        raise DomainError(f"Goodwin-Staton needs 0 < x <= {GOODWIN_STATON_X_MAX}, got {x}")
    core = erf_scaled_core(x, policy)
    ei = ei_series(x * x, policy)
    w = math.exp(-x * x)
    a = SQRT_PI * core.value
    b = 0.5 * ei.value
    value = w * (a - b)
    err = w * (SQRT_PI * core.error_bound + 0.5 * ei.error_bound)
    err += UNIT_ROUNDOFF * (6.0 * w * (abs(a) + abs(b)) + 1.0)
    return EvalResult(value, err, Method.PUISEUX_SERIES, core.work + ei.work)


def gaussian_tail_cut(x: float, tol: float) -> tuple[float, float]:
    """Cut T with e^(-T^2) / (2T (T + x)) <= tol, and that tail bound."""
    t = 1.0
    while math.exp(-t * t) / (2.0 * t * (t + x)) > tol:
        t += 0.5
    return t, math.exp(-t * t) / (2.0 * t * (t + x))


def goodwin_staton_lhs(x: float, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """Integral of e^(-t^2) / (t + x) over [0, inf) by truncated adaptive quadrature."""
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise DomainError(f"Goodwin-Staton integral needs x > 0, got {x}")
    cut, tail = gaussian_tail_cut(x, cfg.tail_cut_tol)
    q = integrate_adaptive(BuiltinIntegrand(_kernels.GAUSS_SHIFTED, x), 0.0, cut, cfg)
    return QuadResult(q.value, q.error_estimate + tail, q.evaluations, q.converged)


@dataclass(frozen=True)
class GoodwinStatonCheck:
    x: float
    lhs: float
    rhs: float
    lhs_error: float = 0.0
    rhs_error: float = 0.0

    @property
    def abs_diff(self) -> float:
        return abs(self.lhs - self.rhs)


def goodwin_staton(
    x: float, policy: SeriesPolicy = DEFAULT_POLICY, cfg: QuadConfig = DEFAULT_CONFIG
) -> GoodwinStatonCheck:
    lhs = goodwin_staton_lhs(x, cfg)
    if not lhs.converged:
        raise NonConvergence(f"Goodwin-Staton quadrature at x={x!r} did not converge")
    rhs = goodwin_staton_rhs(x, policy)
    return GoodwinStatonCheck(x, lhs.value, rhs.value, lhs.error_estimate, rhs.error_bound)
