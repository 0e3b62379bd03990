"""Adaptive Gauss-Kronrod quadrature, principal values, and the quadrature route to Ei.

Integrands are either plain Python callables, which must accept a 1-d float
array and return values of the same shape, or :class:`BuiltinIntegrand`
instances, which run the whole adaptive loop inside the compiled kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .errors import ConsistencyError, DomainError, NonConvergence
from .results import EvalResult, Method, QuadConfig, QuadResult

DEFAULT_CONFIG = QuadConfig()

_NODES = np.concatenate([-_kernels.XGK[:7], [0.0], _kernels.XGK[6::-1]])
_KRONROD_W = np.concatenate([_kernels.WGK[:7], [_kernels.WGK[7]], _kernels.WGK[6::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[[1, 3, 5]] = _kernels.WG[:3]
_GAUSS_W[7] = _kernels.WG[3]
_GAUSS_W[[13, 11, 9]] = _kernels.WG[:3]


@dataclass(frozen=True)
class BuiltinIntegrand:
    """One of the integrands compiled into :mod:`eikit._kernels`."""

    kind: int
    param: float = 0.0

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        flat = np.ascontiguousarray(arr.reshape(-1))
        out = _kernels.integrand_array(self.kind, flat, float(self.param)).reshape(arr.shape)
        return float(out) if out.ndim == 0 else out


GAMMA_INTEGRAND = BuiltinIntegrand(_kernels.GAMMA_KERNEL)
LEMMA2_INTEGRAND = BuiltinIntegrand(_kernels.LEMMA2_KERNEL)
EXP_OVER_T = BuiltinIntegrand(_kernels.EXP_OVER_T)


def _python_adaptive(f, a, b, abs_tol, max_subdivisions):
    length = b - a
    stack = [(a, b)]
    total = []
    err = 0.0
    evals = 0
    splits = 0
    converged = True
    while stack:
        lo, hi = stack.pop()
        centre = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        fv = np.broadcast_to(np.asarray(f(centre + half * _NODES), dtype=float), (15,))
        kron = half * float(_KRONROD_W @ fv)
        gauss = half * float(_GAUSS_W @ fv)
        evals += 15
        local = abs(kron - gauss)
        share = abs_tol * (hi - lo) / length
        if local <= share or splits >= max_subdivisions or not (lo < centre < hi):
            if local > share:
                converged = False
            total.append(kron)
            err += local
        else:
            splits += 1
            stack.append((centre, hi))
            stack.append((lo, centre))
    return math.fsum(total), err, evals, converged


def integrate_adaptive(f, a: float, b: float, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """Integrate ``f`` over [a, b] by bisection with a nested Kronrod-15 / Gauss-7 pair.

    Each piece is accepted once |K15 - G7| is within its length-proportional
    share of ``cfg.abs_tol``.  When ``cfg.max_subdivisions`` bisections are used
    up the remaining pieces are accepted as-is and ``converged`` is False.
    """
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise DomainError(f"need finite a < b, got [{a}, {b}]")
    if isinstance(f, BuiltinIntegrand):
        value, err, evals, ok = _kernels.adaptive_gk(
            f.kind, float(f.param), a, b, cfg.abs_tol, cfg.max_subdivisions
        )
    else:
        value, err, evals, ok = _python_adaptive(f, a, b, cfg.abs_tol, cfg.max_subdivisions)
    return QuadResult(float(value), float(err), int(evals), bool(ok))


@dataclass(frozen=True)
class RegularizedPoleIntegrand:
    """g(t) / (t - c) with a simple pole at c.

    ``limit_at_pole`` is the s -> 0 limit of (g(c+s) - g(c-s)) / s, i.e. 2 g'(c).
    The optional kernels replace the symmetric window and the one-sided
    remainder with compiled versions of the same functions.
    """

    numerator: Callable
    pole_location: float
    limit_at_pole: float
    symmetric_kernel: Optional[BuiltinIntegrand] = None
    plain_kernel: Optional[BuiltinIntegrand] = None

    def symmetric(self, s):
        s = np.asarray(s, dtype=float)
        c = self.pole_location
        g = self.numerator
        small = np.abs(s) <= _kernels.REMOVABLE_GUARD
        safe = np.where(small, 1.0, s)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = (np.asarray(g(c + safe), dtype=float) - np.asarray(g(c - safe), dtype=float)) / safe
        return np.where(small, self.limit_at_pole, out)

    def plain(self, t):
        t = np.asarray(t, dtype=float)
        return np.asarray(self.numerator(t), dtype=float) / (t - self.pole_location)


def exp_pole(c: float = 0.0) -> RegularizedPoleIntegrand:
    """e^t / (t - c), backed by the compiled kernels."""
    return RegularizedPoleIntegrand(
        numerator=np.exp,
        pole_location=float(c),
        limit_at_pole=2.0 * math.exp(c),
        symmetric_kernel=BuiltinIntegrand(_kernels.SINH_RATIO, float(c)),
        plain_kernel=BuiltinIntegrand(_kernels.EXP_OVER_T, float(c)),
    )


def cpv_integrate(
    g: RegularizedPoleIntegrand, a: float, b: float, cfg: QuadConfig = DEFAULT_CONFIG
) -> QuadResult:
    """Cauchy principal value of the integral of g(t)/(t-c) over [a, b].

    The largest window [c-r, c+r] inside [a, b] is folded onto [0, r] as
    (g(c+s) - g(c-s))/s, which is regular at s = 0; whatever is left of [a, b]
    on one side is integrated directly.  Each part gets half of the tolerance.
    """
    c = float(g.pole_location)
    a, b = float(a), float(b)
    if not a < c < b:
        raise DomainError(f"pole {c} must lie strictly inside ({a}, {b})")
    h = 1e-4
    probe = float(np.asarray(g.symmetric(np.array([h])))[0])
    if not abs(probe - g.limit_at_pole) <= 1e-6:
        raise ConsistencyError(
            f"limit_at_pole={g.limit_at_pole} disagrees with the difference quotient {probe} at h={h}"
        )
    half_cfg = replace(cfg, abs_tol=0.5 * cfg.abs_tol)
    r = min(c - a, b - c)
    window = integrate_adaptive(g.symmetric_kernel or g.symmetric, 0.0, r, half_cfg)
    plain = g.plain_kernel or g.plain
    if a < c - r:
        rest = integrate_adaptive(plain, a, c - r, half_cfg)
    elif c + r < b:
        rest = integrate_adaptive(plain, c + r, b, half_cfg)
    else:
        rest = QuadResult(0.0, 0.0, 0, True)
    return QuadResult(
        window.value + rest.value,
        window.error_estimate + rest.error_estimate,
        window.evaluations + rest.evaluations,
        window.converged and rest.converged,
    )


def exp_tail_cut(upper: float, tol: float) -> tuple[float, float]:
    """Cut point T <= min(upper, -1) with e^T/|T| <= tol, and that bound.

    |integral of e^t/t over (-inf, T]| <= e^T/|T| for T < 0.
    """
    t = min(upper, -1.0)
    while math.exp(t) / abs(t) > tol:
        t -= 1.0
    return t, math.exp(t) / abs(t)


def _negative_ei_part(upper: float, cfg: QuadConfig) -> tuple[QuadResult, float]:
    cut, tail = exp_tail_cut(upper, cfg.tail_cut_tol)
    if cut < upper:
        q = integrate_adaptive(EXP_OVER_T, cut, upper, cfg)
    else:
        q = QuadResult(0.0, 0.0, 0, True)
    return q, tail


def ei_quadrature(x: float, cfg: QuadConfig = DEFAULT_CONFIG) -> EvalResult:
    """Ei(x) as the principal value of the integral of e^t/t over (-inf, x].

    For x < 0 this is an ordinary integral, truncated at a cut T whose tail
    bound is added to the error.  For x > 0 the pole at 0 is handled by
    :func:`cpv_integrate` on [-max(x, 1), x], plus the same truncated tail.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x}")
    if x == 0.0:
        raise DomainError("Ei is defined on the nonzero reals R^x; x = 0 is excluded")
    if x < 0:
        q, tail = _negative_ei_part(x, cfg)
        parts = [q]
    else:
        b = max(x, 1.0)
        window = cpv_integrate(exp_pole(0.0), -b, x, cfg)
        q, tail = _negative_ei_part(-b, cfg)
        parts = [window, q]
    if not all(p.converged for p in parts):
        raise NonConvergence(f"quadrature for Ei({x!r}) exhausted its subdivision budget")
    value = math.fsum(p.value for p in parts)
    err = sum(p.error_estimate for p in parts) + tail
    err += _kernels.UNIT_ROUNDOFF * (sum(abs(p.value) for p in parts) + abs(value))
    return EvalResult(value, err, Method.CPV_QUADRATURE, sum(p.evaluations for p in parts))


def gamma_integral(cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """Integral of (1 - e^-t - e^(-1/t)) / t over (0, 1], which equals gamma."""
    return integrate_adaptive(GAMMA_INTEGRAND, 0.0, 1.0, cfg)


def lemma2_integral(cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """Integral of (1 - e^(1-t)) / (1 - t) over [0, 1), which equals gamma - Ei(1)."""
    return integrate_adaptive(LEMMA2_INTEGRAND, 0.0, 1.0, cfg)
