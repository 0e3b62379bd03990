"""Hot numeric loops: compensated series sums and Gauss-Kronrod adaptive quadrature.

Everything here sticks to scalars, ``math`` and flat float64 arrays so the same
source runs under ``numba.njit`` or as plain Python (see :mod:`eikit._accel`).
"""

import math

import numpy as np

from ._accel import jit

UNIT_ROUNDOFF = 2.0**-53

# Built-in integrand codes understood by ``integrand``.
EXP_OVER_T = 0  # e^t / (t - p)
SINH_RATIO = 1  # (e^(p+s) - e^(p-s)) / s, the symmetric pole window of e^t/(t-p)
GAMMA_KERNEL = 2  # (1 - e^-t - e^(-1/t)) / t
LEMMA2_KERNEL = 3  # (1 - e^(1-t)) / (1 - t)
GAUSS_SHIFTED = 4  # e^(-t^2) / (t + p)
EXP_SQUARE = 5  # e^(t^2)

REMOVABLE_GUARD = 1e-12

# 15-point Kronrod abscissae (non-negative half) and weights, with the embedded
# 7-point Gauss weights on the odd-indexed Kronrod nodes.
XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])


@jit
def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


@jit
def integrand(kind, t, p):
    if kind == EXP_OVER_T:
        return math.exp(t) / (t - p)
    if kind == SINH_RATIO:
        if t == 0.0:
            return 2.0 * math.exp(p)
        return 2.0 * math.exp(p) * math.sinh(t) / t
    if kind == GAMMA_KERNEL:
        if t <= REMOVABLE_GUARD:
            return 1.0
        return (-math.expm1(-t) - math.exp(-1.0 / t)) / t
    if kind == LEMMA2_KERNEL:
        s = 1.0 - t
        if abs(s) <= REMOVABLE_GUARD:
            return -1.0
        return -math.expm1(s) / s
    if kind == GAUSS_SHIFTED:
        return math.exp(-t * t) / (t + p)
    if kind == EXP_SQUARE:
        return math.exp(t * t)
    return math.nan


@jit
def integrand_array(kind, t, p):
    out = np.empty(t.shape[0])
    for i in range(t.shape[0]):
        out[i] = integrand(kind, t[i], p)
    return out


@jit
def gk15(kind, p, lo, hi):
    """Kronrod-15 and Gauss-7 estimates of one integral over [lo, hi]."""
    centre = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    fc = integrand(kind, centre, p)
    kron = fc * WGK[7]
    gauss = fc * WG[3]
    for j in range(7):
        dx = half * XGK[j]
        fsum = integrand(kind, centre - dx, p) + integrand(kind, centre + dx, p)
        kron += WGK[j] * fsum
        if j % 2 == 1:
            gauss += WG[j // 2] * fsum
    return kron * half, gauss * half


@jit
def adaptive_gk(kind, p, a, b, abs_tol, max_subdivisions):
    """Depth-first bisection until every piece meets its share of ``abs_tol``.

    Returns ``(value, error_estimate, evaluations, converged)``.
    """
    length = b - a
    stack_lo = np.empty(max_subdivisions + 2)
    stack_hi = np.empty(max_subdivisions + 2)
    stack_lo[0] = a
    stack_hi[0] = b
    top = 1
    total = 0.0
    comp = 0.0
    err = 0.0
    evals = 0
    splits = 0
    converged = True
    while top > 0:
        top -= 1
        lo = stack_lo[top]
        hi = stack_hi[top]
        kron, gauss = gk15(kind, p, lo, hi)
        evals += 15
        local = abs(kron - gauss)
        share = abs_tol * (hi - lo) / length
        mid = 0.5 * (lo + hi)
        if local <= share or splits >= max_subdivisions or not (lo < mid < hi):
            if local > share:
                converged = False
            total, c = two_sum(total, kron)
            comp += c
            err += local
        else:
            splits += 1
            stack_lo[top] = mid
            stack_hi[top] = hi
            stack_lo[top + 1] = lo
            stack_hi[top + 1] = mid
            top += 2
    return total + comp, err, evals, converged


@jit
def puiseux_sum(x, abs_tol, rel_tol, max_terms):
    """Sum x^n / (n n!) for n >= 1 with a certified geometric tail bound.

    Returns ``(value, tail_bound, roundoff_bound, terms, converged)``.
    """
    term = x
    total = 0.0
    comp = 0.0
    weighted = 0.0
    ax = abs(x)
    n = 1
    while True:
        total, c = two_sum(total, term)
        comp += c
        weighted += 3.0 * n * abs(term)
        target = max(abs_tol, rel_tol * abs(total + comp))
        nxt = term * x * n / ((n + 1.0) * (n + 1.0))
        if abs(term) <= 0.5 * target and ax / (n + 1.0) <= 0.5:
            value = total + comp
            roundoff = UNIT_ROUNDOFF * (2.0 * abs(value) + weighted)
            return value, 2.0 * abs(nxt), roundoff, n, True
        if n >= max_terms:
            value = total + comp
            roundoff = UNIT_ROUNDOFF * (2.0 * abs(value) + weighted)
            return value, math.inf, roundoff, n, False
        term = nxt
        n += 1


@jit
def exp_square_integral_sum(x, abs_tol, rel_tol, max_terms):
    """Sum x^(2n+1) / (n! (2n+1)) for n >= 0, i.e. the integral of e^(t^2) over [0, x].

    Same return layout as ``puiseux_sum``.
    """
    x2 = x * x
    term = x
    total = 0.0
    comp = 0.0
    weighted = 0.0
    n = 0
    while True:
        total, c = two_sum(total, term)
        comp += c
        weighted += (5.0 * n + 1.0) * abs(term)
        target = max(abs_tol, rel_tol * abs(total + comp))
        nxt = term * x2 * (2.0 * n + 1.0) / ((n + 1.0) * (2.0 * n + 3.0))
        if abs(term) <= 0.5 * target and x2 / (n + 1.0) <= 0.5:
            value = total + comp
            roundoff = UNIT_ROUNDOFF * (2.0 * abs(value) + weighted)
            return value, 2.0 * abs(nxt), roundoff, n + 1, True
        if n + 1 >= max_terms:
            value = total + comp
            roundoff = UNIT_ROUNDOFF * (2.0 * abs(value) + weighted)
            return value, math.inf, roundoff, n + 1, False
        term = nxt
        n += 1
