"""Series evaluators for Ei and exact harmonic-number identities.

Floating-point sums run in the compensated kernels of :mod:`eikit._kernels`;
anything involving harmonic numbers is summed in exact rationals
(:class:`fractions.Fraction`) and rounded once at the end.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import _kernels
from .errors import DomainError, NonConvergence
from .results import EvalResult, Method, SeriesPolicy

GAMMA_REF = 0.57721566490153286060
UNIT_ROUNDOFF = _kernels.UNIT_ROUNDOFF
X_MAX_LEMMA1 = 4.0
DEFAULT_POLICY = SeriesPolicy()


def harmonic_range(a: int, b: int) -> tuple[int, int]:
    """Unreduced ``(p, q)`` with p/q = sum of 1/k for a <= k < b, by binary splitting."""
    if b - a <= 32:
        p, q = 0, 1
        for k in range(a, b):
            p = p * k + q
            q *= k
        return p, q
    mid = (a + b) // 2
    p1, q1 = harmonic_range(a, mid)
    p2, q2 = harmonic_range(mid, b)
    return p1 * q2 + p2 * q1, q1 * q2


def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n exactly; H_0 = 0."""
    if n < 0:
        raise DomainError(f"harmonic number needs n >= 0, got {n}")
    if n == 0:
        return Fraction(0)
    return Fraction(*harmonic_range(1, n + 1))


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x}")
    return x


def _check_nonzero(x: float, what: str = "Ei") -> float:
    x = _check_finite(x)
    if x == 0.0:
        raise DomainError(f"{what} is defined on the nonzero reals R^x; x = 0 is excluded")
    return x


def puiseux_tail(x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> EvalResult:
    """Power-series part of Ei: the sum of x^n / (n n!) over n >= 1."""
    x = _check_finite(x)
    value, tail, roundoff, terms, converged = _kernels.puiseux_sum(
        x, policy.abs_tol, policy.rel_tol, policy.max_terms
    )
    if not converged:
        raise NonConvergence(
            f"Puiseux tail at x={x!r} not within tolerance after {terms} terms"
        )
    return EvalResult(value, tail + roundoff, Method.PUISEUX_SERIES, terms)


def ei_series(x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> EvalResult:
    """Ei(x) = gamma + log|x| + sum_{n>=1} x^n / (n n!)."""
    x = _check_nonzero(x)
    tail = puiseux_tail(x, policy)
    log_part = math.log(abs(x))
    head = GAMMA_REF + log_part
    value = head + tail.value
    err = tail.error_bound + UNIT_ROUNDOFF * (
        GAMMA_REF + 2.0 * abs(log_part) + abs(head) + abs(value)
    )
    return EvalResult(value, err, Method.PUISEUX_SERIES, tail.work)


def ei_one(policy: SeriesPolicy = DEFAULT_POLICY) -> EvalResult:
    tail = puiseux_tail(1.0, policy)
    value = GAMMA_REF + tail.value
    err = tail.error_bound + UNIT_ROUNDOFF * (GAMMA_REF + abs(value))
    return EvalResult(value, err, Method.PUISEUX_SERIES, tail.work)


def iterated_antiderivative_log(n: int, x: float) -> float:
    """n-fold antiderivative of 1/x: x^n / n! * (log|x| - H_n)."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    x = _check_nonzero(x, "the antiderivative of 1/x")
    scale = 1.0
    for k in range(1, n + 1):
        scale *= x / k
    return scale * (math.log(abs(x)) - float(harmonic(n)))


def _harmonic_exp_series(z: Fraction, weight: float, target: float, max_terms: int):
    """Exact partial sum of sum_{n>=0} (-1)^n H_n z^n / n!.

    Stops at the first N >= 1 where ``weight`` * |term_N| <= target / 2 and the
    term ratio bound |z| (n + 2) / (n + 1)^2 is <= 1/2, so the discarded tail is
    at most 2 |term_{N+1}|.  Returns ``(partial, next_term, terms_summed)``.
    """
    az = abs(float(z))
    total = Fraction(0)
    power = Fraction(1)  # z^n / n!
    h = Fraction(0)
    n = 0
    while True:
        term = h * power if n % 2 == 0 else -h * power
        total += term
        power = power * z / (n + 1)
        h += Fraction(1, n + 1)
        nxt = h * power if (n + 1) % 2 == 0 else -h * power
        if (
            n >= 1
            and weight * abs(float(term)) <= 0.5 * target
            and az * (n + 2) <= 0.5 * (n + 1) ** 2
        ):
            return total, nxt, n + 1
        if n + 1 >= max_terms:
            raise NonConvergence(f"harmonic-exponential series at z={z} hit max_terms={max_terms}")
        n += 1


def lemma1_series(x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> EvalResult:
    """Integral of e^t / t from 1 to x via repeated integration by parts.

    log|x| + e^x sum (-1)^(n+1) H_n x^n / n! + e sum (-1)^n H_n / n!, with both
    series summed exactly.  Rounding error is dominated by the final three-way
    sum, whose cancellation factor is reported as ``amplification``.
    """
    x = _check_nonzero(x)
    exp_x = math.exp(x)
    target = policy.abs_tol
    sx, nx, terms_x = _harmonic_exp_series(Fraction(x), exp_x, target, policy.max_terms)
    s1, n1, terms_1 = _harmonic_exp_series(Fraction(1), math.e, target, policy.max_terms)
    parts = (math.log(abs(x)), exp_x * float(-sx), math.e * float(s1))
    value = math.fsum(parts)
    tails = 2.0 * (exp_x * abs(float(nx)) + math.e * abs(float(n1)))
    roundoff = UNIT_ROUNDOFF * (
        2.0 * abs(parts[0]) + 4.0 * abs(parts[1]) + 3.0 * abs(parts[2]) + abs(value)
    )
    magnitude = sum(abs(p) for p in parts)
    amplification = magnitude / abs(value) if value != 0.0 else math.inf
    return EvalResult(
        value,
        tails * (1.0 + 8.0 * UNIT_ROUNDOFF) + roundoff,
        Method.LEMMA1_SERIES,
        terms_x + terms_1,
        amplification=max(1.0, amplification),
    )


def alternating_harmonic_exp_sum(policy: SeriesPolicy = DEFAULT_POLICY) -> EvalResult:
    """e * sum_{n>=0} (-1)^n H_n / n!, which equals gamma - Ei(1)."""
    total, nxt, terms = alternating_harmonic_partial_sums(policy)[-1]
    value = math.e * float(total)
    err = math.e * abs(float(nxt)) * (1.0 + 4.0 * UNIT_ROUNDOFF) + 3.0 * UNIT_ROUNDOFF * abs(value)
    return EvalResult(value, err, Method.PUISEUX_SERIES, terms)


def alternating_harmonic_partial_sums(policy: SeriesPolicy = DEFAULT_POLICY):
    """Exact partial sums ``(S_N, term_{N+1}, N + 1)`` up to the truncation index.

    Terms H_n / n! decrease from n = 1 on, so the series alternates around its
    limit and |S - S_N| <= |term_{N+1}|.
    """
    out = []
    total = Fraction(0)
    inv_fact = Fraction(1)
    h = Fraction(0)
    n = 0
    while True:
        total += h * inv_fact if n % 2 == 0 else -h * inv_fact
        inv_fact /= n + 1
        h += Fraction(1, n + 1)
        nxt = h * inv_fact if (n + 1) % 2 == 0 else -h * inv_fact
        out.append((total, nxt, n + 1))
        if n >= 1 and math.e * float(abs(nxt)) <= 0.5 * policy.abs_tol:
            return out
        if n + 1 >= policy.max_terms:
            raise NonConvergence(f"alternating harmonic sum hit max_terms={policy.max_terms}")
        n += 1


def binomial_harmonic_lhs(n: int) -> Fraction:
    """sum_{k=0}^{n} C(n, k) H_k (-1)^(k+1), exactly; equals 1/n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    total = Fraction(0)
    h = Fraction(0)
    for k, c in enumerate(row):
        if k:
            h += Fraction(1, k)
        total += c * h if k % 2 else -c * h
    return total


def convolution_coefficient_check(n: int) -> Fraction:
    """Coefficient of x^n in e^x * sum_k (-1)^(k+1) H_k x^k / k!; equals 1/(n n!)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    fact = [1]
    for k in range(1, n + 1):
        fact.append(fact[-1] * k)
    total = Fraction(0)
    h = Fraction(0)
    for k in range(n + 1):
        if k:
            h += Fraction(1, k)
        sign = 1 if k % 2 else -1
        total += sign * h / (fact[k] * fact[n - k])
    return total
