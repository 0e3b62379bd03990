import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eikit import quadrature, series_core
from eikit.errors import DomainError, NonConvergence
from eikit.results import EvalResult, Method, SeriesPolicy
from eikit.series_core import GAMMA_REF

# Frozen from an exact-rational brute force of 30 terms (see the oracle test below).
TAIL_AT_ONE = 1.3179021514544038
TAIL_AT_MINUS_ONE = -0.7965995992970531
EI_MINUS_ONE = -0.21938393439552027
# Ei(2) - Ei(1) and Ei(1/2) - Ei(1), from the series route.
LEMMA1_AT_TWO = 3.0591165396459534
LEMMA1_AT_HALF = -1.4408979114927632


def brute_tail(x, terms=30):
    xq = Fraction(x)
    return float(sum(xq**n / (n * math.factorial(n)) for n in range(1, terms + 1)))


def test_brute_force_oracle_reproduces_frozen_tails():
    assert brute_tail(1.0) == pytest.approx(TAIL_AT_ONE, abs=1e-16)
    assert brute_tail(-1.0) == pytest.approx(TAIL_AT_MINUS_ONE, abs=1e-16)


@pytest.mark.parametrize("n, expected", [(0, Fraction(0)), (1, Fraction(1)), (4, Fraction(25, 12))])
def test_harmonic_examples(n, expected):
    assert series_core.harmonic(n) == expected


def test_harmonic_matches_direct_sum():
    for n in range(60):
        assert series_core.harmonic(n) == sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


@given(st.integers(min_value=1, max_value=400))
def test_harmonic_recurrence(n):
    assert series_core.harmonic(n) - series_core.harmonic(n - 1) == Fraction(1, n)


def test_harmonic_rejects_negative():
    with pytest.raises(DomainError):
        series_core.harmonic(-1)


def test_puiseux_tail_examples():
    assert series_core.puiseux_tail(0.0).value == 0.0
    r1 = series_core.puiseux_tail(1.0)
    assert abs(r1.value - TAIL_AT_ONE) <= r1.error_bound + 1e-16
    rm = series_core.puiseux_tail(-1.0)
    assert abs(rm.value - TAIL_AT_MINUS_ONE) <= rm.error_bound + 1e-16
    assert r1.method is Method.PUISEUX_SERIES


@pytest.mark.parametrize("x", [-6.0, -3.0, -0.7, 0.3, 2.5, 5.0, 8.0])
def test_puiseux_tail_bound_covers_exact_sum(x):
    r = series_core.puiseux_tail(x)
    exact = brute_tail(x, terms=80)
    assert abs(r.value - exact) <= r.error_bound
    # round-off grows with the sum of |terms|, which is the tail at |x|
    assert r.error_bound < 1e-14 * max(1.0, brute_tail(abs(x), terms=80))


def test_puiseux_tail_monotone_on_positive_axis():
    xs = [0.01 * k for k in range(1, 800)]
    vals = [series_core.puiseux_tail(x).value for x in xs]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_puiseux_tail_nonconvergence():
    with pytest.raises(NonConvergence):
        series_core.puiseux_tail(1.0, SeriesPolicy(max_terms=2))


def test_puiseux_tail_rejects_non_finite():
    with pytest.raises(DomainError):
        series_core.puiseux_tail(math.inf)


def test_ei_series_examples():
    assert round(series_core.ei_series(1.0).value, 3) == 1.895
    r = series_core.ei_series(-1.0)
    assert abs(r.value - EI_MINUS_ONE) <= r.error_bound


def test_ei_series_near_zero_reduces_to_log():
    for x in (1e-10, -1e-10, 1e-6):
        r = series_core.ei_series(x)
        assert abs(r.value - math.log(abs(x)) - GAMMA_REF) <= 2 * abs(x)


def test_ei_series_domain():
    with pytest.raises(DomainError, match="nonzero"):
        series_core.ei_series(0.0)


def test_ei_one():
    r = series_core.ei_one()
    assert round(r.value, 3) == 1.895
    assert r.value > GAMMA_REF + 1
    assert r.value == pytest.approx(1.8951178163559368, abs=r.error_bound + 1e-15)


def test_gamma_ref_is_stored_to_double_precision():
    assert GAMMA_REF == 0.5772156649015329


@pytest.mark.parametrize("n, x, expected", [
    (0, 3.7, math.log(3.7)),
    (0, -0.2, math.log(0.2)),
    (1, 1.0, -1.0),
    (2, math.e, -math.e**2 / 4),
])
def test_iterated_antiderivative_examples(n, x, expected):
    assert series_core.iterated_antiderivative_log(n, x) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("x", [-3.5, -1.5, -0.5, 0.5, 1.5, 3.5])
@pytest.mark.parametrize("n", range(1, 9))
def test_iterated_antiderivative_finite_difference(n, x):
    f = series_core.iterated_antiderivative_log
    h = 1e-5 * max(1.0, abs(x))
    fd = (f(n, x + h) - f(n, x - h)) / (2 * h)
    assert fd == pytest.approx(f(n - 1, x), rel=1e-6)


def test_iterated_antiderivative_domain():
    with pytest.raises(DomainError):
        series_core.iterated_antiderivative_log(3, 0.0)


def test_lemma1_examples():
    assert series_core.lemma1_series(1.0).value == 0.0
    r2 = series_core.lemma1_series(2.0)
    assert abs(r2.value - LEMMA1_AT_TWO) <= r2.error_bound + 1e-15
    rh = series_core.lemma1_series(0.5)
    assert abs(rh.value - LEMMA1_AT_HALF) <= rh.error_bound + 1e-15
    assert r2.method is Method.LEMMA1_SERIES


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, -0.5, -2.0, 3.0])
def test_lemma1_agrees_with_puiseux_route(x):
    a = series_core.lemma1_series(x)
    e = series_core.ei_series(x)
    one = series_core.ei_one()
    assert abs(a.value - (e.value - one.value)) <= a.error_bound + e.error_bound + one.error_bound


def test_lemma1_flags_cancellation():
    assert series_core.lemma1_series(1.0).cancellation_warning
    assert series_core.lemma1_series(1.0 + 1e-9).cancellation_warning
    assert not series_core.lemma1_series(2.0).cancellation_warning


def test_lemma1_nonconvergence_and_domain():
    with pytest.raises(NonConvergence):
        series_core.lemma1_series(2.0, SeriesPolicy(max_terms=3))
    with pytest.raises(DomainError):
        series_core.lemma1_series(0.0)


def test_alternating_harmonic_exp_sum():
    r = series_core.alternating_harmonic_exp_sum()
    assert r.value < 0
    tail = series_core.puiseux_tail(1.0)
    assert abs(r.value + tail.value) <= r.error_bound + tail.error_bound
    assert abs(r.value + TAIL_AT_ONE) <= r.error_bound + 1e-16


def test_alternating_partial_sums_bracket_limit():
    sums = series_core.alternating_harmonic_partial_sums()
    limit = sums[-1][0] + sums[-1][1]  # within |term_{N+2}| of the true limit
    # brute-force the index from which |H_n / n!| decreases
    mags = [series_core.harmonic(n) / math.factorial(n) for n in range(len(sums) + 2)]
    start = next(m for m in range(1, len(mags)) if all(mags[k + 1] < mags[k] for k in range(m, len(mags) - 1)))
    assert start == 1
    for (s0, t0, _), (s1, _, _) in zip(sums[start:], sums[start + 1:-1]):
        assert (s0 - limit) * (s1 - limit) < 0
        assert abs(s0 - limit) <= abs(t0)


def test_alternating_nonconvergence():
    with pytest.raises(NonConvergence):
        series_core.alternating_harmonic_exp_sum(SeriesPolicy(max_terms=2))


def brute_binomial_harmonic(n):
    total = Fraction(0)
    for k in range(n + 1):
        h = sum((Fraction(1, j) for j in range(1, k + 1)), Fraction(0))
        total += math.comb(n, k) * h * (-1) ** (k + 1)
    return total


@pytest.mark.parametrize("n, expected", [(1, Fraction(1)), (2, Fraction(1, 2)), (5, Fraction(1, 5))])
def test_binomial_harmonic_examples(n, expected):
    assert series_core.binomial_harmonic_lhs(n) == expected
    assert brute_binomial_harmonic(n) == expected


@pytest.mark.parametrize("n", range(1, 31))
def test_binomial_harmonic_identity(n):
    assert series_core.binomial_harmonic_lhs(n) == Fraction(1, n)


@pytest.mark.parametrize("n, expected", [(1, Fraction(1)), (2, Fraction(1, 4)), (7, Fraction(1, 7 * 5040))])
def test_convolution_examples(n, expected):
    assert series_core.convolution_coefficient_check(n) == expected


@pytest.mark.parametrize("n", range(1, 31))
def test_convolution_identity(n):
    assert series_core.convolution_coefficient_check(n) == Fraction(1, n * math.factorial(n))


def test_exact_identity_domains():
    with pytest.raises(DomainError):
        series_core.binomial_harmonic_lhs(0)
    with pytest.raises(DomainError):
        series_core.convolution_coefficient_check(0)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-8, max_value=8, allow_nan=False).filter(lambda v: abs(v) > 1e-3))
def test_ei_series_matches_quadrature_property(x):
    s = series_core.ei_series(x)
    q = quadrature.ei_quadrature(x)
    assert abs(s.value - q.value) <= s.error_bound + q.error_bound + 1e-12


@pytest.mark.parametrize("kwargs", [
    dict(abs_tol=0.0), dict(abs_tol=-1.0), dict(rel_tol=-1e-3), dict(max_terms=0), dict(max_terms=2.5),
])
def test_policy_validation(kwargs):
    with pytest.raises(ValueError):
        SeriesPolicy(**kwargs)


def test_eval_result_invariants():
    with pytest.raises(ValueError):
        EvalResult(1.0, -1.0, Method.PUISEUX_SERIES, 1)
    with pytest.raises(ValueError):
        EvalResult(1.0, math.inf, Method.PUISEUX_SERIES, 1)
