import math

import numpy as np
import pytest

from eikit import derived, quadrature
from eikit.errors import DomainError, NonConvergence
from eikit.results import QuadConfig, SeriesPolicy

LI_TWO = 1.0451637801174928
SOLDNER = 1.451369234883381
EXP_SQUARE_INTEGRAL_ONE = 1.4626517459071816
# Goodwin-Staton integral at x = 1, from the quadrature side
GOODWIN_STATON_ONE = 0.6051336525033446


def test_li_examples():
    assert round(derived.li(math.e).value, 3) == 1.895
    r = derived.li(2.0)
    assert abs(r.value - LI_TWO) <= r.error_bound
    q = derived.li_quadrature(2.0)
    assert abs(q.value - LI_TWO) <= q.error_bound


@pytest.mark.parametrize("x", [1.0, 0.0, -2.0, math.inf])
def test_li_domain(x):
    with pytest.raises(DomainError):
        derived.li(x)


def test_li_below_one_matches_quadrature():
    for x in (0.05, 0.3, 0.9):
        s = derived.li(x)
        q = derived.li_quadrature(x)
        assert s.value < 0
        assert abs(s.value - q.value) <= s.error_bound + q.error_bound


def test_li_increasing_above_one():
    vals = [derived.li(x).value for x in np.linspace(1.01, 50.0, 200)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_soldner_constant():
    mu = derived.soldner_constant(1e-12)
    assert round(mu, 3) == 1.451
    assert mu == pytest.approx(SOLDNER, abs=1e-12)
    assert abs(derived.li(mu).value) <= 10 * 1e-12 / abs(math.log(mu))
    assert abs(derived.li(mu).value) < 1e-9
    assert abs(derived.li_quadrature(mu).value) < 1e-9


def test_soldner_with_coarse_tolerance():
    mu = derived.soldner_constant(1e-4)
    assert abs(derived.li(mu).value) <= 10 * 1e-4 / abs(math.log(mu))


def test_soldner_rejects_bad_tol():
    with pytest.raises(ValueError):
        derived.soldner_constant(0.0)


def test_soldner_propagates_nonconvergence():
    with pytest.raises(NonConvergence):
        derived.soldner_constant(1e-12, SeriesPolicy(max_terms=2))


def test_exp_square_integral_examples():
    assert derived.erf_scaled_core(0.0).value == 0.0
    r = derived.erf_scaled_core(1.0)
    oracle = quadrature.integrate_adaptive(lambda t: np.exp(t * t), 0.0, 1.0, QuadConfig(abs_tol=1e-14))
    assert oracle.value == pytest.approx(EXP_SQUARE_INTEGRAL_ONE, abs=1e-15)
    assert abs(r.value - EXP_SQUARE_INTEGRAL_ONE) <= r.error_bound + 1e-15


@pytest.mark.parametrize("x", [0.3, 1.7, 4.0, 6.0])
def test_exp_square_integral_is_odd(x):
    assert derived.erf_scaled_core(-x).value == -derived.erf_scaled_core(x).value


@pytest.mark.parametrize("x", [0.5, 1.0])
def test_exp_square_integral_derivative(x):
    h = 1e-5
    f = derived.erf_scaled_core
    fd = (f(x + h).value - f(x - h).value) / (2 * h)
    assert fd == pytest.approx(math.exp(x * x), rel=1e-6)


@pytest.mark.parametrize("x", [2.5, 6.0])
def test_exp_square_integral_matches_quadrature(x):
    r = derived.erf_scaled_core(x)
    q = quadrature.integrate_adaptive(lambda t: np.exp(t * t), 0.0, x, QuadConfig(abs_tol=1e-12 * r.value))
    assert abs(r.value - q.value) <= r.error_bound + q.error_estimate


def test_exp_square_integral_domain():
    with pytest.raises(DomainError):
        derived.erf_scaled_core(6.5)


def test_goodwin_staton_lhs_bounds():
    for x in (0.1, 1.0, 5.0):
        r = derived.goodwin_staton_lhs(x)
        assert r.converged
        assert 0 < r.value < math.sqrt(math.pi) / (2 * x)


def test_goodwin_staton_value_at_one():
    lhs = derived.goodwin_staton_lhs(1.0)
    rhs = derived.goodwin_staton_rhs(1.0)
    assert abs(lhs.value - GOODWIN_STATON_ONE) <= lhs.error_estimate + 1e-15
    assert abs(rhs.value - GOODWIN_STATON_ONE) <= rhs.error_bound + 1e-15


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 3.0])
def test_goodwin_staton_identity(x):
    lhs = derived.goodwin_staton_lhs(x)
    rhs = derived.goodwin_staton_rhs(x)
    assert abs(lhs.value - rhs.value) <= lhs.error_estimate + rhs.error_bound + 1e-9


def test_goodwin_staton_small_x_diverges_logarithmically():
    for x in (1e-2, 1e-4):
        lhs = derived.goodwin_staton_lhs(x)
        rhs = derived.goodwin_staton_rhs(x)
        assert abs(lhs.value - rhs.value) <= lhs.error_estimate + rhs.error_bound + 1e-9
        # -Ei(x^2)/2 ~ -log(x), which dominates as x -> 0+
        assert rhs.value == pytest.approx(-math.log(x), rel=0.2)


def test_goodwin_staton_domain():
    for x in (0.0, -1.0):
        with pytest.raises(DomainError):
            derived.goodwin_staton_lhs(x)
        with pytest.raises(DomainError):
            derived.goodwin_staton_rhs(x)
    with pytest.raises(DomainError):
        derived.goodwin_staton_rhs(3.5)


def test_goodwin_staton_check_recomputes_diff():
    check = derived.goodwin_staton(2.0)
    assert check.abs_diff == abs(check.lhs - check.rhs)
    assert check.abs_diff <= check.lhs_error + check.rhs_error + 1e-9


def test_gaussian_tail_cut():
    cut, bound = derived.gaussian_tail_cut(0.5, 1e-14)
    assert bound <= 1e-14
    tail = quadrature.integrate_adaptive(lambda t: np.exp(-t * t) / (t + 0.5), cut, cut + 10)
    assert tail.value <= bound
