"""Exponential integral Ei and relatives, computed by independent routes.

The Puiseux series, an iterated-integration-by-parts series and a
principal-value quadrature each give Ei; :mod:`eikit.verify` checks that they
agree within their reported error bounds.
"""

from ._accel import backend
from .derived import (
    erf_scaled_core,
    goodwin_staton,
    goodwin_staton_lhs,
    goodwin_staton_rhs,
    li,
    li_quadrature,
    soldner_constant,
)
from .errors import ConsistencyError, DomainError, EikitError, NonConvergence
from .quadrature import (
    RegularizedPoleIntegrand,
    cpv_integrate,
    ei_quadrature,
    gamma_integral,
    integrate_adaptive,
    lemma2_integral,
)
from .results import EvalResult, Method, QuadConfig, QuadResult, SeriesPolicy
from .series_core import (
    GAMMA_REF,
    alternating_harmonic_exp_sum,
    binomial_harmonic_lhs,
    convolution_coefficient_check,
    ei_one,
    ei_series,
    harmonic,
    iterated_antiderivative_log,
    lemma1_series,
    puiseux_tail,
)
from .verify import gamma_reference, run_crosschecks

__version__ = "0.1.0"
