"""Result and policy records shared by the evaluators."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Method(str, enum.Enum):
    PUISEUX_SERIES = "PuiseuxSeries"
    LEMMA1_SERIES = "Lemma1Series"
    CPV_QUADRATURE = "CpvQuadrature"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SeriesPolicy:
    """When to stop summing a series.

    A sum stops once the next omitted terms are certified below
    ``max(abs_tol, rel_tol * |partial sum|)``; running into ``max_terms`` first
    raises :class:`~eikit.errors.NonConvergence`.
    """

    abs_tol: float = 1e-14
    rel_tol: float = 0.0
    max_terms: int = 1000

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be > 0, got {self.abs_tol}")
        if not self.rel_tol >= 0:
            raise ValueError(f"rel_tol must be >= 0, got {self.rel_tol}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ValueError(f"max_terms must be a positive integer, got {self.max_terms}")


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    tail_cut_tol: float = 1e-14

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be > 0, got {self.abs_tol}")
        if not self.tail_cut_tol > 0:
            raise ValueError(f"tail_cut_tol must be > 0, got {self.tail_cut_tol}")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise ValueError(
                f"max_subdivisions must be a positive integer, got {self.max_subdivisions}"
            )


@dataclass(frozen=True)
class EvalResult:
    """A function value with a bound on its total error.

    ``work`` counts series terms or integrand evaluations, depending on
    ``method``.  ``amplification`` is the cancellation factor
    sum(|parts|) / |value| for routes that report it (1.0 otherwise).
    """

    value: float
    error_bound: float
    method: Method
    work: int
    amplification: float = 1.0

    def __post_init__(self):
        if not (self.error_bound >= 0 and math.isfinite(self.error_bound)):
            raise ValueError(f"error_bound must be finite and >= 0, got {self.error_bound}")

    @property
    def cancellation_warning(self) -> bool:
        return self.amplification > 1e3


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool
