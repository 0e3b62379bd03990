class EikitError(Exception):
    """Base class for errors raised by eikit."""


class DomainError(EikitError, ValueError):
    """Argument outside the domain of the function (e.g. Ei at 0, li at 1)."""


class NonConvergence(EikitError, ArithmeticError):
    """A series or quadrature ran out of budget before meeting its tolerance."""


class ConsistencyError(EikitError, ValueError):
    """Caller-supplied data contradicts itself (e.g. a wrong pole limit)."""
