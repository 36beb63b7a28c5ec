"""Exception hierarchy shared by all modules."""


class LfracError(Exception):
    """Base class for every error raised by the package."""


class DomainError(LfracError, ValueError):
    """An argument lies outside the region where the quantity is defined."""


class ParameterError(DomainError):
    """Parameters violate an admissibility condition."""

    def __init__(self, message, n=None, m=None):
        super().__init__(message)
        self.n = n
        self.m = m


class IllConditionedError(ParameterError):
    """Parameters are admissible but numerically too close to a violation."""


class PoleError(DomainError):
    """A Gamma factor was evaluated at one of its poles."""


class ContourError(DomainError):
    """An integration contour passes too close to a singularity."""


class UnsupportedRegimeError(DomainError):
    """The requested method is not valid for these parameters."""


class SeriesDivergenceError(LfracError, ArithmeticError):
    """A power series failed to converge within the term or precision budget."""


class ConvergenceError(LfracError, ArithmeticError):
    """A quadrature did not reach the requested tolerance."""
