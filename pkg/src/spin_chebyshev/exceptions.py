"""Exception hierarchy for spin_chebyshev."""


class SpinChebyshevError(Exception):
    """Base class for all package errors."""


class DomainError(SpinChebyshevError, ValueError):
    """Quantum numbers, ranks or directions outside their allowed range."""


class InsufficientGridError(DomainError):
    """Quadrature grid is not exact to the degree a computation needs."""


class ToleranceError(SpinChebyshevError):
    """An identity residual exceeded its tolerance."""
