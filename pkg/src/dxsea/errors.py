"""Exception types shared by every module."""


class DxseaError(Exception):
    """Base class for all package errors."""


class DomainError(DxseaError, ValueError):
    """Argument outside the supported domain of a function."""


class NonConvergence(DxseaError, ArithmeticError):
    """A quadrature or series failed to meet its tolerance."""


class OscillatoryIntegral(DxseaError, ArithmeticError):
    """The requested improper integral oscillates without a limit."""


class RootNotBracketed(DxseaError, ArithmeticError):
    """Bisection was asked to search an interval without a sign change."""
