"""Exception hierarchy shared by the library and the command-line front end."""


class SpdcError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class DomainError(SpdcError, ValueError):
    """An argument lies outside the domain where a formula is defined."""

    exit_code = 3


class PhysicsError(SpdcError):
    """No physical solution exists, e.g. phase matching cannot be reached."""

    exit_code = 3


class NumericalError(SpdcError, ArithmeticError):
    """A numerical procedure failed (non-finite samples, SVD breakdown, no crossing)."""

    exit_code = 4


class ConfigError(SpdcError, ValueError):
    """Invalid run configuration or grid parameters."""

    exit_code = 2


class RegimeWarning(UserWarning):
    """An asymptotic formula is evaluated outside its regime of validity."""
