"""Exception hierarchy shared by the solver, models and CLI."""

from __future__ import annotations


class ValidationError(ValueError):
    """Bad input: parameter out of range, malformed file, unknown preset."""


class DomainError(ValidationError):
    """Argument outside the domain a routine supports."""


class NumericalError(ArithmeticError):
    """A computation produced NaN/Inf or failed to converge."""


class ConvergenceError(NumericalError):
    """An iterative evaluation did not meet its stopping rule."""
