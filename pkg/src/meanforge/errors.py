"""Exception types shared across meanforge."""

from __future__ import annotations


class DomainError(ValueError):
    """Argument outside the domain of an operation (including branch-cut hits)."""


class QuadratureError(RuntimeError):
    """Quadrature could not produce a usable value.

    ``abscissa`` is set when the failure is a non-finite integrand value.
    """

    def __init__(self, message: str, abscissa: float | None = None):
        super().__init__(message)
        self.abscissa = abscissa


class ModeDisagreementError(QuadratureError):
    """Two independent evaluation routes of the same kernel disagree."""
