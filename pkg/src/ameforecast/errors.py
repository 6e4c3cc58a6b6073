"""Exception hierarchy shared by all ameforecast modules."""

from __future__ import annotations


class AmeForecastError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(AmeForecastError, ValueError):
    """Raised when an argument violates a documented precondition."""


class NumericalFailureError(AmeForecastError, RuntimeError):
    """Raised when a numerical procedure cannot produce a reliable result.

    Carries optional diagnostics (e.g. a condition-number estimate or the
    maximum KKT violation at the iteration cap) in ``diagnostics``.
    """

    def __init__(self, message: str, **diagnostics: object) -> None:
        super().__init__(message)
        self.diagnostics = diagnostics


class DegenerateInputError(AmeForecastError, ValueError):
    """Raised when inputs are formally valid but make a statistic undefined,
    e.g. identical losses in a forecast-comparison test."""


class UnsupportedConfigError(AmeForecastError, ValueError):
    """Raised when an operation is asked to run outside its supported setup."""
