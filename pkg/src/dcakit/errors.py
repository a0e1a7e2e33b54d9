"""Exception types shared across the toolkit."""

from __future__ import annotations


class DeclineCurveError(Exception):
    """Base class for all dcakit errors."""


class ValidationError(DeclineCurveError, ValueError):
    """Invalid input: bad parameters, malformed data, or violated preconditions."""


class FitError(DeclineCurveError, RuntimeError):
    """A regression or optimizer could not produce a usable fit.

    ``diagnostics`` carries best-so-far information from the optimizer
    (parameter vector, cost, evaluation count) when available.
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
