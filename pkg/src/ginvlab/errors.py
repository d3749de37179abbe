"""Exception types shared across the toolkit."""

from __future__ import annotations


class GinvError(Exception):
    """Base class for every error raised by ginvlab."""


class DivisionByZero(GinvError, ZeroDivisionError):
    pass


class InvalidScalar(GinvError, ValueError):
    pass


class ParseError(GinvError, ValueError):
    pass


class DimensionMismatch(GinvError, ValueError):
    pass


class SingularMatrix(GinvError, ValueError):
    pass


class CharacterizationMismatch(GinvError, AssertionError):
    """Penrose-equation test and the closed characterization disagree (internal bug)."""


class IdentityViolated(GinvError, AssertionError):
    """A rank identity that must always hold failed on a concrete input (internal bug)."""


class UnsupportedClass(GinvError, ValueError):
    pass


class UnknownCase(GinvError, KeyError):
    pass


class NotIdempotent(GinvError, ValueError):
    pass


class TheoremViolation(GinvError, AssertionError):
    """An analytic verdict was contradicted by an exact counterexample."""

    def __init__(self, message: str, evidence: dict | None = None):
        super().__init__(message)
        self.evidence = evidence or {}
