"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class GoldshiftError(Exception):
    """Base class for all library errors."""


class InvalidGeneratorError(GoldshiftError):
    """A word contains a generator index outside 1..d."""


class InvalidAlphaError(GoldshiftError):
    """A 4-vector is not one of the nine admissible dyadic products."""


class InvalidTransitionError(GoldshiftError):
    """A transition matrix has a zero row or non-binary entries."""


class BudgetError(GoldshiftError):
    """An enumeration or exact-arithmetic request exceeds its configured cap."""


class NotApplicableError(GoldshiftError):
    """A specialized entropy method's preconditions are not met.

    Callers are expected to fall back to the iterative engine.
    """


class NumericFaultError(GoldshiftError):
    """A non-finite value appeared where the algorithm guarantees finiteness."""


class ShapeError(GoldshiftError):
    """Mismatched dimensions between a relation matrix and its transition data."""


class IndeterminateError(GoldshiftError):
    """Empirical classification could not settle on a pattern.

    Carries the per-equation maximality trace so the caller can inspect
    what was observed instead of guessing a type.
    """

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace
