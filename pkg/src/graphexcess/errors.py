"""Exception types shared across the package."""

from __future__ import annotations


class GraphExcessError(Exception):
    """Base class for all package-specific errors."""


class ConstantTermViolation(GraphExcessError):
    """A series operation required a specific constant term (exp needs 0, log needs 1)."""


class NonRationalLeadingPower(GraphExcessError):
    """A fractional power of a series/element has an irrational leading coefficient."""


class HalfPoleResidue(GraphExcessError):
    """A quantity that must have an integer pole order at t = 1 came out half-integer.

    This always indicates an implementation bug: the square-root factors are
    guaranteed to cancel in the enumerated families.
    """


class MixedPoleParity(GraphExcessError):
    """Attempted to add two t-rational elements of different half-pole parity."""


class BudgetExceeded(GraphExcessError):
    """An exhaustive enumeration or table build exceeds its feasibility budget."""


class InvalidExcess(GraphExcessError):
    """Excess below -1 was requested (no graph has fewer edges than a forest)."""


class NonIntegralCount(GraphExcessError):
    """An exact count came out non-integral after clearing conventions.

    The 1/(2^m m! n!) weights make this a powerful bug detector, so it is a
    hard error rather than a rounding.
    """


class NonPositiveRatio(GraphExcessError):
    """The saddle-point system is only defined for excess/vertex ratio > 0."""


class ConvergenceFailure(GraphExcessError):
    """A bracketed monotone solve failed to converge (should never happen)."""


class InsufficientGrid(GraphExcessError):
    """Too few grid points for an extrapolation step."""
