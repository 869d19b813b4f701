"""Domain error hierarchy shared by all modules.

Every exception raised for a mathematically invalid input derives from
``DomainError`` so the CLI can map them to a single exit code.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all domain-level failures."""


class ZeroSlope(DomainError):
    """Slope panel requested for a bundle of total degree zero."""


class NegativeSlope(DomainError):
    """Minimal slope ratio requested for a bundle of negative slope."""


class ShapeMismatch(DomainError):
    """Comparison of splitting types with different rank or degree."""


class RankMismatch(DomainError):
    """Gluing of splitting types with different ranks."""


class OutOfRange(DomainError):
    """Quotient rank outside 1..rank."""


class RankTooLarge(DomainError):
    """Operation capped at a maximum rank was asked to exceed it."""


class NonIntegerSlope(DomainError):
    """Balancing requires an integer slope."""


class NotSequential(DomainError):
    """Balancing requires consecutive degree gaps of at most one."""


class NoAdmissibleSmoothing(DomainError):
    """A balance step found no admissible sequential smoothing."""


class NotInNefCone(DomainError):
    """Curve class violates a facet inequality of the nef cone."""


class NoChamber(DomainError):
    """Curve class lies in no declared filtration chamber."""


class ZeroDegree(DomainError):
    """Curve class has non-positive anticanonical degree."""


class BoundaryMismatch(DomainError):
    """Chambers sharing a face disagree on the expanded slope vector."""


class ZeroFunctional(DomainError):
    """Anticanonical functional is identically zero."""


class UnboundedSlice(DomainError):
    """Degree slice of the nef cone is unbounded."""


class ModelFormatError(DomainError):
    """Model file violates the documented schema."""
