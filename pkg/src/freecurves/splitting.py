"""Exact calculus on splitting types of vector bundles on the projective line.

A bundle on P^1 is determined by its multiset of line-bundle degrees, kept
here as a non-increasing integer tuple.  All slope arithmetic is done with
``fractions.Fraction``; no operation ever produces a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NegativeSlope, ShapeMismatch, ZeroSlope

__all__ = [
    "SplittingType",
    "SlopePanel",
    "slope",
    "slope_panel",
    "minimal_slope_ratio",
    "specializes_to",
    "balance_width",
    "is_sequential",
    "tensor",
    "dual",
    "direct_sum",
    "most_balanced",
    "parse_splitting_type",
]


@dataclass(frozen=True)
class SplittingType:
    """Degrees of the line-bundle summands, sorted non-increasing.

    Construction canonicalizes the order, so equality is multiset equality.
    """

    degrees: tuple[int, ...]

    def __init__(self, degrees) -> None:
        degs = tuple(sorted((int(a) for a in degrees), reverse=True))
        if not degs:
            raise ValueError("a splitting type needs at least one summand")
        object.__setattr__(self, "degrees", degs)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __getitem__(self, i: int) -> int:
        return self.degrees[i]

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.degrees)


@dataclass(frozen=True)
class SlopePanel:
    """Tuple of exact slope ratios a_i / mu, kept in summand order."""

    entries: tuple[Fraction, ...]

    def __init__(self, entries) -> None:
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in entries))

    @property
    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    @property
    def min_entry(self) -> Fraction:
        return min(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)


def parse_splitting_type(text: str) -> SplittingType:
    """Parse the comma-separated text form, e.g. ``4,3,3,2`` (any order)."""
    parts = [p.strip() for p in text.split(",") if p.strip() != ""]
    if not parts:
        raise ValueError(f"no degrees in splitting type {text!r}")
    return SplittingType(int(p) for p in parts)


def slope(t: SplittingType) -> Fraction:
    """Total degree divided by rank."""
    return Fraction(t.total_degree, t.rank)


def slope_panel(t: SplittingType) -> SlopePanel:
    """Panel (a_1/mu, ..., a_r/mu); defined only when the slope is nonzero.

    For negative slope the entries are kept in summand order, which flips
    them to non-decreasing; they still sum to the rank.
    """
    mu = slope(t)
    if mu == 0:
        raise ZeroSlope(f"slope panel undefined for degree-zero type {t}")
    return SlopePanel(Fraction(a) / mu for a in t.degrees)


def minimal_slope_ratio(t: SplittingType) -> Fraction:
    """Smallest panel entry a_r / mu; requires positive slope."""
    mu = slope(t)
    if mu == 0:
        raise ZeroSlope(f"minimal slope ratio undefined for degree-zero type {t}")
    if mu < 0:
        raise NegativeSlope(f"minimal slope ratio needs positive slope, got {mu}")
    return slope_panel(t).entries[-1]


def specializes_to(general: SplittingType, special: SplittingType) -> bool:
    """Whether ``general`` degenerates to ``special``.

    Holds exactly when, for every k, the sum of the k smallest degrees of
    ``general`` is at least the corresponding sum for ``special``.  Only
    defined within a fixed (rank, degree) class.
    """
    if general.rank != special.rank:
        raise ShapeMismatch(f"rank {general.rank} vs {special.rank}")
    if general.total_degree != special.total_degree:
        raise ShapeMismatch(
            f"degree {general.total_degree} vs {special.total_degree}"
        )
    acc_g = 0
    acc_s = 0
    for a, b in zip(reversed(general.degrees), reversed(special.degrees)):
        acc_g += a
        acc_s += b
        if acc_g < acc_s:
            return False
    return True


def balance_width(t: SplittingType) -> int:
    """Gap between the largest and smallest summand degree."""
    return t.degrees[0] - t.degrees[-1]


def is_sequential(t: SplittingType) -> bool:
    """Whether consecutive summand degrees drop by at most one."""
    return all(a - b <= 1 for a, b in zip(t.degrees, t.degrees[1:]))


def tensor(t1: SplittingType, t2: SplittingType) -> SplittingType:
    """Tensor product: the multiset of pairwise degree sums."""
    return SplittingType(a + b for a in t1.degrees for b in t2.degrees)


def dual(t: SplittingType) -> SplittingType:
    """Dual bundle: negate every degree."""
    return SplittingType(-a for a in t.degrees)


def direct_sum(t1: SplittingType, t2: SplittingType) -> SplittingType:
    """Direct sum: merge the two degree multisets."""
    return SplittingType(t1.degrees + t2.degrees)


def most_balanced(rank: int, degree: int) -> SplittingType:
    """The unique type of width <= 1 with the given rank and degree."""
    if rank < 1:
        raise ValueError("rank must be positive")
    q, s = divmod(degree, rank)
    return SplittingType([q + 1] * s + [q] * (rank - s))
