"""Glue-and-smooth balancing for low-rank bundles, plus filtration bounds.

``balance_step`` glues a splitting type to itself with the maximally
transverse alignment, enumerates the sequential smoothings permitted by the
degree bounds, and keeps the worst one.  Iterating drives every sequential
integer-slope type of rank at most five to a semistable (width-zero) state;
each step doubles the underlying curve class, so degrees double too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    NoAdmissibleSmoothing,
    NonIntegerSlope,
    NotSequential,
    RankTooLarge,
    ShapeMismatch,
)
from .nodal import Alignment, admissible_smoothings, glue
from .splitting import SplittingType, balance_width, is_sequential, slope

__all__ = [
    "BalanceTrace",
    "FiltrationData",
    "balance_step",
    "balance",
    "integer_slope_copies",
    "hn_restriction_bounds",
    "sp_feasible",
    "minimal_slope_ratio_lower_bound",
    "BALANCE_RANK_CAP",
]

# The worst-case analysis is only available through rank 5.
BALANCE_RANK_CAP = 5


@dataclass(frozen=True)
class BalanceTrace:
    """Worst-case balancing orbit.

    ``copies`` counts the glued copies of the input curve, doubling each
    step; any copies needed beforehand to reach integer slope are reported
    separately by ``integer_slope_copies``.
    """

    states: tuple[SplittingType, ...]
    steps: int
    copies: int
    converged: bool


def integer_slope_copies(t: SplittingType) -> int:
    """Fewest copies to glue so the combined slope becomes an integer."""
    d = t.total_degree
    if d == 0:
        return 1
    return t.rank // gcd(abs(d), t.rank)


def _check_balance_input(t: SplittingType, sequential: bool) -> None:
    if t.rank > BALANCE_RANK_CAP:
        raise RankTooLarge(f"rank {t.rank} exceeds {BALANCE_RANK_CAP}")
    mu = slope(t)
    if mu.denominator != 1:
        raise NonIntegerSlope(
            f"slope {mu} of {t} is not an integer; "
            f"glue {integer_slope_copies(t)} copies first"
        )
    if sequential and not is_sequential(t):
        raise NotSequential(f"{t} has a degree gap larger than one")


def balance_step(
    t: SplittingType, policy: str = "worst", sequential: bool = True
) -> SplittingType:
    """One glue-and-smooth step; width-zero input is a fixed point.

    ``policy`` selects among the admissible smoothings: ``worst`` takes the
    maximal width (lexicographically largest on ties), ``best`` the minimal
    width (lexicographically smallest on ties).
    """
    if policy not in ("worst", "best"):
        raise ValueError(f"unknown policy {policy!r}")
    _check_balance_input(t, sequential)
    if balance_width(t) == 0:
        return t
    glued = glue(t, t, Alignment.dual(t.rank))
    candidates = admissible_smoothings(glued, require_sequential=sequential)
    if not candidates:
        raise NoAdmissibleSmoothing(f"no admissible smoothing for {glued}")
    if policy == "worst":
        return max(candidates, key=lambda u: (balance_width(u), u.degrees))
    return min(candidates, key=lambda u: (balance_width(u), u.degrees))


def balance(
    t: SplittingType,
    max_steps: int = 8,
    policy: str = "worst",
    sequential: bool = True,
) -> BalanceTrace:
    """Iterate balance_step until width zero or the step cap.

    Hitting the cap is reported through ``converged``, not raised.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    _check_balance_input(t, sequential)
    states = [t]
    while balance_width(states[-1]) != 0 and len(states) <= max_steps:
        states.append(balance_step(states[-1], policy=policy, sequential=sequential))
    steps = len(states) - 1
    return BalanceTrace(
        states=tuple(states),
        steps=steps,
        copies=2**steps,
        converged=balance_width(states[-1]) == 0,
    )


@dataclass(frozen=True)
class FiltrationData:
    """Filtration pieces (rank, slope) with strictly decreasing slopes."""

    pieces: tuple[tuple[int, Fraction], ...]

    def __init__(self, pieces) -> None:
        ps = tuple((int(r), Fraction(s)) for r, s in pieces)
        if not ps:
            raise ValueError("filtration needs at least one piece")
        if any(r < 1 for r, _ in ps):
            raise ValueError("piece ranks must be positive")
        if any(s1 <= s2 for (_, s1), (_, s2) in zip(ps, ps[1:])):
            raise ValueError("filtration slopes must strictly decrease")
        object.__setattr__(self, "pieces", ps)

    @property
    def total_rank(self) -> int:
        return sum(r for r, _ in self.pieces)


def hn_restriction_bounds(
    f: FiltrationData,
) -> tuple[tuple[Fraction, ...], Fraction]:
    """Expected degree vector and sup-deviation bound for restrictions.

    The vector repeats each piece slope by its rank; actual summand degrees
    of a general restriction stay within (max piece rank)/2 of it.
    """
    expected = tuple(s for r, s in f.pieces for _ in range(r))
    bound = Fraction(max(r for r, _ in f.pieces), 2)
    return expected, bound


def sp_feasible(t: SplittingType, f: FiltrationData) -> bool:
    """Whether the degrees of ``t`` sit within the filtration bound."""
    expected, bound = hn_restriction_bounds(f)
    if t.rank != len(expected):
        raise ShapeMismatch(f"rank {t.rank} vs filtration rank {len(expected)}")
    return max(abs(Fraction(a) - v) for a, v in zip(t.degrees, expected)) < bound


def minimal_slope_ratio_lower_bound(n: int, deg: int) -> Fraction:
    """Certified bound 1 - n^2 / (2 deg) for semistable tangent data."""
    if deg <= 0:
        raise ValueError("degree must be positive")
    return 1 - Fraction(n * n, 2 * deg)
