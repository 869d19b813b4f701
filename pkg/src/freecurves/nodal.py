"""Splitting types on a two-component nodal curve and the degree bound.

The nodal curve is a union of two projective lines meeting at one node; a
line bundle on it is a pair of degrees (a, b).  The central object is the
degree bound ``degbd``: the least degree a rank-m torsion-free quotient of
the restricted bundle can carry on a nearby smooth curve.  Everything here
is brute-force exact enumeration over the finitely many index labelings.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import OutOfRange, RankMismatch, RankTooLarge
from .splitting import SplittingType, is_sequential

__all__ = [
    "NodalType",
    "TorsionFreeType",
    "Alignment",
    "glue",
    "degbd",
    "degbd_m1_closed_form",
    "admissible_smoothings",
    "sharpness_witness",
    "WitnessBlock",
    "SharpnessWitness",
    "euler_char",
    "parse_nodal_type",
    "DEGBD_RANK_CAP",
]

# 3-way subset labelings grow too fast past this rank.
DEGBD_RANK_CAP = 16


@dataclass(frozen=True)
class NodalType:
    """Line-bundle summand degrees (a_i, b_i) on the two components.

    Canonical order: sorted descending by (a_i + b_i, a_i).
    """

    pairs: tuple[tuple[int, int], ...]

    def __init__(self, pairs) -> None:
        ps = tuple(
            sorted(
                ((int(a), int(b)) for a, b in pairs),
                key=lambda p: (p[0] + p[1], p[0]),
                reverse=True,
            )
        )
        if not ps:
            raise ValueError("a nodal type needs at least one summand")
        object.__setattr__(self, "pairs", ps)

    @property
    def rank(self) -> int:
        return len(self.pairs)

    @property
    def total_degree(self) -> int:
        return sum(a + b for a, b in self.pairs)

    def restrict_z1(self) -> SplittingType:
        return SplittingType(a for a, _ in self.pairs)

    def restrict_z2(self) -> SplittingType:
        return SplittingType(b for _, b in self.pairs)

    def swapped(self) -> "NodalType":
        """Exchange the two components."""
        return NodalType((b, a) for a, b in self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __str__(self) -> str:
        return ",".join(f"{a}/{b}" for a, b in self.pairs)


def parse_nodal_type(text: str) -> NodalType:
    """Parse the ``a/b`` pair list form, e.g. ``2/-1,-1/2``."""
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        a, sep, b = chunk.partition("/")
        if not sep:
            raise ValueError(f"bad nodal summand {chunk!r}, expected a/b")
        pairs.append((int(a), int(b)))
    if not pairs:
        raise ValueError(f"no summands in nodal type {text!r}")
    return NodalType(pairs)


@dataclass(frozen=True)
class TorsionFreeType:
    """Torsion-free sheaf data: a locally free part plus one-component parts."""

    g_part: tuple[tuple[int, int], ...]
    h1_part: tuple[int, ...]
    h2_part: tuple[int, ...]

    def __init__(self, g_part=(), h1_part=(), h2_part=()) -> None:
        g = tuple((int(a), int(b)) for a, b in g_part)
        h1 = tuple(int(a) for a in h1_part)
        h2 = tuple(int(b) for b in h2_part)
        if not (g or h1 or h2):
            raise ValueError("torsion-free type needs at least one summand")
        object.__setattr__(self, "g_part", g)
        object.__setattr__(self, "h1_part", h1)
        object.__setattr__(self, "h2_part", h2)


def euler_char(f: TorsionFreeType) -> int:
    """Euler characteristic: (a+b+1) per glued summand, (a+1) per one-sided one."""
    return (
        sum(a + b + 1 for a, b in f.g_part)
        + sum(a + 1 for a in f.h1_part)
        + sum(b + 1 for b in f.h2_part)
    )


@dataclass(frozen=True)
class Alignment:
    """Matching of summands of the two curves at the node.

    ``perm[i]`` is the 0-based summand of the second curve glued to summand
    ``i`` of the first.
    """

    perm: tuple[int, ...]

    def __init__(self, perm) -> None:
        p = tuple(int(i) for i in perm)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation of 0..{len(p) - 1}: {p}")
        object.__setattr__(self, "perm", p)

    @classmethod
    def identity(cls, rank: int) -> "Alignment":
        return cls(range(rank))

    @classmethod
    def dual(cls, rank: int) -> "Alignment":
        """Pair the descending summands of one side against the ascending
        summands of the other — the maximally transverse matching."""
        return cls(range(rank - 1, -1, -1))

    @classmethod
    def from_one_based(cls, images) -> "Alignment":
        return cls(int(i) - 1 for i in images)


def glue(t1: SplittingType, t2: SplittingType, align: Alignment) -> NodalType:
    """Combine two splitting types into a nodal type via the alignment."""
    if t1.rank != t2.rank:
        raise RankMismatch(f"rank {t1.rank} vs {t2.rank}")
    if len(align.perm) != t1.rank:
        raise RankMismatch(f"alignment length {len(align.perm)} vs rank {t1.rank}")
    return NodalType((t1[i], t2[align.perm[i]]) for i in range(t1.rank))


def _labelings(pairs: tuple[tuple[int, int], ...], m: int):
    """Yield (value, J, K1, K2) over all disjoint index triples with
    |J| + |K1| = |J| + |K2| = m.

    J contributes a_i + b_i, K1 contributes a_i + 1, K2 contributes b_i + 1.
    """
    r = len(pairs)
    idx = tuple(range(r))
    for j in range(max(0, 2 * m - r), m + 1):
        k = m - j
        for J in combinations(idx, j):
            jset = set(J)
            base = sum(pairs[i][0] + pairs[i][1] for i in J)
            rest = tuple(i for i in idx if i not in jset)
            for K1 in combinations(rest, k):
                k1set = set(K1)
                part1 = base + sum(pairs[i][0] + 1 for i in K1)
                rest2 = tuple(i for i in rest if i not in k1set)
                for K2 in combinations(rest2, k):
                    value = part1 + sum(pairs[i][1] + 1 for i in K2)
                    yield value, J, K1, K2


def _check_rank(z: NodalType, rank_cap: int) -> None:
    if z.rank > rank_cap:
        raise RankTooLarge(f"rank {z.rank} exceeds enumeration cap {rank_cap}")


def degbd(z: NodalType, m: int, rank_cap: int = DEGBD_RANK_CAP) -> int:
    """Degree bound for rank-m quotients on a general smoothing.

    Infimum over disjoint J, K1, K2 of the labeled contribution sums; computed
    by exhaustive enumeration.
    """
    _check_rank(z, rank_cap)
    if not 1 <= m <= z.rank:
        raise OutOfRange(f"m={m} outside 1..{z.rank}")
    return min(value for value, _, _, _ in _labelings(z.pairs, m))


def degbd_m1_closed_form(z: NodalType) -> int:
    """Rank-one degree bound: min of the smallest pair sum and
    (min a) + (min b) + 2.

    When both minima sit on the same single summand the cross term is not a
    legal labeling, but it is then dominated by that summand's pair sum, so
    the formula is still exact.
    """
    min_sum = min(a + b for a, b in z.pairs)
    min_a = min(a for a, _ in z.pairs)
    min_b = min(b for _, b in z.pairs)
    return min(min_sum, min_a + min_b + 2)


def degbd_profile(z: NodalType, rank_cap: int = DEGBD_RANK_CAP) -> tuple[int, ...]:
    """All degree bounds (degbd(z, 1), ..., degbd(z, rank)) at once."""
    return tuple(degbd(z, m, rank_cap) for m in range(1, z.rank + 1))


def admissible_smoothings(
    z: NodalType,
    require_sequential: bool = False,
    rank_cap: int = DEGBD_RANK_CAP,
) -> list[SplittingType]:
    """All splitting types a smoothing of ``z`` could carry.

    A type qualifies when it has the rank and total degree of ``z`` and, for
    every m, its m smallest entries sum to at least degbd(z, m).  This is a
    necessary condition only, so the result is a superset of the
    geometrically realizable types.  The list is sorted lexicographically
    descending and may be empty.
    """
    _check_rank(z, rank_cap)
    r = z.rank
    total = z.total_degree
    floors = degbd_profile(z, rank_cap)

    found: list[tuple[int, ...]] = []
    seq = [0] * r

    def rec(pos: int, prev: int, prefix: int) -> None:
        # seq is built ascending: seq[0] <= seq[1] <= ...; floors bound the
        # prefix sums from below.
        remaining = r - pos
        if remaining == 0:
            last = total - prefix
            if pos > 1 and last < prev:
                return
            if require_sequential and pos > 1 and last > prev + 1:
                return
            seq[pos - 1] = last
            found.append(tuple(seq))
            return
        lo = floors[pos - 1] - prefix
        if pos > 1:
            lo = max(lo, prev)
        hi = (total - prefix) // (remaining + 1)
        if require_sequential and pos > 1:
            hi = min(hi, prev + 1)
        for s in range(lo, hi + 1):
            if require_sequential:
                # even maximal unit steps cannot reach the total
                max_rest = remaining * s + remaining * (remaining + 1) // 2
                if prefix + s + max_rest < total:
                    continue
            seq[pos - 1] = s
            rec(pos + 1, s, prefix + s)

    rec(1, 0, 0)

    types = [SplittingType(reversed(s)) for s in found]
    if require_sequential:
        assert all(is_sequential(t) for t in types)
    types.sort(key=lambda t: t.degrees, reverse=True)
    return types


@dataclass(frozen=True)
class WitnessBlock:
    """One block of a sharpness witness.

    A ``single`` block is one summand contributing its pair sum; a ``pair``
    block is a rank-two piece using the a-degree of its first index and the
    b-degree of its second, contributing a + b' + 2.
    """

    kind: str
    indices: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class SharpnessWitness:
    """Block decomposition realizing degbd(z, m).

    ``serre_ok`` records whether every pair block satisfies the rank-two
    construction inequalities a' >= a + 2 and b >= b' + 2; when no optimal
    labeling admits such a matching the optimal index sets are still
    reported, unflagged blocks and all.
    """

    blocks: tuple[WitnessBlock, ...]
    total: int
    serre_ok: bool

    def render(self) -> str:
        lines = []
        for blk in self.blocks:
            ones = " ".join(str(i + 1) for i in blk.indices)
            lines.append(f"{blk.kind} {ones} -> {blk.value}")
        lines.append(f"total -> {self.total}")
        return "\n".join(lines)


def _serre_matching(
    pairs: tuple[tuple[int, int], ...], k1: tuple[int, ...], k2: tuple[int, ...]
) -> tuple[tuple[int, int], ...] | None:
    """Bijection K1 -> K2 with a_{i'} >= a_i + 2 and b_i >= b_{i'} + 2, if any."""
    for image in permutations(k2):
        if all(
            pairs[ip][0] >= pairs[i][0] + 2 and pairs[i][1] >= pairs[ip][1] + 2
            for i, ip in zip(k1, image)
        ):
            return tuple(zip(k1, image))
    return None


def sharpness_witness(
    z: NodalType, m: int, rank_cap: int = DEGBD_RANK_CAP
) -> SharpnessWitness:
    """Exhibit index blocks attaining degbd(z, m)."""
    _check_rank(z, rank_cap)
    if not 1 <= m <= z.rank:
        raise OutOfRange(f"m={m} outside 1..{z.rank}")
    pairs = z.pairs
    optimum = min(value for value, _, _, _ in _labelings(pairs, m))

    fallback: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]] | None = None
    for value, J, K1, K2 in _labelings(pairs, m):
        if value != optimum:
            continue
        if fallback is None:
            fallback = (J, K1, K2)
        matching = _serre_matching(pairs, K1, K2)
        if matching is not None:
            blocks = [
                WitnessBlock("single", (i,), pairs[i][0] + pairs[i][1]) for i in J
            ]
            blocks += [
                WitnessBlock("pair", (i, ip), pairs[i][0] + pairs[ip][1] + 2)
                for i, ip in matching
            ]
            return SharpnessWitness(tuple(blocks), optimum, True)

    assert fallback is not None
    J, K1, K2 = fallback
    blocks = [WitnessBlock("single", (i,), pairs[i][0] + pairs[i][1]) for i in J]
    blocks += [
        WitnessBlock("pair", (i, ip), pairs[i][0] + pairs[ip][1] + 2)
        for i, ip in zip(K1, K2)
    ]
    return SharpnessWitness(tuple(blocks), optimum, False)
