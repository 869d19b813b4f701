"""Finite lattice presentation of a variety's curve-class geometry.

A model holds the curve lattice Z^rho, the anticanonical functional, the nef
cone of curves cut out by facet inequalities, and a chamber decomposition
carrying filtration data: per chamber, the ranks and linear slope
functionals of the successive filtration quotients.  From these it computes
expected slope panels and certified lower bounds for the minimal slope
ratio.  All arithmetic is exact; cone rays are enumerated by brute-force
kernel computations, which is only supported for rho <= 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm

from .errors import (
    BoundaryMismatch,
    NoChamber,
    NotInNefCone,
    RankTooLarge,
    ZeroDegree,
)
from .splitting import SlopePanel

__all__ = [
    "Chamber",
    "VarietyModel",
    "ValidationReport",
    "esp",
    "liberated_lower_bound",
    "validate",
    "in_nef",
    "cone_rays",
    "pbundle",
    "toy_rho1",
    "toy_rho2",
    "RAY_ENUM_RHO_CAP",
]

RAY_ENUM_RHO_CAP = 4


def dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def _rref(rows, dim: int):
    """Reduced row echelon form over Fraction; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(dim):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _matrix_rank(rows, dim: int) -> int:
    return len(_rref(rows, dim)[1])


def _kernel_basis(rows, dim: int) -> list[tuple[Fraction, ...]]:
    red, pivots = _rref(rows, dim)
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * dim
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(tuple(v))
    return basis


def _primitive(vec) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers (sign kept)."""
    denom = lcm(*(Fraction(x).denominator for x in vec))
    ints = [int(Fraction(x) * denom) for x in vec]
    g = gcd(*(abs(x) for x in ints))
    return tuple(x // g for x in ints)


def cone_rays(facets, rho: int) -> list[tuple[int, ...]]:
    """Extremal rays of the pointed cone {x : <f, x> >= 0 for all facets}.

    Candidates are kernels of (rho-1)-subsets of the facet normals; a
    non-pointed cone (normals not spanning) raises ValueError.  Supported
    only up to lattice rank 4.
    """
    if rho > RAY_ENUM_RHO_CAP:
        raise RankTooLarge(
            f"lattice rank {rho} exceeds ray enumeration cap {RAY_ENUM_RHO_CAP}"
        )
    facets = [tuple(int(c) for c in f) for f in facets]
    if _matrix_rank(facets, rho) < rho:
        raise ValueError("cone contains a line: facet normals do not span")
    candidates: list[tuple[int, ...]] = []
    for sub in combinations(facets, rho - 1):
        kern = _kernel_basis(sub, rho)
        if len(kern) != 1:
            continue
        v = _primitive(kern[0])
        candidates.append(v)
        candidates.append(tuple(-x for x in v))
    rays = []
    seen = set()
    for v in candidates:
        if v in seen:
            continue
        seen.add(v)
        if all(dot(f, v) >= 0 for f in facets):
            rays.append(v)
    rays.sort()
    return rays


@dataclass(frozen=True)
class Chamber:
    """Subcone of the nef cone with constant filtration data.

    ``facets`` are extra inequalities inside the nef cone; ``filtration``
    lists (rank, slope functional) per quotient, slopes as exact rational
    vectors on the curve lattice.
    """

    facets: tuple[tuple[int, ...], ...]
    filtration: tuple[tuple[int, tuple[Fraction, ...]], ...]

    def __init__(self, facets, filtration) -> None:
        fs = tuple(tuple(int(c) for c in f) for f in facets)
        fl = tuple(
            (int(r), tuple(Fraction(c) for c in svec)) for r, svec in filtration
        )
        if not fl:
            raise ValueError("chamber needs at least one filtration piece")
        if any(r < 1 for r, _ in fl):
            raise ValueError("filtration ranks must be positive")
        object.__setattr__(self, "facets", fs)
        object.__setattr__(self, "filtration", fl)


@dataclass(frozen=True)
class VarietyModel:
    rho: int
    dim_n: int
    minus_k: tuple[int, ...]
    nef_facets: tuple[tuple[int, ...], ...]
    nef_generators: tuple[tuple[int, ...], ...] | None
    chambers: tuple[Chamber, ...]

    def __init__(
        self, rho, dim_n, minus_k, nef_facets, chambers, nef_generators=None
    ) -> None:
        rho = int(rho)
        dim_n = int(dim_n)
        if rho < 1 or dim_n < 1:
            raise ValueError("rho and dim must be positive")
        mk = tuple(int(c) for c in minus_k)
        if len(mk) != rho:
            raise ValueError(f"minus_k length {len(mk)} != rho {rho}")
        nf = tuple(tuple(int(c) for c in f) for f in nef_facets)
        if any(len(f) != rho for f in nf):
            raise ValueError("nef facet of wrong length")
        gens = None
        if nef_generators is not None:
            gens = tuple(tuple(int(c) for c in g) for g in nef_generators)
            if any(len(g) != rho for g in gens):
                raise ValueError("nef generator of wrong length")
        chs = tuple(chambers)
        for ch in chs:
            if any(len(f) != rho for f in ch.facets):
                raise ValueError("chamber facet of wrong length")
            if any(len(s) != rho for _, s in ch.filtration):
                raise ValueError("slope functional of wrong length")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "dim_n", dim_n)
        object.__setattr__(self, "minus_k", mk)
        object.__setattr__(self, "nef_facets", nf)
        object.__setattr__(self, "nef_generators", gens)
        object.__setattr__(self, "chambers", chs)

    def degree(self, alpha) -> Fraction:
        return dot(self.minus_k, alpha)


def in_nef(model: VarietyModel, alpha) -> bool:
    return all(dot(f, alpha) >= 0 for f in model.nef_facets)


def _chamber_contains(model: VarietyModel, ch: Chamber, alpha) -> bool:
    return all(dot(f, alpha) >= 0 for f in ch.facets)


def _expansion(model: VarietyModel, ch: Chamber, alpha) -> tuple[Fraction, ...]:
    """Per-summand slope values: each piece slope repeated by its rank."""
    out: list[Fraction] = []
    for rank, svec in ch.filtration:
        b = dot(svec, alpha)
        out.extend([b] * rank)
    return tuple(out)


def esp(model: VarietyModel, alpha) -> SlopePanel:
    """Expected slope panel of a nef class: expansion over the bundle slope.

    The class must lie in the nef cone, have positive anticanonical degree,
    and belong to at least one chamber.  On a shared chamber face all
    containing chambers must expand identically.
    """
    alpha = tuple(int(c) for c in alpha)
    if len(alpha) != model.rho:
        raise ValueError(f"class length {len(alpha)} != rho {model.rho}")
    if not in_nef(model, alpha):
        raise NotInNefCone(f"{alpha} violates a nef facet")
    deg = model.degree(alpha)
    if deg <= 0:
        raise ZeroDegree(f"anticanonical degree {deg} of {alpha} is not positive")
    expansions = [
        _expansion(model, ch, alpha)
        for ch in model.chambers
        if _chamber_contains(model, ch, alpha)
    ]
    if not expansions:
        raise NoChamber(f"{alpha} lies in no chamber")
    first = expansions[0]
    if any(e != first for e in expansions[1:]):
        raise BoundaryMismatch(f"chambers disagree at {alpha}")
    mu = deg / model.dim_n
    return SlopePanel(b / mu for b in first)


def liberated_lower_bound(model: VarietyModel, alpha) -> Fraction:
    """Certified lower bound for the minimal slope ratio of class alpha.

    Smallest expected-panel entry minus dim^2 / (2 deg); non-positive values
    certify nothing.
    """
    panel = esp(model, alpha)
    deg = model.degree(alpha)
    return panel.min_entry - Fraction(model.dim_n * model.dim_n, 2 * int(deg))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]
    notes: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def render(self) -> str:
        lines = [f"violations: {len(self.violations)}"]
        lines += [f"  {v}" for v in self.violations]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def _sample_points(
    model: VarietyModel,
    rays: list[tuple[int, ...]] | None,
    span: int = 3,
) -> list[tuple[int, ...]]:
    """Nonzero nef lattice points from a box around the origin, plus the
    rays and their pairwise sums when available."""
    pts = {
        p
        for p in product(range(-span, span + 1), repeat=model.rho)
        if any(p) and in_nef(model, p)
    }
    if rays:
        pts.update(rays)
        for r1, r2 in combinations(rays, 2):
            pts.add(tuple(a + b for a, b in zip(r1, r2)))
    return sorted(pts)


def validate(model: VarietyModel) -> ValidationReport:
    """Check the model invariants; returns a report rather than raising."""
    bad: list[str] = []
    notes: list[str] = []

    rays: list[tuple[int, ...]] | None = None
    if model.rho <= RAY_ENUM_RHO_CAP:
        try:
            rays = cone_rays(model.nef_facets, model.rho)
        except ValueError as exc:
            bad.append(f"nef cone: {exc}")
    else:
        notes.append(f"rho {model.rho} > {RAY_ENUM_RHO_CAP}: ray checks skipped")

    gens = model.nef_generators
    if gens is not None:
        for g in gens:
            if not in_nef(model, g):
                bad.append(f"generator {g} violates a nef facet")
            if dot(model.minus_k, g) <= 0:
                bad.append(f"anticanonical degree not positive on generator {g}")
    elif rays is not None:
        for g in rays:
            if dot(model.minus_k, g) <= 0:
                bad.append(f"anticanonical degree not positive on nef ray {g}")

    for ci, ch in enumerate(model.chambers):
        ranks = sum(r for r, _ in ch.filtration)
        if ranks != model.dim_n:
            bad.append(f"chamber {ci}: ranks sum to {ranks}, not dim {model.dim_n}")
        combined = [
            sum((Fraction(r) * svec[i] for r, svec in ch.filtration), Fraction(0))
            for i in range(model.rho)
        ]
        if combined != [Fraction(c) for c in model.minus_k]:
            bad.append(f"chamber {ci}: rank-weighted slopes do not sum to minus_k")
        if rays is not None:
            try:
                ch_rays = cone_rays(
                    list(model.nef_facets) + list(ch.facets), model.rho
                )
            except ValueError as exc:
                bad.append(f"chamber {ci}: {exc}")
                continue
            for ray in ch_rays:
                for k, (_, svec) in enumerate(ch.filtration):
                    if dot(svec, ray) < 0:
                        bad.append(
                            f"chamber {ci}: slope {k} negative on ray {ray}"
                        )
                for k in range(len(ch.filtration) - 1):
                    hi = dot(ch.filtration[k][1], ray)
                    lo = dot(ch.filtration[k + 1][1], ray)
                    if hi < lo:
                        bad.append(
                            f"chamber {ci}: slopes {k},{k + 1} increase on ray {ray}"
                        )

    for p in _sample_points(model, rays):
        holders = [
            ch for ch in model.chambers if _chamber_contains(model, ch, p)
        ]
        if not holders:
            bad.append(f"nef point {p} lies in no chamber")
            continue
        expansions = {_expansion(model, ch, p) for ch in holders}
        if len(expansions) > 1:
            bad.append(f"chambers disagree on shared point {p}")

    return ValidationReport(tuple(bad), tuple(notes))


def pbundle(n0: int, m: int, a_list) -> VarietyModel:
    """Projectivization of a split sum of twists over projective space.

    ``a_list`` holds the m+1 non-increasing twist degrees, the first
    positive, with total at most n0.  Curve classes use the basis (section
    class, fiber line); the filtration has the relative tangent piece first.
    """
    a = tuple(int(x) for x in a_list)
    if n0 < 1 or m < 1:
        raise ValueError("n0 and m must be positive")
    if len(a) != m + 1:
        raise ValueError(f"need {m + 1} twist degrees, got {len(a)}")
    if any(x < y for x, y in zip(a[1:], a[2:])) or (len(a) > 1 and a[0] < a[1]):
        raise ValueError("twist degrees must be non-increasing")
    if a[0] < 1 or any(x < 0 for x in a):
        raise ValueError("twists must be non-negative with positive leading term")
    d = sum(a)
    if d > n0:
        raise ValueError(f"twist total {d} exceeds base dimension {n0}")
    a0 = a[0]
    rel = (m * a0 + a0 - d, m + 1)
    base = (n0 + 1, 0)
    chamber = Chamber(
        facets=(),
        filtration=(
            (m, (Fraction(rel[0], m), Fraction(rel[1], m))),
            (n0, (Fraction(base[0], n0), Fraction(base[1], n0))),
        ),
    )
    return VarietyModel(
        rho=2,
        dim_n=n0 + m,
        minus_k=(rel[0] + base[0], rel[1]),
        nef_facets=((1, 0), (0, 1)),
        nef_generators=((1, 0), (0, 1)),
        chambers=(chamber,),
    )


def toy_rho1(c: int, dim: int = 2) -> VarietyModel:
    """Picard-rank-one model with a semistable tangent chamber."""
    if c < 1:
        raise ValueError("anticanonical step must be positive")
    chamber = Chamber(facets=(), filtration=((dim, (Fraction(c, dim),)),))
    return VarietyModel(
        rho=1,
        dim_n=dim,
        minus_k=(c,),
        nef_facets=((1,),),
        nef_generators=((1,),),
        chambers=(chamber,),
    )


def toy_rho2() -> VarietyModel:
    """Quadrant model with two chambers split along the diagonal.

    Both chambers keep the smaller expected panel entry at least one half,
    so every nef class of large degree certifies a liberation bound.
    """
    quarter = Fraction(1, 4)
    c1 = Chamber(
        facets=((1, -1),),
        filtration=(
            (1, (3 * quarter, quarter)),
            (1, (quarter, 3 * quarter)),
        ),
    )
    c2 = Chamber(
        facets=((-1, 1),),
        filtration=(
            (1, (quarter, 3 * quarter)),
            (1, (3 * quarter, quarter)),
        ),
    )
    return VarietyModel(
        rho=2,
        dim_n=2,
        minus_k=(1, 1),
        nef_facets=((1, 0), (0, 1)),
        nef_generators=((1, 0), (0, 1)),
        chambers=(c1, c2),
    )
