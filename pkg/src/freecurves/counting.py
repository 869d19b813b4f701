"""Lattice-point counting in the nef cone and the liberated counting ratio.

The counting function sums xi(alpha) * q^degree(alpha) over nef lattice
classes of bounded anticanonical degree, where xi takes one value on a
translate of the nef cone and another outside it.  The liberated variant
keeps only classes whose certified minimal-slope-ratio bound beats a
decreasing threshold schedule; the ratio report locates the degree beyond
which the liberated count stays above the 1 - delta fraction.

Degree exponents use the class degree itself; a dimension-shift convention
would rescale every sum by the same power of q and leave all ratios
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor, gcd

from .errors import DomainError, UnboundedSlice, ZeroFunctional
from .variety import VarietyModel, cone_rays, dot, in_nef, liberated_lower_bound

__all__ = [
    "EpsPower",
    "EpsTable",
    "CountingConfig",
    "CountRow",
    "CountReport",
    "r_min",
    "lattice_slice",
    "count_N",
    "count_N_liberated",
    "ratio_check",
]


@dataclass(frozen=True)
class EpsPower:
    """Threshold schedule c * d^(-p); comparisons are done exactly by
    clearing the fractional exponent, so the irrational value itself is
    never materialized."""

    c: Fraction
    p: Fraction

    def __init__(self, c, p) -> None:
        c = Fraction(c)
        p = Fraction(p)
        if c <= 0 or p <= 0:
            raise ValueError("power schedule needs c > 0 and p > 0")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "p", p)

    def admits(self, bound: Fraction, d: int) -> bool:
        """Exact test of bound > c * d^(-p)."""
        if bound <= 0:
            return False
        pd = self.p.denominator
        pn = self.p.numerator
        return bound**pd * Fraction(d) ** pn > self.c**pd


@dataclass(frozen=True)
class EpsTable:
    """Tabulated threshold schedule; the value at the largest tabulated
    degree at most d applies."""

    entries: tuple[tuple[int, Fraction], ...]

    def __init__(self, entries) -> None:
        es = tuple((int(d), Fraction(v)) for d, v in entries)
        if not es:
            raise ValueError("threshold table is empty")
        if any(d2 <= d1 for (d1, _), (d2, _) in zip(es, es[1:])):
            raise ValueError("table degrees must strictly increase")
        if any(v <= 0 for _, v in es):
            raise ValueError("table values must be positive")
        if any(v2 > v1 for (_, v1), (_, v2) in zip(es, es[1:])):
            raise ValueError("table values must be non-increasing")
        object.__setattr__(self, "entries", es)

    def value_at(self, d: int) -> Fraction:
        if d < self.entries[0][0]:
            raise DomainError(f"threshold table starts at {self.entries[0][0]}, got {d}")
        val = self.entries[0][1]
        for dd, v in self.entries:
            if dd > d:
                break
            val = v
        return val

    def admits(self, bound: Fraction, d: int) -> bool:
        return bound > self.value_at(d)


@dataclass(frozen=True)
class CountingConfig:
    q: Fraction
    br: int
    m_cap: int
    beta: tuple[int, ...]
    outside_xi: int
    eps: EpsPower | EpsTable
    delta: Fraction

    def __init__(self, q, br, m_cap, beta, outside_xi, eps, delta) -> None:
        q = Fraction(q)
        if q <= 1:
            raise ValueError("q must exceed 1")
        br = int(br)
        m_cap = int(m_cap)
        outside_xi = int(outside_xi)
        if br < 0:
            raise ValueError("br must be non-negative")
        if m_cap < 1:
            raise ValueError("the xi bound must be positive")
        if not 0 <= outside_xi <= m_cap:
            raise ValueError("outside_xi must lie in 0..m_cap")
        delta = Fraction(delta)
        if not 0 < delta < 1:
            raise ValueError("delta must lie strictly between 0 and 1")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "br", br)
        object.__setattr__(self, "m_cap", m_cap)
        object.__setattr__(self, "beta", tuple(int(c) for c in beta))
        object.__setattr__(self, "outside_xi", outside_xi)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "delta", delta)


def r_min(model: VarietyModel) -> int:
    """Minimal positive value of the anticanonical functional on the lattice."""
    if all(c == 0 for c in model.minus_k):
        raise ZeroFunctional("anticanonical functional is zero")
    return gcd(*(abs(c) for c in model.minus_k))


def _positive_rays(model: VarietyModel) -> list[tuple[int, ...]]:
    try:
        rays = cone_rays(model.nef_facets, model.rho)
    except ValueError as exc:
        raise UnboundedSlice(str(exc)) from exc
    for ray in rays:
        if dot(model.minus_k, ray) <= 0:
            raise UnboundedSlice(
                f"anticanonical degree not positive on nef ray {ray}"
            )
    return rays


def lattice_slice(model: VarietyModel, bound: int) -> list[tuple[int, ...]]:
    """Nef lattice classes with 0 < degree <= bound, lexicographically sorted.

    The slice polytope is the convex hull of the origin and the scaled rays
    (bound / ray degree) * ray, so its bounding box comes straight from the
    rays; the box points are then filtered by the facet and degree cuts.
    """
    if bound < 1:
        raise ValueError("slice bound must be positive")
    rays = _positive_rays(model)
    if not rays:
        return []
    lo = []
    hi = []
    for i in range(model.rho):
        coords = [Fraction(0)] + [
            Fraction(bound) * ray[i] / dot(model.minus_k, ray) for ray in rays
        ]
        lo.append(floor(min(coords)))
        hi.append(ceil(max(coords)))
    out = []
    for pt in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if not in_nef(model, pt):
            continue
        deg = dot(model.minus_k, pt)
        if 0 < deg <= bound:
            out.append(pt)
    return out


def _check_beta(model: VarietyModel, cfg: CountingConfig) -> None:
    if len(cfg.beta) != model.rho:
        raise ValueError(
            f"translate length {len(cfg.beta)} does not match lattice rank {model.rho}"
        )


def xi_value(model: VarietyModel, cfg: CountingConfig, alpha) -> int:
    """Component count: br on the beta-translate of the nef cone, the
    outside value elsewhere."""
    _check_beta(model, cfg)
    shifted = tuple(a - b for a, b in zip(alpha, cfg.beta))
    return cfg.br if in_nef(model, shifted) else cfg.outside_xi


def count_N(model: VarietyModel, cfg: CountingConfig, d: int) -> Fraction:
    """Counting function at degree step d (exact)."""
    if d < 1:
        raise ValueError("d must be positive")
    _check_beta(model, cfg)
    step = r_min(model)
    total = Fraction(0)
    for alpha in lattice_slice(model, d * step):
        total += xi_value(model, cfg, alpha) * cfg.q ** int(model.degree(alpha))
    return total


def count_N_liberated(model: VarietyModel, cfg: CountingConfig, d: int) -> Fraction:
    """Counting function restricted to classes whose certified bound beats
    the threshold at d.  Classes whose bound fails to certify are dropped
    even if curves of that class happen to be liberated, so this is a
    conservative undercount."""
    if d < 1:
        raise ValueError("d must be positive")
    step = r_min(model)
    total = Fraction(0)
    for alpha in lattice_slice(model, d * step):
        bound = liberated_lower_bound(model, alpha)
        if cfg.eps.admits(bound, d):
            total += xi_value(model, cfg, alpha) * cfg.q ** int(model.degree(alpha))
    return total


@dataclass(frozen=True)
class CountRow:
    d: int
    points: int
    liberated: int
    n_value: Fraction
    n_liberated: Fraction
    ratio: Fraction | None


@dataclass(frozen=True)
class CountReport:
    rows: tuple[CountRow, ...]
    d0: int | None
    delta: Fraction

    def render_tsv(self) -> str:
        lines = [
            "# N sums xi(alpha) * q^degree over nef lattice classes with"
            " 0 < degree <= d * step",
            "d\tpoints\tliberated\tN\tN_lib\tratio",
        ]
        for row in self.rows:
            ratio = "-" if row.ratio is None else str(row.ratio)
            lines.append(
                f"{row.d}\t{row.points}\t{row.liberated}\t"
                f"{row.n_value}\t{row.n_liberated}\t{ratio}"
            )
        return "\n".join(lines) + "\n"


def ratio_check(model: VarietyModel, cfg: CountingConfig, d_values) -> CountReport:
    """Tabulate N, its liberated restriction, and their ratio per degree.

    ``d0`` is the smallest tested d from which every later tested ratio
    exceeds 1 - delta (rows with N = 0 never qualify); None when no suffix
    works.
    """
    ds = sorted(set(int(d) for d in d_values))
    if not ds or ds[0] < 1:
        raise ValueError("d values must be positive")
    _check_beta(model, cfg)
    step = r_min(model)
    points = lattice_slice(model, ds[-1] * step)
    data = []
    for alpha in points:
        deg = int(model.degree(alpha))
        weight = xi_value(model, cfg, alpha) * cfg.q**deg
        bound = liberated_lower_bound(model, alpha)
        data.append((deg, weight, bound))
    data.sort(key=lambda rec: rec[0])

    rows = []
    for d in ds:
        cutoff = d * step
        n_value = Fraction(0)
        n_lib = Fraction(0)
        npts = 0
        nlib = 0
        for deg, weight, bound in data:
            if deg > cutoff:
                break
            npts += 1
            n_value += weight
            if cfg.eps.admits(bound, d):
                nlib += 1
                n_lib += weight
        ratio = n_lib / n_value if n_value > 0 else None
        rows.append(CountRow(d, npts, nlib, n_value, n_lib, ratio))

    threshold = 1 - cfg.delta
    d0 = None
    for row in reversed(rows):
        if row.ratio is not None and row.ratio > threshold:
            d0 = row.d
        else:
            break
    return CountReport(tuple(rows), d0, cfg.delta)
