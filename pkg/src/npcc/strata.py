"""Kottwitz sets, stratum codimensions, and unlikely-intersection checks.

The Newton polygons that occur for a fixed datum and residue class form
a finite poset B.  It factors over orbit-pair representatives: each
factor is the set of convex lattice paths on the orbit's normalized
scale that lie on or above the mu-ordinary orbit polygon, and B is the
Cartesian product of the factors under the componentwise order.  The
mu-ordinary element is the unique top; the straight-segment choice in
every factor is the unique bottom (the basic element).

The second half of the module measures how special a polygon is inside
the full Siegel moduli space: the stratum codimension as a lattice
point count, the comparison against dim M_g (condition (U)), and three
closed-form sufficient bounds for that comparison.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, EnumerationCapError
from .monodromy import MonodromyDatum, Signature, signature
from .muord import OrbitPolygon, mu_ordinary_orbit
from .orbits import Orbit, decompose
from .polygon import NewtonPolygon

__all__ = [
    "DEFAULT_ENUM_CAP",
    "enumerate_orbit_component",
    "KottwitzElement",
    "KottwitzSet",
    "kottwitz_set",
    "kottwitz_set_of_signature",
    "codim_sh",
    "omega_count",
    "dim_moduli",
    "ConditionUReport",
    "condition_u",
    "threshold_half_slope_density",
    "threshold_repeated_summand",
    "threshold_ss_chain",
]

DEFAULT_ENUM_CAP = 1_000_000


def enumerate_orbit_component(
    orbit: Orbit, f: Signature, cap: int | None = DEFAULT_ENUM_CAP
) -> tuple[OrbitPolygon, ...]:
    """All admissible normalized polygons of one orbit, lowest first.

    Admissible means: a convex path from (0, 0) to (g(o), sum of f over
    o) with strictly increasing slopes in [0, |o|], every vertex on the
    integer lattice, lying on or above the mu-ordinary orbit polygon,
    and (for self-dual orbits) symmetric under slope -> |o| - slope.
    Vertex enumeration is exhaustive: between vertices the path is
    linear and the mu-ordinary polygon convex, so their difference is
    concave and endpoint checks imply pointwise domination.
    """
    mu = mu_ordinary_orbit(orbit, f)
    big_g = mu.height
    big_d = mu.degree
    size = orbit.size
    if big_g == 0:
        return (mu,)
    found: list[tuple[tuple[Fraction, int], ...]] = []

    def rec(x: int, y: int, last: Fraction | None, segs: tuple) -> None:
        if x == big_g:
            found.append(segs)
            if cap is not None and len(found) > cap:
                raise EnumerationCapError(
                    f"more than {cap} candidates on orbit {orbit}; raise the cap"
                )
            return
        for x2 in range(x + 1, big_g + 1):
            width = x2 - x
            start = y if last is None else math.floor(y + last * width) + 1
            for y2 in range(start, big_d + 1):
                slope = Fraction(y2 - y, width)
                if last is not None and slope <= last:
                    continue
                if slope > size:
                    break
                if y2 < mu.value_at(x2):
                    continue
                rest_w, rest_r = big_g - x2, big_d - y2
                if rest_w == 0:
                    if rest_r != 0:
                        continue
                elif not slope * rest_w < rest_r <= size * rest_w:
                    continue
                rec(x2, y2, slope, segs + ((slope, width),))

    rec(0, 0, None, ())
    polys = [OrbitPolygon(orbit, segs) for segs in found]
    if orbit.is_self_dual:
        polys = [q for q in polys if q.is_self_symmetric]
    polys.sort(key=lambda q: q._grid)
    assert polys and polys[0] == mu, "mu-ordinary polygon must be the lowest candidate"
    return tuple(polys)


class KottwitzElement:
    """One choice of admissible polygon per orbit-pair representative."""

    __slots__ = ("reps", "components", "total")

    def __init__(self, reps: tuple[Orbit, ...], components: tuple[OrbitPolygon, ...]):
        self.reps = reps
        self.components = components
        total = NewtonPolygon()
        for rep, comp in zip(reps, components):
            piece = comp.lambda_scale()
            total = total + piece
            if not rep.is_self_dual:
                total = total + piece.dual()
        self.total = total

    def component(self, orbit: Orbit) -> OrbitPolygon:
        """The normalized polygon on the given orbit, dualizing if needed."""
        for rep, comp in zip(self.reps, self.components):
            if rep == orbit:
                return comp
            if rep.dual() == orbit:
                return comp.dual()
        raise DomainError(f"orbit {orbit} does not belong to this element")

    def leq(self, other: "KottwitzElement") -> bool:
        """Componentwise order; smaller means every component lies higher."""
        return all(
            a.lies_on_or_above(b) for a, b in zip(self.components, other.components)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, KottwitzElement):
            return NotImplemented
        return self.reps == other.reps and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.reps, self.components))

    def __str__(self) -> str:
        return str(self.total)


class KottwitzSet:
    """The full poset of Newton polygons for one signature and residue class.

    Elements are materialized eagerly in a deterministic order (the
    product of the per-factor orders, lowest polygon first), so the
    first element is the top of the poset.  The length of an element is
    the longest strictly increasing chain from it up to the top; in a
    product poset that is the sum of the per-factor lengths.
    """

    def __init__(self, f: Signature, p: int, cap: int | None = DEFAULT_ENUM_CAP):
        dec = decompose(f.m, p)
        self.m = f.m
        self.p_class = dec.p_class
        self.signature = f
        self.reps = dec.representatives()
        self.factors = tuple(enumerate_orbit_component(o, f, cap) for o in self.reps)
        count = math.prod(len(c) for c in self.factors)
        if cap is not None and count > cap:
            raise EnumerationCapError(
                f"Kottwitz set would have {count} elements, above the cap {cap}"
            )
        factor_lengths = tuple(self._chain_lengths(c) for c in self.factors)
        elements = []
        lengths = []
        for combo in itertools.product(*(range(len(c)) for c in self.factors)):
            comps = tuple(c[i] for c, i in zip(self.factors, combo))
            elements.append(KottwitzElement(self.reps, comps))
            lengths.append(sum(fl[i] for fl, i in zip(factor_lengths, combo)))
        self.elements = tuple(elements)
        self.lengths = tuple(lengths)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.top = self.elements[0]
        self.bottom = self.elements[-1]
        assert all(e.leq(self.top) for e in self.elements), "top must be maximum"
        assert all(self.bottom.leq(e) for e in self.elements), "bottom must be minimum"

    @staticmethod
    def _chain_lengths(candidates: tuple[OrbitPolygon, ...]) -> tuple[int, ...]:
        """Longest chain up to the factor's top, per candidate.

        Candidates come sorted lowest first, so anything above a given
        candidate appears earlier and its length is already known.
        """
        lengths: list[int] = []
        for i, c in enumerate(candidates):
            if i == 0:
                lengths.append(0)
                continue
            best = -1
            for j in range(i):
                if candidates[j] != c and c.lies_on_or_above(candidates[j]):
                    best = max(best, lengths[j])
            assert best >= 0, "every candidate must lie above the factor top"
            lengths.append(best + 1)
        return tuple(lengths)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index_of(self, element: KottwitzElement) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise DomainError(f"element {element} is not in this Kottwitz set") from None

    def length(self, element: KottwitzElement) -> int:
        return self.lengths[self.index_of(element)]

    def totals(self) -> tuple[NewtonPolygon, ...]:
        """Distinct total polygons, in first-appearance order."""
        seen = []
        for e in self.elements:
            if e.total not in seen:
                seen.append(e.total)
        return tuple(seen)

    def elements_with_total(self, nu: NewtonPolygon) -> tuple[KottwitzElement, ...]:
        return tuple(e for e in self.elements if e.total == nu)

    def codim_of_polygon(self, nu: NewtonPolygon) -> int:
        """Smallest length among elements whose total polygon is nu."""
        matches = self.elements_with_total(nu)
        if not matches:
            raise DomainError(f"polygon {nu} does not occur in this Kottwitz set")
        return min(self.length(e) for e in matches)

    def hasse_edges(self) -> tuple[tuple[int, int], ...]:
        """Cover relations as (lower, upper) element indices."""
        n = len(self.elements)
        below = [
            frozenset(
                j for j in range(n) if j != i and self.elements[j].leq(self.elements[i])
            )
            for i in range(n)
        ]
        edges = []
        for i in range(n):
            for j in below[i]:
                if not any(j in below[k] for k in below[i] if k != j):
                    edges.append((j, i))
        return tuple(sorted(edges))

    def hasse_dot(self) -> str:
        """Hasse diagram in DOT format, top element drawn at the top."""
        lines = ["digraph kottwitz {", "  rankdir=BT;"]
        for i, e in enumerate(self.elements):
            lines.append(f'  e{i} [label="{e.total} (length {self.lengths[i]})"];')
        for j, i in self.hasse_edges():
            lines.append(f"  e{j} -> e{i};")
        lines.append("}")
        return "\n".join(lines)


def kottwitz_set_of_signature(
    f: Signature, p: int, cap: int | None = DEFAULT_ENUM_CAP
) -> KottwitzSet:
    return KottwitzSet(f, p, cap)


def kottwitz_set(
    datum: MonodromyDatum, p: int, cap: int | None = DEFAULT_ENUM_CAP
) -> KottwitzSet:
    return KottwitzSet(signature(datum), p, cap)


def codim_sh(ks: KottwitzSet, element: KottwitzElement) -> int:
    """Codimension of the element's stratum inside the family: its length."""
    return ks.length(element)


def omega_count(nu: NewtonPolygon) -> int:
    """Lattice points (x, y) with 0 <= x, y <= g strictly below the polygon.

    This equals the codimension of the stratum of nu inside the moduli
    space of g-dimensional principally polarized abelian varieties.
    """
    g = nu.genus
    return sum(math.ceil(nu.value_at(x)) for x in range(g + 1))


def dim_moduli(g: int) -> int:
    """Dimension of the moduli space of smooth genus-g curves."""
    if g >= 2:
        return 3 * g - 3
    return 1 if g == 1 else 0


@dataclass(frozen=True)
class ConditionUReport:
    """Comparison of dim M_g against the ambient stratum codimension."""

    genus: int
    dim_mg: int
    codim_ag: int
    holds: bool

    def to_json_obj(self) -> dict:
        return {
            "genus": self.genus,
            "dim_mg": self.dim_mg,
            "codim_ag": self.codim_ag,
            "holds": self.holds,
        }


def condition_u(nu: NewtonPolygon) -> ConditionUReport:
    """Is a curve with this polygon an unlikely intersection candidate?

    Holds when dim M_g is strictly smaller than the codimension of the
    polygon's stratum in the ambient moduli of abelian varieties, so
    that a dimension count alone would predict an empty intersection.
    """
    g = nu.genus
    dim_mg = dim_moduli(g)
    codim_ag = omega_count(nu)
    return ConditionUReport(g, dim_mg, codim_ag, dim_mg < codim_ag)


def _require_positive(**kwargs) -> None:
    for name, value in kwargs.items():
        if value <= 0:
            raise DomainError(f"{name} = {value} must be positive")


def threshold_half_slope_density(g: int, t) -> bool:
    """Sufficient bound for condition (U) from the density of slope 1/2.

    For a symmetric polygon of genus g whose slope-1/2 multiplicity is
    at least 2*t*g, condition (U) holds once g >= 12/t^2; this evaluates
    that bound exactly as g*t^2 >= 12.  One-directional only.
    """
    t = Fraction(t)
    _require_positive(g=g, t=t)
    if t > 1:
        raise DomainError(f"t = {t} must lie in (0, 1]")
    return g * t * t >= 12

def threshold_repeated_summand(n: int, g: int, delta: int, h: int) -> bool:
    """Sufficient bound for condition (U) on nu1^n amalgamated with nu2.

    Here nu1 is symmetric of genus g >= 1 carrying slope 1/2 with
    multiplicity 2*delta > 0, and nu2 is symmetric of genus h.  The
    bound n >= max(15g/delta^2, 9*sqrt(h)/delta) is evaluated in the
    square-root-free form n*delta^2 >= 15g and n^2*delta^2 >= 81h.
    One-directional only.
    """
    _require_positive(n=n, g=g, delta=delta, h=h)
    return n * delta * delta >= 15 * g and n * n * delta * delta >= 81 * h


def threshold_ss_chain(n: int, h: int) -> bool:
    """Sufficient bound for condition (U) on ss^(hn) + ord^(2h(n-1)).

    This is the polygon of the n-step chain built from a three-branch-
    point base of genus h; the bound is n >= 34/h, evaluated as
    n*h >= 34.  One-directional only.
    """
    _require_positive(n=n, h=h)
    return n * h >= 34
