"""Orbit-level polygons and the mu-ordinary Newton polygon.

Each orbit o of multiplication by p carries a convex polygon drawn on
a normalized scale: a path from (0, 0) to (g(o), sum of f over o)
whose slopes lie in [0, |o|] and whose vertices sit on the integer
lattice.  Rescaling slopes by 1/|o| and widths by |o| (the lambda
scale) turns it into a piece of an honest Newton polygon; the pieces
of all orbits amalgamate to the polygon of the whole family.

The lowest admissible orbit polygon, computed here directly from the
signature, assembles into the mu-ordinary polygon: the one generically
attained, and the greatest element of the Kottwitz partial order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import EndpointMismatchError, PolygonSyntaxError
from .monodromy import MonodromyDatum, Signature, signature
from .orbits import Orbit, decompose, g_of_orbit
from .polygon import NewtonPolygon

__all__ = [
    "OrbitPolygon",
    "mu_ordinary_orbit",
    "mu_ordinary_of_signature",
    "mu_ordinary",
    "beta_of_signature",
    "p_rank_bound",
]


class OrbitPolygon:
    """Convex polygon on the normalized scale of one orbit.

    Stored as (slope, width) pairs with strictly increasing slopes in
    [0, |orbit|]; widths are positive integers and every segment rises
    by an integer, so all vertices are lattice points.  Values on the
    integer grid are precomputed because enumeration compares these
    polygons pointwise very often.
    """

    __slots__ = ("orbit", "segments", "_grid")

    def __init__(self, orbit: Orbit, segments: Iterable[tuple[Fraction | int, int]]):
        segs = tuple((Fraction(s), int(w)) for s, w in segments)
        size = orbit.size
        prev = None
        for s, w in segs:
            if w < 1:
                raise PolygonSyntaxError(f"orbit polygon width {w} < 1")
            if not 0 <= s <= size:
                raise PolygonSyntaxError(f"orbit slope {s} outside [0, {size}]")
            if prev is not None and s <= prev:
                raise PolygonSyntaxError("orbit slopes must strictly increase")
            if (s * w).denominator != 1:
                raise PolygonSyntaxError(f"segment {s}x{w} has a non-lattice vertex")
            prev = s
        self.orbit = orbit
        self.segments = segs
        grid = [Fraction(0)]
        for s, w in segs:
            for _ in range(w):
                grid.append(grid[-1] + s)
        self._grid = tuple(grid)

    @property
    def height(self) -> int:
        return len(self._grid) - 1

    @property
    def degree(self) -> int:
        return int(self._grid[-1])

    @property
    def is_empty(self) -> bool:
        return not self.segments

    def value_at(self, x: int) -> Fraction:
        return self._grid[x]

    def lies_on_or_above(self, other: "OrbitPolygon") -> bool:
        """Pointwise comparison; integer grid points suffice since all
        vertices of both polygons are lattice points."""
        if self.height != other.height or self.degree != other.degree:
            raise EndpointMismatchError(
                f"orbit polygon endpoints differ: ({self.height}, {self.degree})"
                f" vs ({other.height}, {other.degree})"
            )
        return all(a >= b for a, b in zip(self._grid, other._grid))

    def dual(self) -> "OrbitPolygon":
        """The polygon of the dual orbit, slopes s -> |o| - s."""
        size = self.orbit.size
        return OrbitPolygon(
            self.orbit.dual(), [(size - s, w) for s, w in reversed(self.segments)]
        )

    @property
    def is_self_symmetric(self) -> bool:
        """Invariance of the slope multiset under s -> |o| - s."""
        size = self.orbit.size
        forward = self.segments
        backward = tuple((size - s, w) for s, w in reversed(forward))
        return forward == backward

    def lambda_slopes(self) -> tuple[Fraction, ...]:
        """Distinct slopes on the lambda scale, ascending."""
        size = self.orbit.size
        return tuple(s / size for s, _ in self.segments)

    def lambda_scale(self) -> NewtonPolygon:
        """The Newton polygon piece this orbit contributes."""
        size = self.orbit.size
        return NewtonPolygon((s / size, w * size) for s, w in self.segments)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrbitPolygon):
            return NotImplemented
        return self.orbit == other.orbit and self.segments == other.segments

    def __hash__(self) -> int:
        return hash((self.orbit, self.segments))

    def __str__(self) -> str:
        inner = ", ".join(f"{s}x{w}" for s, w in self.segments)
        return f"<{inner}>"

    def __repr__(self) -> str:
        return f"OrbitPolygon({self.orbit!r}, {list(self.segments)!r})"


def mu_ordinary_orbit(orbit: Orbit, f: Signature) -> OrbitPolygon:
    """Lowest orbit polygon allowed by the signature.

    Cutting the orbit at each level c counts how many members have
    f >= c; those counts, read from the top level g(o) down to 1, are
    the slopes, each occupying the width between consecutive levels.
    """
    g_o = g_of_orbit(orbit, f)
    if g_o == 0:
        return OrbitPolygon(orbit, [])
    values = [f(n) for n in orbit.members]
    levels = sorted({v for v in values if 1 <= v <= g_o - 1}, reverse=True)
    bounds = [g_o] + levels + [0]
    segments = []
    for t in range(len(bounds) - 1):
        slope = sum(1 for v in values if v >= bounds[t])
        segments.append((Fraction(slope), bounds[t] - bounds[t + 1]))
    return OrbitPolygon(orbit, segments)


def mu_ordinary_of_signature(f: Signature, p: int) -> NewtonPolygon:
    """Assemble the mu-ordinary polygon from orbit contributions."""
    dec = decompose(f.m, p)
    total = NewtonPolygon()
    for rep in dec.representatives():
        piece = mu_ordinary_orbit(rep, f)
        total = total + piece.lambda_scale()
        if not rep.is_self_dual:
            total = total + piece.lambda_scale().dual()
    return total


def mu_ordinary(datum: MonodromyDatum, p: int) -> NewtonPolygon:
    """Mu-ordinary Newton polygon of the family of the datum at p."""
    return mu_ordinary_of_signature(signature(datum), p)


def beta_of_signature(f: Signature, p: int) -> int:
    """Sum over orbits of |o| times the smallest f value on o."""
    dec = decompose(f.m, p)
    return sum(o.size * min(f(n) for n in o.members) for o in dec.orbits)


def p_rank_bound(datum: MonodromyDatum, p: int) -> int:
    """Generic p-rank of the family, equal to the mu-ordinary slope-0 count."""
    return beta_of_signature(signature(datum), p)
