"""Orbits of multiplication by p on the nonzero residues mod m.

Newton polygons in characteristic p only depend on the class of p mod
m, and they decompose along the orbits of n -> p*n on {1, ..., m-1}.
An orbit o pairs with its dual -o; the pair supports g(o) = f(n) +
f(m - n) many slopes, a quantity constant on the orbit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadResidueError, InconsistentSignatureError
from .monodromy import Signature

__all__ = ["Orbit", "OrbitDecomposition", "decompose", "g_of_orbit"]


@dataclass(frozen=True)
class Orbit:
    """One orbit of multiplication by p on nonzero residues mod m."""

    m: int
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def min(self) -> int:
        return self.members[0]

    @property
    def e(self) -> int:
        """Order of the members in Z/m, the same for every member."""
        return self.m // math.gcd(self.min, self.m)

    def dual(self) -> "Orbit":
        return Orbit(self.m, tuple((self.m - n) % self.m for n in self.members))

    @property
    def is_self_dual(self) -> bool:
        return self.dual() == self

    def __contains__(self, n: int) -> bool:
        return n % self.m in self.members

    def __str__(self) -> str:
        return "{" + ",".join(str(n) for n in self.members) + "}"


@dataclass(frozen=True)
class OrbitDecomposition:
    """All orbits of n -> p*n mod m, ordered by smallest member."""

    m: int
    p_class: int
    orbits: tuple[Orbit, ...]

    def orbit_of(self, n: int) -> Orbit:
        n %= self.m
        for o in self.orbits:
            if n in o.members:
                return o
        raise BadResidueError(f"residue {n} has no orbit mod {self.m}")

    def representatives(self) -> tuple[Orbit, ...]:
        """One orbit per dual pair: the self-duals plus the smaller of each pair."""
        return tuple(o for o in self.orbits if o.min <= o.dual().min)

    def __iter__(self):
        return iter(self.orbits)


def decompose(m: int, p: int) -> OrbitDecomposition:
    """Orbit decomposition for the class of p mod m; needs gcd(p, m) = 1."""
    if m < 2:
        raise BadResidueError(f"m = {m} < 2")
    q = p % m
    if math.gcd(q, m) != 1:
        raise BadResidueError(f"p = {p} shares a factor with m = {m}")
    seen: set[int] = set()
    orbits: list[Orbit] = []
    for n in range(1, m):
        if n in seen:
            continue
        members = []
        k = n
        while k not in seen:
            seen.add(k)
            members.append(k)
            k = (k * q) % m
        orbits.append(Orbit(m, tuple(members)))
    orbits.sort(key=lambda o: o.min)
    return OrbitDecomposition(m, q, tuple(orbits))


def g_of_orbit(orbit: Orbit, f: Signature) -> int:
    """The constant value f(n) + f(m - n) over the orbit.

    A signature that is not constant this way cannot come from a datum
    at this residue class, so the mismatch is reported as an error.
    """
    vals = {f(n) + f(orbit.m - n) for n in orbit.members}
    if len(vals) != 1:
        raise InconsistentSignatureError(
            f"f(n) + f(m - n) takes values {sorted(vals)} on orbit {orbit}"
        )
    return vals.pop()
