"""Monodromy data for cyclic covers of the projective line.

A datum (m, N, a) records a degree-m cyclic cover branched over N
points with local monodromy a = (a(1), ..., a(N)), entries mod m
summing to 0 mod m.  Zero entries mark unbranched labels and are only
legal on generalized data (degenerate fibers of clutching families).

The signature of a datum assigns to each residue n mod m the dimension
f(n) of the corresponding character eigenspace of differentials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidDatumError

__all__ = [
    "MonodromyDatum",
    "Signature",
    "signature",
    "genus",
    "induce",
    "normalize",
    "pad_first",
    "pad_last",
    "strip_zeros",
]


def _gcd_m(value: int, m: int) -> int:
    """gcd with the convention gcd(0, m) = m."""
    return math.gcd(value % m, m) or m


@dataclass(frozen=True)
class MonodromyDatum:
    """Branching datum (m, N, a) of a cyclic cover of the line."""

    m: int
    a: tuple[int, ...]
    generalized: bool = False

    def __post_init__(self):
        if self.m < 1:
            raise InvalidDatumError(f"m = {self.m} < 1")
        object.__setattr__(self, "a", tuple(int(x) % self.m for x in self.a))

    @property
    def N(self) -> int:
        return len(self.a)

    def validate(self, require_primitive: bool = False) -> "MonodromyDatum":
        """Check the datum constraints, returning self for chaining.

        Primitivity (gcd of the entries and m equal to 1) is optional
        because data induced along a group extension are intentionally
        imprimitive.
        """
        if self.m < 2:
            raise InvalidDatumError(f"m = {self.m} < 2")
        if self.N < 3:
            raise InvalidDatumError(f"N = {self.N} < 3")
        if sum(self.a) % self.m:
            raise InvalidDatumError(f"entries {self.a} do not sum to 0 mod {self.m}")
        if not self.generalized and any(x == 0 for x in self.a):
            raise InvalidDatumError(f"zero entry in non-generalized datum {self.a}")
        if require_primitive and math.gcd(self.m, *self.a) != 1:
            raise InvalidDatumError(f"datum {self.a} mod {self.m} is imprimitive")
        return self

    # -- text and JSON ----------------------------------------------------

    def text(self) -> str:
        return f"{self.m}:{self.N}:{','.join(str(x) for x in self.a)}"

    @classmethod
    def from_text(cls, text: str) -> "MonodromyDatum":
        parts = text.strip().split(":")
        if len(parts) != 3:
            raise InvalidDatumError(f"datum text needs m:N:a1,...,aN, got {text!r}")
        try:
            m = int(parts[0])
            n = int(parts[1])
            a = tuple(int(x) for x in parts[2].split(","))
        except ValueError as exc:
            raise InvalidDatumError(f"bad datum text {text!r}") from exc
        if len(a) != n:
            raise InvalidDatumError(f"datum text {text!r} lists {len(a)} entries, N = {n}")
        return cls(m, a, generalized=any(x % m == 0 for x in a))

    def to_json_obj(self) -> dict:
        return {"m": self.m, "a": list(self.a), "generalized": self.generalized}

    @classmethod
    def from_json_obj(cls, obj) -> "MonodromyDatum":
        try:
            return cls(int(obj["m"]), tuple(obj["a"]), bool(obj.get("generalized", False)))
        except (KeyError, TypeError) as exc:
            raise InvalidDatumError(f"bad datum JSON: {obj!r}") from exc

    def __str__(self) -> str:
        return self.text()


@dataclass(frozen=True)
class Signature:
    """Eigenspace dimensions f(1), ..., f(m-1), indexed by nonzero residues."""

    m: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.m - 1:
            raise InvalidDatumError(
                f"signature mod {self.m} needs {self.m - 1} values, got {len(self.values)}"
            )

    def __call__(self, n: int) -> int:
        n %= self.m
        if n == 0:
            return 0
        return self.values[n - 1]

    @property
    def total(self) -> int:
        return sum(self.values)

    def induced(self, factor: int) -> "Signature":
        """Pull back along Z/(factor*m) -> Z/m, so f'(n) = f(n mod m)."""
        d = int(factor)
        if d < 1:
            raise InvalidDatumError(f"induction factor {d} < 1")
        big = d * self.m
        return Signature(big, tuple(self(n % self.m) for n in range(1, big)))

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"


def signature(datum: MonodromyDatum) -> Signature:
    """Eigenspace dimensions of a validated datum.

    For a residue n with n*a(i) nonzero mod m for at least one i the
    dimension is -1 + sum_i <-n*a(i)/m> with <.> the fractional part.
    When every product n*a(i) vanishes mod m the character is trivial
    on each connected component of the cover and the dimension is 0;
    this only happens for imprimitive (induced) data.
    """
    datum.validate()
    m = datum.m
    vals = []
    for n in range(1, m):
        terms = [(-n * ai) % m for ai in datum.a if ai % m]
        if not any(terms):
            vals.append(0)
            continue
        total = -1 + sum(Fraction(t, m) for t in terms)
        if total.denominator != 1 or total < 0:
            raise InvalidDatumError(
                f"non-integral or negative eigenspace dimension {total} at n = {n}"
            )
        vals.append(int(total))
    return Signature(m, tuple(vals))


def genus(datum: MonodromyDatum) -> int:
    """Genus by Riemann-Hurwitz: 2g - 2 = (N - 2) m - sum gcd(a(i), m)."""
    datum.validate()
    m = datum.m
    rhs = (datum.N - 2) * m - sum(_gcd_m(ai, m) for ai in datum.a)
    if rhs % 2:
        raise InvalidDatumError(f"odd Riemann-Hurwitz total {rhs} for {datum}")
    return 1 + rhs // 2


def induce(datum: MonodromyDatum, d: int) -> MonodromyDatum:
    """The imprimitive datum (d*m, N, d*a) of the induced d-fold disjoint cover."""
    d = int(d)
    if d < 1:
        raise InvalidDatumError(f"induction factor {d} < 1")
    return MonodromyDatum(d * datum.m, tuple(d * ai for ai in datum.a), datum.generalized)


def normalize(datum: MonodromyDatum) -> tuple[int, ...]:
    """Smallest sorted entry tuple over multiplication by units mod m.

    Two data with the same normalization differ by relabeling branch
    points and replacing the cover's group generator.
    """
    datum.validate()
    m = datum.m
    best = None
    for u in range(1, m):
        if math.gcd(u, m) != 1:
            continue
        cand = tuple(sorted((u * ai) % m for ai in datum.a))
        if best is None or cand < best:
            best = cand
    return best


def pad_first(datum: MonodromyDatum) -> MonodromyDatum:
    """Prepend an unbranched label, producing a generalized datum."""
    return MonodromyDatum(datum.m, (0,) + datum.a, generalized=True)


def pad_last(datum: MonodromyDatum) -> MonodromyDatum:
    """Append an unbranched label, producing a generalized datum."""
    return MonodromyDatum(datum.m, datum.a + (0,), generalized=True)


def strip_zeros(datum: MonodromyDatum) -> MonodromyDatum:
    """Drop unbranched labels; the result may or may not stay generalized."""
    kept = tuple(x for x in datum.a if x)
    return MonodromyDatum(datum.m, kept, generalized=False)
