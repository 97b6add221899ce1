"""Certified inductive families of Newton polygons.

Chains of admissible clutchings, starting from small base families,
produce monodromy data of unbounded genus together with a claimed
Newton polygon.  A CertifiedFamily packages the final datum, the
residue class of the prime, the claimed polygon, and a replayable log
of the steps that built it.  Every step re-checks the arithmetic
hypotheses it depends on (admissibility, balancedness, the slope
interval test, defect and genus bookkeeping), and mu-ordinarity claims
are recomputed from scratch on the datum they are made for.  Existence
statements that cannot be decided from a residue class are recorded as
plain assumption strings instead of being silently trusted.
"""

from __future__ import annotations

import copy
import dataclasses
import math

from .clutch import check_compatible, check_self_compatible, clutch_report
from .errors import (
    BadResidueError,
    DomainError,
    GeneratorError,
    NotABaseCaseError,
)
from .monodromy import MonodromyDatum, genus, normalize, pad_first, pad_last
from .muord import mu_ordinary
from .polygon import ORD, NewtonPolygon
from .strata import DEFAULT_ENUM_CAP, kottwitz_set

__all__ = [
    "CertifiedFamily",
    "base_case",
    "payload_base",
    "extend_ord",
    "self_clutch",
    "pad_and_clutch",
    "double_induction",
    "verify_family",
    "replay",
]

_UNBALANCED_NOTE = (
    "joining step not balanced: the claimed polygon follows the"
    " construction recipe and its occurrence on a smooth member is"
    " assumed"
)


@dataclasses.dataclass(frozen=True)
class CertifiedFamily:
    """A monodromy datum with a certified Newton polygon claim.

    mu_ordinary_claim records whether the claimed polygon is asserted to
    be the mu-ordinary one of the datum; such claims are recomputed at
    every construction step.  payload_codim, when not None, is the
    codimension of the claimed polygon inside the Kottwitz set where it
    was first certified; the clutching steps transport that codimension
    unchanged, so it can be rechecked on the final datum.
    """

    datum: MonodromyDatum
    p_class: int
    claimed_np: NewtonPolygon
    mu_ordinary_claim: bool
    steps: tuple = ()
    assumptions: tuple = ()
    payload_codim: int | None = None

    def __post_init__(self):
        self.datum.validate()
        m = self.datum.m
        p = self.p_class % m
        if math.gcd(p, m) != 1:
            raise BadResidueError(
                f"residue class {self.p_class} is not invertible mod {m}"
            )
        object.__setattr__(self, "p_class", p)
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "assumptions", tuple(self.assumptions))
        if self.claimed_np.genus != genus(self.datum):
            raise GeneratorError(
                "claimed polygon has genus"
                f" {self.claimed_np.genus}, datum has genus"
                f" {genus(self.datum)}"
            )

    def certificate(self) -> dict:
        """Serializable record of the claim and its full derivation."""
        return {
            "version": 1,
            "datum": self.datum.to_json_obj(),
            "p_class": self.p_class,
            "polygon": self.claimed_np.to_json_obj(),
            "polygon_text": str(self.claimed_np),
            "mu_ordinary_claim": self.mu_ordinary_claim,
            "payload_codim": self.payload_codim,
            "steps": copy.deepcopy(list(self.steps)),
            "assumptions": list(self.assumptions),
        }


def _gcd_m(value: int, m: int) -> int:
    g = math.gcd(value % m, m)
    return g if g else m


def _self_pair(a, m):
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if (a[i] + a[j]) % m == 0:
                return i, j
    return None


def _designated_pair(a1, a2, m):
    for i in range(len(a1)):
        for j in range(len(a2)):
            if (a1[i] + a2[j]) % m == 0:
                return i, j
    return None


def _reorder_ends(datum: MonodromyDatum, i: int, j: int) -> MonodromyDatum:
    a = datum.a
    middle = tuple(a[k] for k in range(len(a)) if k != i and k != j)
    return MonodromyDatum(
        datum.m, (a[i],) + middle + (a[j],), generalized=datum.generalized
    )


def _move_value(datum: MonodromyDatum, value: int, to_end: bool) -> MonodromyDatum:
    a = list(datum.a)
    value %= datum.m
    for k, entry in enumerate(a):
        if entry % datum.m == value:
            a.pop(k)
            break
    else:
        raise GeneratorError(
            f"value {value} not present in datum {datum.text()}"
        )
    a = a + [value] if to_end else [value] + a
    return MonodromyDatum(datum.m, tuple(a), generalized=datum.generalized)


def _fold_chain(std: MonodromyDatum, n: int, p: int, r: int) -> MonodromyDatum:
    """Clutch n copies of std end to end and return the folded datum."""
    accum = std
    for _ in range(n - 1):
        rep = clutch_report(accum, std, p=p)
        assert rep.balanced and rep.epsilon == r - 1
        accum = rep.gamma3
    return accum


def _chain_parts(datum, claim, mu_claim, p, i, j, n):
    """Fold n copies of a family at the complementary pair (i, j).

    Returns the folded datum, the claimed polygon and the r of the
    joint.  Payload claims keep the last copy unchained: the first
    n - 1 copies form a mu-ordinary chain which is then joined to the
    payload copy, and that joint must pass the direct interval test.
    """
    m, a = datum.m, datum.a
    if not (0 <= i < len(a) and 0 <= j < len(a)) or i == j:
        raise GeneratorError(f"invalid label pair ({i}, {j})")
    if (a[i] + a[j]) % m:
        raise GeneratorError(
            f"entries at labels ({i}, {j}) are not complementary mod {m}"
        )
    r = _gcd_m(a[i], m)
    std = _reorder_ends(datum, i, j)
    u = mu_ordinary(std, p)
    if mu_claim:
        assert u == claim
        chain = _fold_chain(std, n, p, r)
        np3 = claim.power(n) + ORD.power((n - 1) * (r - 1))
        assert np3 == mu_ordinary(chain, p)
        return chain, np3, r
    if not check_self_compatible(datum, p):
        raise GeneratorError(
            "hypothesis failure: an orbit component of the mu-ordinary"
            " polygon has more than two distinct slopes"
        )
    twin = _fold_chain(std, n - 1, p, r)
    rep = clutch_report(twin, std, p=p)
    assert rep.balanced and rep.epsilon == r - 1
    if rep.compatible is not True:
        raise GeneratorError(
            "hypothesis failure: the joining step fails the direct slope"
            " interval test"
        )
    np3 = u.power(n - 1) + claim + ORD.power((n - 1) * (r - 1))
    return rep.gamma3, np3, r


def _extend_parts(datum, claim, c, p, mu_claim):
    """Clutch a genus-zero three-point cover in front of the datum."""
    m = datum.m
    c %= m
    if not c:
        raise GeneratorError("c must be nonzero mod m")
    t = math.gcd(c, m)
    g1 = MonodromyDatum(m // t, (c // t, (m - c) // t, 0), generalized=True)
    assert genus(g1) == 0
    rep = clutch_report(g1, pad_first(datum), p=p)
    assert rep.epsilon == m - t
    assert rep.balanced and rep.compatible is True
    assert rep.gamma3.a[:2] == (c, (m - c) % m)
    np3 = claim + ORD.power(m - t)
    if mu_claim:
        assert np3 == mu_ordinary(rep.gamma3, p)
    return rep.gamma3, np3, t


def _padded_chain(datum, claim, p, n):
    """Mu-ordinary chain of n copies joined at two added unbranched labels."""
    if n == 1:
        return datum, claim
    padded = pad_last(pad_last(datum))
    return _chain_parts(padded, claim, True, p, padded.N - 2, padded.N - 1, n)[:2]


def _moonen_match(datum):
    from .catalog import moonen_families

    if any(v % datum.m == 0 for v in datum.a):
        return None
    key = normalize(datum)
    for fam in moonen_families():
        if fam.m == datum.m and fam.datum.N == datum.N:
            if normalize(fam.datum) == key:
                return fam.label
    return None


def base_case(datum: MonodromyDatum, p_class: int) -> CertifiedFamily:
    """Start a certified family at its mu-ordinary polygon.

    Succeeds when one of three checks supports the claim: the datum has
    exactly three branch points; the datum matches one of the twenty
    listed special families up to multiplier and relabeling; or the
    mu-ordinary polygon is the unique element of maximal p-rank in the
    Kottwitz set, in which case a prime-size condition is recorded as
    an assumption unless N = 4 or the class of p is +-1 mod m.  Raises
    NotABaseCaseError when no check applies.
    """
    datum.validate()
    u = mu_ordinary(datum, p_class)
    m, big_n = datum.m, datum.N
    clause = assumption = None
    if big_n == 3:
        clause = "N3"
        assumption = (
            "mu-ordinary stratum nonempty for the base datum"
            " (three branch points)"
        )
    if clause is None:
        label = _moonen_match(datum)
        if label is not None:
            clause = "catalog:" + label
            assumption = (
                "mu-ordinary stratum nonempty for the base datum"
                f" (matches listed family {label})"
            )
    if clause is None:
        totals = kottwitz_set(datum, p_class).totals()
        if sum(1 for t in totals if t.p_rank == u.p_rank) == 1:
            pc = p_class % m
            if big_n == 4:
                clause = "unique-max-p-rank:N4"
                assumption = (
                    "mu-ordinary stratum nonempty for the base datum"
                    " (unique maximal p-rank polygon, four branch points)"
                )
            elif pc in (1, m - 1):
                clause = "unique-max-p-rank:pm1"
                assumption = (
                    "mu-ordinary stratum nonempty for the base datum"
                    " (unique maximal p-rank polygon, p is +-1 mod m)"
                )
            else:
                clause = "unique-max-p-rank:large-p"
                assumption = (
                    "mu-ordinary stratum nonempty for the base datum"
                    " (unique maximal p-rank polygon) assuming"
                    f" p >= {m * (big_n - 3)}"
                )
    if clause is None:
        raise NotABaseCaseError(
            f"no base clause applies to {datum.text()} at class"
            f" {p_class % m} mod {m}"
        )
    step = {
        "op": "base_case",
        "datum": datum.to_json_obj(),
        "p_class": p_class % m,
        "clause": clause,
    }
    return CertifiedFamily(datum, p_class, u, True, (step,), (assumption,), 0)


def payload_base(
    datum: MonodromyDatum,
    p_class: int,
    polygon: NewtonPolygon,
    cap: int = DEFAULT_ENUM_CAP,
) -> CertifiedFamily:
    """Start a family at a claimed polygon from its Kottwitz set.

    The polygon must occur among the set's totals.  Its codimension,
    the minimal length of an element realizing it, is recorded so later
    steps can transport it.  Smooth occurrence is recorded as an
    assumption, in the usual reading that the prime is sufficiently
    large within its class.
    """
    datum.validate()
    ks = kottwitz_set(datum, p_class, cap=cap)
    try:
        codim = ks.codim_of_polygon(polygon)
    except DomainError:
        raise GeneratorError(
            f"{polygon} does not occur in the Kottwitz set of"
            f" {datum.text()} at class {p_class % datum.m}"
        ) from None
    step = {
        "op": "payload_base",
        "datum": datum.to_json_obj(),
        "p_class": p_class % datum.m,
        "polygon": polygon.to_json_obj(),
    }
    assumption = (
        f"stratum {polygon} nonempty on the base family for sufficiently"
        " large p in its class"
    )
    return CertifiedFamily(
        datum, p_class, polygon, codim == 0, (step,), (assumption,), codim
    )


def extend_ord(f: CertifiedFamily, c: int) -> CertifiedFamily:
    """Extend by a genus-zero three-point cover, adding ord^(m - t).

    c is a nonzero residue mod m and t = gcd(m, c); the datum becomes
    (m, N + 2, (c, m - c, a...)).  Admissibility and balancedness hold
    by construction, and the interval test is vacuous against the
    genus-zero side, so payload claims pass through unchanged.
    """
    m = f.datum.m
    datum3, np3, t = _extend_parts(
        f.datum, f.claimed_np, c, f.p_class, f.mu_ordinary_claim
    )
    step = {
        "op": "extend_ord",
        "c": c % m,
        "t": t,
        "epsilon": m - t,
        "admissible": True,
        "balanced": True,
        "compatible": True,
    }
    return CertifiedFamily(
        datum3,
        f.p_class,
        np3,
        f.mu_ordinary_claim,
        f.steps + (step,),
        f.assumptions,
        f.payload_codim,
    )


def self_clutch(
    f: CertifiedFamily, n: int, at=None, auto_pad: bool = False
) -> CertifiedFamily:
    """Clutch n copies of the family with itself at a complementary pair.

    The pair of labels (i, j) must satisfy a(i) + a(j) = 0 mod m; the
    first such pair is used when none is given.  When the datum has no
    complementary pair, auto_pad=True appends two unbranched labels
    which always form one (r = m); otherwise the call fails.  The defect
    is ord^((n-1)(r-1)) with r = gcd(a(i), m).  A payload claim keeps
    its polygon in place of one copy of the mu-ordinary one and
    additionally requires every orbit component of the mu-ordinary
    polygon to have at most two distinct slopes.
    """
    if n < 1:
        raise GeneratorError("n must be a positive integer")
    if n == 1:
        return f
    base = f.datum
    padded = False
    if at is None:
        at = _self_pair(base.a, base.m)
        if at is None:
            if not auto_pad:
                raise GeneratorError(
                    "no complementary pair a(i) + a(j) = 0 mod m; pass"
                    " auto_pad=True to append a pair of unbranched labels"
                )
            base = pad_last(pad_last(base))
            at = (base.N - 2, base.N - 1)
            padded = True
    i, j = at
    datum3, np3, r = _chain_parts(
        base, f.claimed_np, f.mu_ordinary_claim, f.p_class, i, j, n
    )
    step = {
        "op": "self_clutch",
        "n": n,
        "at": [i, j],
        "auto_pad": padded,
        "r": r,
        "epsilon": (n - 1) * (r - 1),
        "admissible": True,
        "balanced": True,
        "compatible": None if f.mu_ordinary_claim else True,
    }
    return CertifiedFamily(
        datum3,
        f.p_class,
        np3,
        f.mu_ordinary_claim,
        f.steps + (step,),
        f.assumptions,
        f.payload_codim,
    )


def pad_and_clutch(f: CertifiedFamily, t: int, n: int) -> CertifiedFamily:
    """Chain n copies after splitting off a complementary pair of labels.

    t must divide m.  For t = m the datum gains two unbranched labels
    and the chain joins at them; t = m with n = 1 is the identity.  For
    t < m the datum is first extended by the pair (t, m - t), which
    contributes ord^(m - t) per copy, and the chain joins there.  The
    claimed polygon works out to u^n + ord^(mn - n - t + 1) for
    mu-ordinary claims, with one copy of u replaced by the payload
    polygon otherwise.
    """
    m = f.datum.m
    if n < 1:
        raise GeneratorError("n must be a positive integer")
    if t < 1 or m % t:
        raise GeneratorError(f"t must be a positive divisor of {m}")
    if t == m:
        if n == 1:
            return f
        base = pad_last(pad_last(f.datum))
        base_claim = f.claimed_np
        pair = (base.N - 2, base.N - 1)
    else:
        base, base_claim, _ = _extend_parts(
            f.datum, f.claimed_np, t, f.p_class, f.mu_ordinary_claim
        )
        pair = (0, 1)
    if n == 1:
        datum3, np3, r = base, base_claim, t
    else:
        datum3, np3, r = _chain_parts(
            base, base_claim, f.mu_ordinary_claim, f.p_class, *pair, n
        )
    assert r == t
    if f.mu_ordinary_claim:
        assert np3 == f.claimed_np.power(n) + ORD.power(m * n - n - t + 1)
    else:
        u = mu_ordinary(f.datum, f.p_class)
        assert np3 == u.power(n - 1) + f.claimed_np + ORD.power(
            m * n - n - t + 1
        )
    step = {
        "op": "pad_and_clutch",
        "t": t,
        "n": n,
        "r": r,
        "epsilon": m * n - n - t + 1,
        "admissible": True,
        "balanced": True,
        "compatible": None if f.mu_ordinary_claim else True,
    }
    return CertifiedFamily(
        datum3,
        f.p_class,
        np3,
        f.mu_ordinary_claim,
        f.steps + (step,),
        f.assumptions,
        f.payload_codim,
    )


def double_induction(
    f1: CertifiedFamily, f2: CertifiedFamily, n1: int, n2: int
) -> CertifiedFamily:
    """Cross the chains of two families sharing the same m.

    Each input is chained with itself (joining at two added unbranched
    labels as in pad_and_clutch with t = m), and the two chains are
    joined once at a designated complementary pair taken from the
    original data, with r = gcd(a1(i0), m).  The claimed polygon is the
    product of the two claims padded by ord^((n1+n2-2)(m-1) + (r-1)).

    The joining step is re-checked.  When it is balanced and both
    claims are mu-ordinary, the result is certified mu-ordinary.  When
    it is not balanced, the claim keeps the shape above, the failed
    check is recorded in the step, and an explicit assumption is
    attached; codimension transport is dropped.  A payload claim may
    ride on f2 only and additionally requires the interval tests for
    (u1, u2) and (u2, u2); with n2 copies, the last one carries the
    payload and is joined through a pair of added unbranched labels.
    """
    if n1 < 1 or n2 < 1:
        raise GeneratorError("n1 and n2 must be positive integers")
    m = f1.datum.m
    if f2.datum.m != m:
        raise GeneratorError("both families must share the same m")
    if f1.p_class != f2.p_class:
        raise GeneratorError("both families must share the residue class")
    if not f1.mu_ordinary_claim:
        raise GeneratorError(
            "the first family must carry a mu-ordinary claim; payload"
            " claims ride on the second"
        )
    p = f1.p_class
    pair = _designated_pair(f1.datum.a, f2.datum.a, m)
    if pair is None:
        raise GeneratorError(
            "no complementary pair between the two data"
        )
    i0, j0 = pair
    v1 = f1.datum.a[i0] % m
    v2 = f2.datum.a[j0] % m
    r = _gcd_m(v1, m)
    a_datum, a_np = _padded_chain(f1.datum, f1.claimed_np, p, n1)
    assumptions = list(f1.assumptions)
    for note in f2.assumptions:
        if note not in assumptions:
            assumptions.append(note)

    if f2.mu_ordinary_claim:
        b_datum, b_np = _padded_chain(f2.datum, f2.claimed_np, p, n2)
        rep = clutch_report(
            _move_value(a_datum, v1, True), _move_value(b_datum, v2, False), p=p
        )
        assert rep.epsilon == r - 1
        np3 = a_np + b_np + ORD.power(r - 1)
        balanced = bool(rep.balanced)
        if balanced:
            assert np3 == mu_ordinary(rep.gamma3, p)
            mu_claim, codim = True, 0
        else:
            assert np3 != mu_ordinary(rep.gamma3, p)
            mu_claim, codim = False, None
            assumptions.append(_UNBALANCED_NOTE)
        datum3 = rep.gamma3
        compatible = rep.compatible
    else:
        if not check_compatible(f1.datum, f2.datum, p):
            raise GeneratorError(
                "hypothesis failure: interval test for the pair of"
                " mu-ordinary polygons"
            )
        if not check_self_compatible(f2.datum, p):
            raise GeneratorError(
                "hypothesis failure: interval test of the second"
                " mu-ordinary polygon against itself"
            )
        if n2 == 1:
            rep = clutch_report(
                _move_value(a_datum, v1, True),
                _move_value(f2.datum, v2, False),
                p=p,
            )
            assert rep.epsilon == r - 1
            balanced = bool(rep.balanced)
            np3 = a_np + f2.claimed_np + ORD.power(r - 1)
        else:
            u2 = mu_ordinary(f2.datum, p)
            b_datum, b_np = _padded_chain(f2.datum, u2, p, n2 - 1)
            rep4 = clutch_report(
                _move_value(a_datum, v1, True),
                _move_value(b_datum, v2, False),
                p=p,
            )
            assert rep4.epsilon == r - 1
            z4_np = a_np + b_np + ORD.power(r - 1)
            balanced = bool(rep4.balanced)
            if balanced:
                assert z4_np == mu_ordinary(rep4.gamma3, p)
            rep = clutch_report(
                pad_last(rep4.gamma3), pad_first(f2.datum), p=p
            )
            assert rep.epsilon == m - 1
            balanced = balanced and bool(rep.balanced)
            np3 = z4_np + f2.claimed_np + ORD.power(m - 1)
        if rep.compatible is not True:
            raise GeneratorError(
                "hypothesis failure: the joining step fails the direct"
                " slope interval test"
            )
        datum3 = rep.gamma3
        mu_claim = False
        compatible = True
        if balanced:
            codim = f2.payload_codim
        else:
            codim = None
            assumptions.append(_UNBALANCED_NOTE)

    step = {
        "op": "double_induction",
        "n1": n1,
        "n2": n2,
        "at": [i0, j0],
        "r": r,
        "admissible": True,
        "balanced": balanced,
        "compatible": compatible,
        "other": f2.certificate(),
    }
    return CertifiedFamily(
        datum3,
        p,
        np3,
        mu_claim,
        f1.steps + (step,),
        tuple(assumptions),
        codim,
    )


def verify_family(
    f: CertifiedFamily, deep: bool = False, cap: int = DEFAULT_ENUM_CAP
) -> dict:
    """Recheck a family's claim against freshly computed invariants.

    Always recomputes the mu-ordinary polygon of the final datum: a
    mu-ordinary claim must equal it, any other claim must lie on or
    above it.  With deep=True a non-mu-ordinary claim is additionally
    located inside the Kottwitz set of the final datum, and its
    codimension there is compared with the recorded payload codimension
    when one is present.  Returns a report dict with an "ok" flag.
    """
    u = mu_ordinary(f.datum, f.p_class)
    report = {
        "datum": f.datum.text(),
        "p_class": f.p_class,
        "claimed": str(f.claimed_np),
        "mu_ordinary": str(u),
        "mu_match": u == f.claimed_np,
        "dominates_mu_ordinary": f.claimed_np.lies_on_or_above(u),
    }
    ok = report["mu_match"] if f.mu_ordinary_claim else report[
        "dominates_mu_ordinary"
    ]
    if deep and not f.mu_ordinary_claim:
        ks = kottwitz_set(f.datum, f.p_class, cap=cap)
        codim = ks.codim_of_polygon(f.claimed_np)
        report["codim"] = codim
        if f.payload_codim is not None:
            report["payload_codim"] = f.payload_codim
            ok = ok and codim == f.payload_codim
    report["ok"] = bool(ok)
    return report


def replay(cert: dict) -> CertifiedFamily:
    """Re-run a certificate's derivation and confirm it reproduces it.

    Raises GeneratorError when the certificate is malformed or when the
    replayed datum or polygon differ from the recorded ones.
    """
    if cert.get("version") != 1:
        raise GeneratorError("unsupported certificate version")
    fam = None
    for raw in cert.get("steps", ()):
        op = raw.get("op")
        if op in ("base_case", "payload_base"):
            if fam is not None:
                raise GeneratorError("base step must come first")
            datum = MonodromyDatum.from_json_obj(raw["datum"])
            if op == "base_case":
                fam = base_case(datum, raw["p_class"])
            else:
                fam = payload_base(
                    datum,
                    raw["p_class"],
                    NewtonPolygon.from_json_obj(raw["polygon"]),
                )
            continue
        if fam is None:
            raise GeneratorError("derivation does not start at a base step")
        if op == "extend_ord":
            fam = extend_ord(fam, raw["c"])
        elif op == "self_clutch":
            if raw.get("auto_pad"):
                fam = self_clutch(fam, raw["n"], auto_pad=True)
            else:
                fam = self_clutch(fam, raw["n"], at=tuple(raw["at"]))
        elif op == "pad_and_clutch":
            fam = pad_and_clutch(fam, raw["t"], raw["n"])
        elif op == "double_induction":
            fam = double_induction(
                fam, replay(raw["other"]), raw["n1"], raw["n2"]
            )
        else:
            raise GeneratorError(f"unknown step op {op!r}")
    if fam is None:
        raise GeneratorError("empty derivation")
    if fam.datum.to_json_obj() != cert["datum"]:
        raise GeneratorError("replay produced a different datum")
    if fam.claimed_np.to_json_obj() != cert["polygon"]:
        raise GeneratorError("replay produced a different polygon")
    return fam
