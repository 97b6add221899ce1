"""Tests for Kottwitz set enumeration and unlikely-intersection bounds."""

from fractions import Fraction

import pytest

from npcc import (
    DomainError,
    EnumerationCapError,
    MonodromyDatum,
    codim_sh,
    condition_u,
    decompose,
    dim_moduli,
    enumerate_orbit_component,
    kottwitz_set,
    kottwitz_set_of_signature,
    mu_ordinary,
    omega_count,
    parse,
    signature,
    threshold_half_slope_density,
    threshold_repeated_summand,
    threshold_ss_chain,
)

F = Fraction

WORKED = MonodromyDatum(8, (2, 2, 2, 5, 5))


def test_enumerate_orbit_component_two_candidates():
    # orbit {1,3} mod 8 at p = 3: paths (0,0) -> (2,1) above the
    # mu-ordinary path, slopes in [0,2] with lattice vertices
    f = signature(MonodromyDatum(8, (4, 2, 5, 5)))
    o = decompose(8, 3).orbit_of(1)
    cands = enumerate_orbit_component(o, f)
    assert len(cands) == 2
    assert cands[0].segments == ((F(0), 1), (F(1), 1))
    assert cands[1].segments == ((F(1, 2), 2),)


def test_enumerate_orbit_component_straight_line_is_alone():
    # when the mu-ordinary path is already straight nothing lies above it
    f = signature(WORKED)
    o = decompose(8, 7).orbit_of(3)
    cands = enumerate_orbit_component(o, f)
    assert len(cands) == 1
    assert cands[0].segments == ((F(1), 3),)


def test_enumerate_orbit_component_empty_orbit():
    f = signature(WORKED)
    o = decompose(8, 7).orbit_of(4)
    cands = enumerate_orbit_component(o, f)
    assert len(cands) == 1
    assert cands[0].is_empty


def test_enumerate_orbit_component_respects_cap():
    f = signature(MonodromyDatum(8, (4, 2, 5, 5)))
    o = decompose(8, 3).orbit_of(1)
    with pytest.raises(EnumerationCapError):
        enumerate_orbit_component(o, f, cap=1)


def test_worked_kottwitz_set():
    ks = kottwitz_set(WORKED, 7)
    assert len(ks) == 4
    assert ks.top.total == parse("ord^4+ss^5")
    assert ks.top.total == mu_ordinary(WORKED, 7)
    assert ks.bottom.total == parse("ss^9")
    assert ks.totals() == (parse("ord^4+ss^5"), parse("ord^2+ss^7"), parse("ss^9"))
    assert ks.codim_of_polygon(parse("ord^4+ss^5")) == 0
    assert ks.codim_of_polygon(parse("ord^2+ss^7")) == 1
    assert ks.codim_of_polygon(parse("ss^9")) == 2
    assert len(ks.elements_with_total(parse("ord^2+ss^7"))) == 2
    with pytest.raises(DomainError):
        ks.codim_of_polygon(parse("ord^9"))


def test_kottwitz_lengths_and_codim_sh():
    ks = kottwitz_set(WORKED, 7)
    assert [codim_sh(ks, e) for e in ks] == [0, 1, 1, 2]
    for e in ks:
        assert ks.length(e) == codim_sh(ks, e)
        assert ks.elements[ks.index_of(e)] == e
    assert all(e.leq(ks.top) for e in ks)
    assert all(ks.bottom.leq(e) for e in ks)


def test_kottwitz_hasse_diagram():
    ks = kottwitz_set(WORKED, 7)
    assert ks.hasse_edges() == ((1, 0), (2, 0), (3, 1), (3, 2))
    dot = ks.hasse_dot()
    assert dot.startswith("digraph")
    assert "e3 -> e1" in dot


def test_kottwitz_element_components():
    ks = kottwitz_set(WORKED, 7)
    dec = decompose(8, 7)
    e = ks.top
    assert e.component(dec.orbit_of(3)).segments == ((F(1), 3),)
    with pytest.raises(DomainError):
        e.component(decompose(8, 3).orbit_of(1))


def test_kottwitz_set_of_signature_agrees():
    f = signature(WORKED)
    assert kottwitz_set_of_signature(f, 7).totals() == kottwitz_set(WORKED, 7).totals()


def test_kottwitz_cap_on_product_size():
    with pytest.raises(EnumerationCapError):
        kottwitz_set(WORKED, 7, cap=3)


def test_kottwitz_singleton_orbits():
    # p = 1 mod 6 keeps every residue fixed; the only free factor is the
    # orbit {1} with two lattice paths, all other orbits are forced
    ks = kottwitz_set(MonodromyDatum(6, (1, 3, 4, 4)), 7)
    assert len(ks) == 2
    assert ks.totals() == (parse("ord^3"), parse("ord+ss^2"))
    assert ks.codim_of_polygon(parse("ord+ss^2")) == 1


def test_omega_count_examples():
    assert omega_count(parse("ss^7+ord^2")) == 16
    assert omega_count(parse("(1/3,2/3)")) == 3
    assert omega_count(parse("ord^5")) == 0
    assert omega_count(parse("ss")) == 1
    # triangular count minus the square underneath
    for n in (1, 2, 3, 10):
        assert omega_count(parse("ss").power(n)) == n * (n + 1) // 2 - n * n // 4


def test_dim_moduli():
    assert dim_moduli(0) == 0
    assert dim_moduli(1) == 1
    assert dim_moduli(2) == 3
    assert dim_moduli(9) == 24
    assert dim_moduli(34) == 99


def test_condition_u_reports():
    r = condition_u(parse("ss^34+ord^66"))
    assert r.holds
    assert r.genus == 100
    assert r.dim_mg == 297
    assert r.codim_ag > r.dim_mg
    r2 = condition_u(parse("ss^7+ord^2"))
    assert not r2.holds
    assert r2.genus == 9
    assert r2.dim_mg == 24
    assert r2.codim_ag == 16
    obj = r2.to_json_obj()
    assert obj == {"genus": 9, "dim_mg": 24, "codim_ag": 16, "holds": False}


def test_threshold_half_slope_density():
    assert threshold_half_slope_density(48, F(1, 2))  # 48/4 = 12 exactly
    assert not threshold_half_slope_density(47, F(1, 2))
    assert threshold_half_slope_density(12, 1)
    assert not threshold_half_slope_density(11, 1)
    with pytest.raises(DomainError):
        threshold_half_slope_density(10, 2)
    with pytest.raises(DomainError):
        threshold_half_slope_density(0, F(1, 2))


def test_threshold_repeated_summand():
    # boundary: n = 18, delta = 1, h = 4, g = 1 gives 18 >= 15 and 324 >= 324
    assert threshold_repeated_summand(18, 1, 1, 4)
    assert not threshold_repeated_summand(17, 1, 1, 4)
    assert not threshold_repeated_summand(14, 1, 1, 1)
    assert threshold_repeated_summand(15, 1, 1, 1)


def test_threshold_ss_chain():
    assert threshold_ss_chain(34, 1)
    assert not threshold_ss_chain(33, 1)
    assert threshold_ss_chain(7, 5)
    assert not threshold_ss_chain(6, 5)
