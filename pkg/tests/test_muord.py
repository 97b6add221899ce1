"""Tests for orbit polygons and the mu-ordinary Newton polygon."""

from fractions import Fraction

import pytest

from npcc import (
    EndpointMismatchError,
    MonodromyDatum,
    OrbitPolygon,
    PolygonSyntaxError,
    beta_of_signature,
    decompose,
    induce,
    mu_ordinary,
    mu_ordinary_of_signature,
    mu_ordinary_orbit,
    p_rank_bound,
    parse,
    signature,
)

F = Fraction


def _orbit(m, p, n):
    return decompose(m, p).orbit_of(n)


def test_orbit_polygon_lattice_constraints():
    o = _orbit(8, 3, 1)  # {1,3}, size 2
    OrbitPolygon(o, [(F(1, 2), 2), (F(3, 2), 2)])
    with pytest.raises(PolygonSyntaxError):
        OrbitPolygon(o, [(F(1, 2), 1)])  # vertex off the lattice
    with pytest.raises(PolygonSyntaxError):
        OrbitPolygon(o, [(F(5, 2), 2)])  # slope above the orbit size
    with pytest.raises(PolygonSyntaxError):
        OrbitPolygon(o, [(1, 1), (1, 1)])  # slopes must strictly increase
    with pytest.raises(PolygonSyntaxError):
        OrbitPolygon(o, [(1, 0)])


def test_orbit_polygon_geometry():
    o = _orbit(8, 3, 1)
    q = OrbitPolygon(o, [(0, 1), (F(3, 2), 2)])
    assert q.height == 3
    assert q.degree == 3
    assert q.value_at(0) == 0
    assert q.value_at(1) == 0
    assert q.value_at(2) == F(3, 2)
    assert q.value_at(3) == 3
    assert not q.is_empty
    assert OrbitPolygon(o, []).is_empty


def test_orbit_polygon_lambda_scale():
    o = _orbit(8, 3, 1)  # size 2
    q = OrbitPolygon(o, [(F(1, 2), 2), (F(3, 2), 2)])
    assert q.lambda_slopes() == (F(1, 4), F(3, 4))
    assert q.lambda_scale() == parse("(1/4,3/4)")


def test_orbit_polygon_dual_and_symmetry():
    o = _orbit(8, 3, 1)  # {1,3}; dual is {5,7}
    q = OrbitPolygon(o, [(0, 1), (1, 1)])
    d = q.dual()
    assert d.orbit.members == (5, 7)
    assert d.segments == ((F(1), 1), (F(2), 1))
    assert not q.is_self_symmetric
    sym = OrbitPolygon(o, [(F(1, 2), 2), (F(3, 2), 2)])
    assert sym.is_self_symmetric


def test_orbit_polygon_comparison():
    o = _orbit(8, 3, 2)  # {2,6}, size 2
    low = OrbitPolygon(o, [(0, 1), (2, 1)])
    high = OrbitPolygon(o, [(1, 2)])
    assert high.lies_on_or_above(low)
    assert not low.lies_on_or_above(high)
    assert low.lies_on_or_above(low)
    with pytest.raises(EndpointMismatchError):
        low.lies_on_or_above(OrbitPolygon(o, [(1, 1)]))


def test_mu_ordinary_orbit_recipe():
    # f = (1,1,0,0,2,0,1) mod 8; orbit {1,3} at p = 3 has values (1,0)
    # and g(o) = f(1) + f(7) = 2, so the level cuts give slopes 0 then 1
    f = signature(MonodromyDatum(8, (4, 2, 5, 5)))
    o = _orbit(8, 3, 1)
    q = mu_ordinary_orbit(o, f)
    assert q.segments == ((F(0), 1), (F(1), 1))
    from npcc import NewtonPolygon

    assert q.lambda_scale() == NewtonPolygon([(0, 2), (F(1, 2), 2)])
    # orbit {4} has f(4) = 0 twice, so no polygon at all
    o4 = _orbit(8, 3, 4)
    assert mu_ordinary_orbit(o4, f).is_empty


def test_mu_ordinary_known_polygons():
    # genus-1 cover: supersingular exactly when p = 3 mod 4
    e = MonodromyDatum(4, (1, 1, 2))
    assert mu_ordinary(e, 3) == parse("ss")
    assert mu_ordinary(e, 5) == parse("ord")
    # a genus-6 family with third slopes
    assert mu_ordinary(MonodromyDatum(7, (2, 4, 4, 4)), 3) == parse("(1/3,2/3)^2")
    # the worked clutching target
    assert mu_ordinary(MonodromyDatum(8, (4, 2, 5, 5)), 7) == parse("ord^2+ss^3")
    assert mu_ordinary(MonodromyDatum(8, (2, 2, 2, 5, 5)), 7) == parse("ord^4+ss^5")
    # a five-point family of genus 6
    assert mu_ordinary(MonodromyDatum(5, (2, 2, 2, 2, 2)), 4) == parse("ss^4+ord^2")


def test_mu_ordinary_depends_only_on_residue():
    d = MonodromyDatum(7, (2, 4, 4, 4))
    assert mu_ordinary(d, 3) == mu_ordinary(d, 17)  # 17 = 3 mod 7
    assert mu_ordinary(d, 10) == mu_ordinary(d, 3)


def test_mu_ordinary_is_symmetric_of_right_genus():
    from npcc import genus

    for d, p in [
        (MonodromyDatum(9, (3, 5, 5, 5)), 2),
        (MonodromyDatum(12, (4, 6, 7, 7)), 5),
        (MonodromyDatum(6, (1, 3, 4, 4)), 5),
    ]:
        u = mu_ordinary(d, p)
        assert u.is_symmetric
        assert u.genus == genus(d)


def test_mu_ordinary_of_induced_datum_is_a_power():
    d = MonodromyDatum(5, (1, 3, 3, 3))
    for p in (3, 7):  # coprime to 2 * 5
        u = mu_ordinary(d, p)
        assert mu_ordinary(induce(d, 2), p) == u.power(2)
    for p in (2, 7):  # coprime to 3 * 5
        u = mu_ordinary(d, p)
        assert mu_ordinary(induce(d, 3), p) == u.power(3)


def test_beta_and_p_rank_bound():
    d = MonodromyDatum(8, (4, 2, 5, 5))
    f = signature(d)
    for p in (3, 5, 7, 17):
        assert beta_of_signature(f, p) == mu_ordinary(d, p).p_rank
    assert p_rank_bound(MonodromyDatum(6, (1, 3, 4, 4)), 1) == 3
    assert p_rank_bound(MonodromyDatum(4, (1, 1, 2)), 3) == 0
    assert p_rank_bound(MonodromyDatum(4, (1, 1, 2)), 5) == 1


def test_mu_ordinary_of_signature_matches_datum_path():
    d = MonodromyDatum(9, (3, 5, 5, 5))
    f = signature(d)
    assert mu_ordinary_of_signature(f, 2) == mu_ordinary(d, 2)
