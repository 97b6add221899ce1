"""Tests for the exact Newton polygon arithmetic."""

from fractions import Fraction

import pytest

from npcc import (
    EMPTY,
    ORD,
    SS,
    AsymmetricPolygonError,
    EmptyPolygonError,
    EndpointMismatchError,
    NewtonPolygon,
    PolygonSyntaxError,
    parse,
)

F = Fraction


def test_constants():
    assert ORD.segments == ((F(0), 1), (F(1), 1))
    assert SS.segments == ((F(1, 2), 2),)
    assert EMPTY.segments == ()
    assert EMPTY.is_empty
    assert not ORD.is_empty


def test_constructor_merges_and_sorts():
    nu = NewtonPolygon([(F(1, 2), 1), (0, 2), (F(1, 2), 1)])
    assert nu.segments == ((F(0), 2), (F(1, 2), 2))


def test_constructor_rejects_bad_slopes():
    with pytest.raises(PolygonSyntaxError):
        NewtonPolygon([(F(3, 2), 1)])
    with pytest.raises(PolygonSyntaxError):
        NewtonPolygon([(F(-1, 2), 1)])
    with pytest.raises(PolygonSyntaxError):
        NewtonPolygon([(F(1, 2), -1)])


def test_height_degree_multiplicity():
    nu = parse("ord^2+ss^3")
    assert nu.height == 10
    assert nu.degree == F(5)
    assert nu.multiplicity(0) == 2
    assert nu.multiplicity(F(1, 2)) == 6
    assert nu.multiplicity(F(1, 3)) == 0
    assert nu.p_rank == 2
    assert EMPTY.height == 0
    assert EMPTY.p_rank == 0


def test_parse_round_trip():
    for text in [
        "ord",
        "ss",
        "ord^4+ss^5",
        "(1/3,2/3)",
        "(1/4,3/4)^2",
        "ord^2+(1/3,2/3)+ss",
        "(2/7,5/7)+(3/7,4/7)",
    ]:
        assert parse(text).canonical_text() == text
    assert parse("0") == EMPTY
    assert str(EMPTY) == "0"


def test_parse_is_order_insensitive():
    assert parse("ss^5+ord^4") == parse("ord^4+ss^5")
    # canonical text always puts slope 0 first
    assert parse("ss^5+ord^4").canonical_text() == "ord^4+ss^5"


def test_parse_whitespace_tolerant():
    assert parse(" ord + ss ^ 2 ") == parse("ord+ss^2")


def test_parse_rejects_garbage():
    for text in ["", "xyz", "ord^", "ord^0", "(1/3,1/3)", "(2/6,4/6)", "(1/3 , 1/2)"]:
        with pytest.raises(PolygonSyntaxError):
            parse(text)


def test_pair_term_semantics():
    # (s/t,(t-s)/t) contributes each slope with multiplicity t
    nu = parse("(1/3,2/3)")
    assert nu.segments == ((F(1, 3), 3), (F(2, 3), 3))
    assert nu.height == 6
    assert nu.degree == F(3)


def test_amalgamate_and_add():
    assert ORD + SS == parse("ord+ss")
    assert ORD.amalgamate(SS) == ORD + SS
    assert ORD + EMPTY == ORD
    assert EMPTY + EMPTY == EMPTY


def test_power():
    assert ORD.power(3) == parse("ord^3")
    assert SS.power(0) == EMPTY
    assert EMPTY.power(5) == EMPTY
    with pytest.raises(PolygonSyntaxError):
        ORD.power(-1)


def test_dual():
    nu = parse("ord^2+(1/3,2/3)")
    assert nu.dual() == nu  # symmetric polygons are self-dual
    skew = NewtonPolygon([(F(1, 3), 3)])
    assert skew.dual() == NewtonPolygon([(F(2, 3), 3)])
    assert skew.dual().dual() == skew


def test_is_symmetric():
    assert parse("ord^4+ss^5").is_symmetric
    assert parse("(2/7,5/7)+(3/7,4/7)").is_symmetric
    assert not NewtonPolygon([(F(1, 3), 3)]).is_symmetric
    assert EMPTY.is_symmetric


def test_genus():
    assert parse("ord^4+ss^5").genus == 9
    assert parse("(1/3,2/3)").genus == 3
    assert EMPTY.genus == 0
    with pytest.raises(AsymmetricPolygonError):
        _ = NewtonPolygon([(F(1, 3), 3)]).genus


def test_value_at_breakpoints():
    nu = parse("ord^2+ss^2")
    # slopes in increasing order: 0,0,1/2,1/2,1/2,1/2,1,1
    assert nu.value_at(0) == 0
    assert nu.value_at(2) == 0
    assert nu.value_at(4) == 1
    assert nu.value_at(6) == 2
    assert nu.value_at(8) == 4
    assert nu.value_at(F(3)) == F(1, 2)
    assert nu.breakpoints() == [(0, F(0)), (2, F(0)), (6, F(2)), (8, F(4))]
    with pytest.raises(EndpointMismatchError):
        nu.value_at(9)


def test_integral_breakpoints():
    assert parse("ord^2+ss^3").has_integral_breakpoints
    assert NewtonPolygon([(F(1, 3), 1), (F(2, 3), 1)]).has_integral_breakpoints is False


def test_lies_on_or_above():
    ord3 = parse("ord^3")
    third = parse("(1/3,2/3)")
    ss3 = parse("ss^3")
    assert ord3.lies_on_or_above(ord3)
    assert third.lies_on_or_above(ord3)
    assert ss3.lies_on_or_above(third)
    assert ss3.lies_on_or_above(ord3)
    assert not ord3.lies_on_or_above(ss3)
    assert not third.lies_on_or_above(ss3)
    with pytest.raises(EndpointMismatchError):
        ORD.lies_on_or_above(SS.power(2))


def test_first_last_middle_slope():
    nu = parse("ord+(1/3,2/3)")
    assert nu.first_slope() == F(0)
    assert nu.last_slope() == F(1)
    # distinct slopes are 0, 1/3, 2/3, 1; the middle one is the 2nd
    assert nu.middle_slope() == F(1, 3)
    assert nu.first_last_middle() == (F(0), F(1), F(1, 3))
    odd = NewtonPolygon([(F(1, 2), 3)])
    assert odd.middle_slope() == F(1, 2)
    with pytest.raises(EmptyPolygonError):
        EMPTY.first_slope()


def test_json_round_trip():
    for text in ["0", "ord^4+ss^5", "(2/7,5/7)+(3/7,4/7)+ord"]:
        nu = parse(text)
        obj = nu.to_json_obj()
        assert NewtonPolygon.from_json_obj(obj) == nu


def test_bracket_text_for_non_grammar_polygons():
    skew = NewtonPolygon([(F(1, 4), 1), (F(1, 2), 1)])
    text = str(skew)
    assert text.startswith("[") and text.endswith("]")


def test_equality_and_hash():
    a = parse("ord^2+ss")
    b = parse("ss+ord^2")
    assert a == b
    assert hash(a) == hash(b)
    assert a != parse("ord^2")
    assert len({a, b}) == 1
