from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from errors import InputError
from poly_core import PolynomialRing, normalize
from poly_parser import PolynomialParser, parse_fraction, parse_polynomial, parse_polynomials

RING = PolynomialRing.of(["x", "y", "t1"])

terms = st.lists(
    st.tuples(
        st.fractions(min_value=-20, max_value=20, max_denominator=9),
        st.tuples(*[st.integers(min_value=0, max_value=4)] * 3),
    ),
    max_size=5,
)


@given(terms)
def test_printed_polynomials_parse_back(raw):
    poly = normalize(RING, raw)
    text = str(poly)
    assert parse_polynomial(text, RING) == poly
    assert str(parse_polynomial(text, RING)) == text


def test_operator_precedence():
    assert parse_polynomial("x + y*x^2", RING) == normalize(RING, [(1, {"x": 1}), (1, {"x": 2, "y": 1})])
    assert parse_polynomial("-x^2", RING) == normalize(RING, [(-1, {"x": 2})])
    assert parse_polynomial("(x - y)^2", RING) == parse_polynomial("x^2 - 2*x*y + y^2", RING)


def test_rational_literals():
    poly = parse_polynomial("1/2*x + 1/3*x", RING)
    assert poly.coefficient((1, 0, 0)) == Fraction(5, 6)
    assert str(poly) == "5/6*x"


def test_fraction_splits_at_the_top_level_slash():
    p, q = parse_fraction("2*x*y / (x + y)", RING)
    assert p == parse_polynomial("2*x*y", RING)
    assert q == parse_polynomial("x + y", RING)
    p, q = parse_fraction("y^2 - x^3", RING)
    assert q == 1


@pytest.mark.parametrize("text, column", [
    ("2x", 2),
    ("x y", 3),
    ("x*(y", 5),
    ("x + z", 5),
    ("x ^ y", 5),
    ("x $ y", 3),
    ("1/0*x", 3),
])
def test_errors_point_at_the_offending_column(text, column):
    with pytest.raises(InputError) as info:
        parse_polynomial(text, RING)
    assert info.value.column == column


def test_slash_outside_a_fraction_is_rejected():
    with pytest.raises(InputError):
        parse_polynomial("y / x", RING)


def test_zero_denominator_is_rejected():
    with pytest.raises(InputError, match="denominator is zero"):
        parse_fraction("y / (x - x)", RING)


def test_empty_text_is_rejected():
    with pytest.raises(InputError, match="empty"):
        PolynomialParser(RING).parse("   ")


def test_parse_polynomials_reports_lines():
    with pytest.raises(InputError) as info:
        parse_polynomials(["x", "y +", "t1"], RING, first_line=10)
    assert info.value.line == 11
    assert "line 11" in str(info.value)
