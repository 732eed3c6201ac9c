from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from famcake._rational import ParseError, as_fraction, fmt, parse


def test_fmt_always_has_denominator():
    assert fmt(Fraction(1)) == "1/1"
    assert fmt(Fraction(-6, 4)) == "-3/2"


@given(st.fractions())
def test_fmt_parse_round_trip(x):
    assert parse(fmt(x)) == x


def test_parse_rejects_garbage_with_field_name():
    with pytest.raises(ParseError, match="weight"):
        parse("abc", "weight")
    with pytest.raises(ParseError):
        parse("1/0", "x")


def test_as_fraction_rejects_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("2/4") == Fraction(1, 2)
