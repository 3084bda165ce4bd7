from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latsub.dyadic import DyadicValue


@pytest.mark.parametrize(
    "value, text",
    [
        (DyadicValue(166, -1), "83.0000000000000000"),
        (DyadicValue(1558, -4), "97.3750000000000000"),
        (DyadicValue(1267, -4), "79.1875000000000000"),
        (DyadicValue(249, -3), "31.1250000000000000"),
        (DyadicValue(0, 5), "0.0000000000000000"),
        (DyadicValue(3, 4), "48.0000000000000000"),
    ],
)
def test_decimal_rendering(value, text):
    assert value.to_decimal() == text


def test_long_expansion_is_not_truncated():
    # 1 / 2^20 has 20 fractional digits, more than the 16-digit minimum
    assert DyadicValue(1, -20).to_decimal() == "0.00000095367431640625"


def test_value_semantics():
    assert DyadicValue(166, -1) == DyadicValue(83) == 83
    assert DyadicValue(331, -2) < 83 < DyadicValue(333, -2)
    assert DyadicValue(1, -1) == Fraction(1, 2)
    assert hash(DyadicValue(166, -1)) == hash(DyadicValue(83, 0))
    assert DyadicValue(83) != "83"


def test_parse_forms():
    assert DyadicValue.parse("83") == 83
    assert DyadicValue.parse("97.375") == DyadicValue(1558, -4)
    assert DyadicValue.parse("1558*2^-4") == DyadicValue(779, -3)
    assert DyadicValue.parse("331/4") == Fraction(331, 4)
    with pytest.raises(ValueError):
        DyadicValue.parse("1/3")
    with pytest.raises(ValueError):
        DyadicValue(-1, 0)


@given(st.integers(0, 10**9), st.integers(-40, 40))
def test_decimal_round_trip(m, e):
    v = DyadicValue(m, e)
    assert DyadicValue.parse(v.to_decimal()) == v
    assert DyadicValue.parse(v.power_form()) == v
    assert v.normalized() == v
    assert Fraction(v.to_decimal()) == v.to_fraction()


@given(st.integers(0, 10**6), st.integers(-30, 30), st.integers(0, 10**6), st.integers(-30, 30))
def test_order_matches_fractions(m1, e1, m2, e2):
    a, b = DyadicValue(m1, e1), DyadicValue(m2, e2)
    assert (a < b) == (a.to_fraction() < b.to_fraction())
    assert (a == b) == (a.to_fraction() == b.to_fraction())
    assert (a * b).to_fraction() == a.to_fraction() * b.to_fraction()
