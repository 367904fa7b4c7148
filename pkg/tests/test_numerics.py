from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectradiag.core.exceptions import ScalarParseError
from spectradiag.core.numerics import (
    DIVERGENT,
    INFINITE,
    ExtendedCount,
    add_sums,
    format_scalar,
    frac_mod_one,
    is_integer,
    parse_scalar,
    sum_from_json,
    sum_to_json,
)


class TestScalars:
    def test_parse_forms(self):
        assert parse_scalar("3/4") == F(3, 4)
        assert parse_scalar("-2") == F(-2)
        assert parse_scalar(5) == F(5)
        assert parse_scalar(" 6/8 ") == F(3, 4)
        assert parse_scalar("0.25") == F(1, 4)

    @pytest.mark.parametrize("bad", ["abc", "1/0", "", None, True, 1.5])
    def test_parse_rejects(self, bad):
        with pytest.raises(ScalarParseError):
            parse_scalar(bad)

    def test_format_is_canonical(self):
        assert format_scalar(F(6, 8)) == "3/4"
        assert format_scalar(F(4, 2)) == "2"
        assert format_scalar(F(-1, 3)) == "-1/3"

    @given(st.fractions())
    def test_format_parse_inverse(self, x):
        assert parse_scalar(format_scalar(x)) == x

    @given(st.fractions())
    def test_frac_mod_one(self, x):
        eta = frac_mod_one(x)
        assert 0 <= eta < 1
        assert is_integer(x - eta)


class TestDivergent:
    def test_absorbing(self):
        assert add_sums(F(1), DIVERGENT, F(2)) is DIVERGENT
        assert add_sums(F(1, 2), F(1, 3)) == F(5, 6)

    def test_json(self):
        assert sum_to_json(DIVERGENT) == "divergent"
        assert sum_from_json("divergent") is DIVERGENT
        assert sum_from_json("1/3") == F(1, 3)


class TestExtendedCount:
    def test_arithmetic(self):
        assert ExtendedCount(2) + 3 == 5
        assert ExtendedCount(2) + INFINITE is INFINITE
        assert INFINITE.is_infinite

    def test_ordering(self):
        assert ExtendedCount(3) < INFINITE
        assert not INFINITE < 10 ** 9
        assert ExtendedCount(1) < 2
        assert ExtendedCount(4) >= 4

    def test_json(self):
        assert INFINITE.to_json() == "inf"
        assert ExtendedCount.from_json("inf") is INFINITE
        assert ExtendedCount.from_json(3) == 3
        assert ExtendedCount.from_json("7") == 7

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            ExtendedCount(-1)
        with pytest.raises(ValueError):
            ExtendedCount.from_json("many")

    def test_int_of_infinite(self):
        with pytest.raises(OverflowError):
            int(INFINITE)
