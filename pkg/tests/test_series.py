"""Truncated series, regularization, and Vandermonde extraction tests."""
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qperiods.series import (
    MultiPolyTrunc,
    TruncatedSeries,
    exp_linear_normalize,
    extract_leading_vandermonde,
    vandermonde_poly,
)
from qperiods.periods import period_closed_form

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=12
).map(Fraction)

short_series = st.lists(rationals, min_size=1, max_size=8).map(TruncatedSeries)


class TestRegularize:
    def test_constant(self):
        s = TruncatedSeries([1])
        assert s.regularize().coeffs == (Fraction(1),)

    def test_p4_alpha5(self):
        g = period_closed_form("P4", 5)
        assert g[5] == Fraction(1, factorial(1) ** 5)
        assert g.regularize()[5] == 120

    def test_q4_alpha4(self):
        g = period_closed_form("Q4", 4)
        assert g[4] == 2
        assert g.regularize()[4] == 48

    @given(short_series)
    def test_inverted_by_dividing_factorials(self, s):
        r = s.regularize()
        back = TruncatedSeries(
            [c / factorial(d) for d, c in enumerate(r.coeffs)]
        )
        assert back.coeffs == s.coeffs

    def test_preserves_truncation_order(self):
        s = TruncatedSeries([1, 0, 3, 0, 0])
        assert s.regularize().truncation_order == s.truncation_order


class TestMul:
    def test_identity(self):
        a = TruncatedSeries([1, 2, 3])
        one = TruncatedSeries([1, 0, 0])
        assert a.mul(one).coeffs == a.coeffs

    def test_truncates_to_shorter_operand(self):
        a = TruncatedSeries([1, 1, 1, 1, 1])
        b = TruncatedSeries([1, 1])
        assert a.mul(b).truncation_order == 1

    def test_p1_times_p3_alpha4(self):
        g = period_closed_form("P1", 4).mul(period_closed_form("P3", 4))
        assert g.regularize()[4] == 30

    def test_p1_fourth_power_alpha2(self):
        p1 = period_closed_form("P1", 2)
        g = p1
        for _ in range(3):
            g = g.mul(p1)
        assert g.regularize()[2] == 8

    @given(short_series, short_series)
    @settings(max_examples=40)
    def test_commutative(self, a, b):
        assert a.mul(b).coeffs == b.mul(a).coeffs

    @given(short_series, short_series, short_series)
    @settings(max_examples=40)
    def test_associative(self, a, b, c):
        assert a.mul(b).mul(c).coeffs == a.mul(b.mul(c)).coeffs


class TestExpLinearNormalize:
    def test_already_normalized(self):
        s = TruncatedSeries([1, 0, 5])
        c, out = exp_linear_normalize(s)
        assert c == 0 and out.coeffs == s.coeffs

    def test_linear_series(self):
        c, out = exp_linear_normalize(TruncatedSeries([1, 3, 0]))
        assert c == 3
        assert out[1] == 0
        assert out[2] == Fraction(-9, 2)

    def test_rejects_nonunital(self):
        with pytest.raises(ValueError):
            exp_linear_normalize(TruncatedSeries([2, 1]))

    @given(st.lists(rationals, min_size=2, max_size=8))
    @settings(max_examples=40)
    def test_output_has_zero_linear_term(self, tail):
        s = TruncatedSeries([Fraction(1)] + tail)
        _, out = exp_linear_normalize(s)
        assert out[1] == 0


class TestSerialization:
    def test_round_trip(self):
        s = TruncatedSeries([1, 0, Fraction(7, 3), -2])
        assert TruncatedSeries.from_text(s.to_text()).coeffs == s.coeffs

    def test_missing_header_rejected(self):
        with pytest.raises(ValueError):
            TruncatedSeries.from_text("1\n0\n2\n")

    def test_comment_lines_ignored(self):
        text = "# a note\ntruncation_order: 1\n1\n4/3\n"
        s = TruncatedSeries.from_text(text)
        assert s.coeffs == (Fraction(1), Fraction(4, 3))


class TestVandermonde:
    def test_vandermonde_extracts_to_one(self):
        v = vandermonde_poly(3)
        assert extract_leading_vandermonde(v, strict=True) == 1

    def test_zero_polynomial(self):
        z = MultiPolyTrunc(3, 3)
        assert extract_leading_vandermonde(z, strict=True) == 0

    def test_scaled_vandermonde(self):
        v = vandermonde_poly(4) * Fraction(-5, 3)
        assert extract_leading_vandermonde(v, strict=True) == Fraction(-5, 3)

    def test_strict_rejects_nonantisymmetric(self):
        p = MultiPolyTrunc(3, 3, {(1, 1, 1): Fraction(1)})
        with pytest.raises(AssertionError):
            extract_leading_vandermonde(p, strict=True)

    def test_inverse_linear_power_expansion(self):
        # 1/(p+2)^1 = 1/2 - p/4 + p^2/8 - ...
        f = MultiPolyTrunc.inverse_linear_power(2, 3, 0, 2, 1)
        assert f.coefficient((0, 0)) == Fraction(1, 2)
        assert f.coefficient((1, 0)) == Fraction(-1, 4)
        assert f.coefficient((2, 0)) == Fraction(1, 8)
