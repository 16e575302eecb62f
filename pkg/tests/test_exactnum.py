"""Exact scalar, polynomial, factorization, and number field tests."""
import random
from fractions import Fraction

import pytest

from qperiods.exactnum import (
    NumberField,
    UniPoly,
    factor_over_Q,
    format_rational,
    nfpoly_eval,
    nfpoly_normalize,
    parse_rational,
    poly_gcd,
    rational_roots_over_nf,
)


def P(*coeffs):
    """Polynomial from ascending coefficients."""
    return UniPoly(coeffs)


class TestRationals:
    def test_parse_integer(self):
        assert parse_rational("42") == 42
        assert parse_rational("-7") == -7

    def test_parse_fraction(self):
        assert parse_rational("22/7") == Fraction(22, 7)
        assert parse_rational("-3/9") == Fraction(-1, 3)

    def test_format_round_trip(self):
        for q in (Fraction(0), Fraction(5), Fraction(-2, 3), Fraction(10, 4)):
            assert parse_rational(format_rational(q)) == q

    def test_format_integer_has_no_slash(self):
        assert format_rational(Fraction(8, 4)) == "2"


class TestUniPoly:
    def test_trailing_zeros_stripped(self):
        assert P(1, 2, 0, 0).degree == 1

    def test_zero_polynomial(self):
        z = P()
        assert z.is_zero() and z.degree == -1

    def test_mul_and_shift(self):
        p = P(-1, 0, 1)  # t^2 - 1
        q = p.shift(1)   # (t+1)^2 - 1 = t^2 + 2t
        assert q == P(0, 2, 1)

    def test_eval(self):
        p = P(1, 5, 25, 125, 625)
        assert p(Fraction(1, 5)) == 5

    def test_getitem_out_of_range(self):
        assert P(3, 4)[10] == 0

    def test_content_and_primitive(self):
        c, prim = P(Fraction(-2, 3), Fraction(-4, 3)).content_and_primitive()
        assert c == Fraction(-2, 3)
        assert prim == P(1, 2)
        assert prim.coeffs[-1] > 0


class TestPolyGcd:
    def test_common_root(self):
        assert poly_gcd(P(-1, 0, 1), P(-1, 1)) == P(-1, 1)

    def test_gcd_with_zero_is_monic(self):
        assert poly_gcd(P(2, 4), P()) == P(1, 2).monic()

    def test_coprime_quartic_and_linear(self):
        # the quartic has no root at t = 1/5, so the gcd is 1
        quartic = P(1, 5, 25, 125, 625)
        assert quartic(Fraction(1, 5)) != 0
        assert poly_gcd(quartic, P(-1, 5)) == P(1)


class TestFactorOverQ:
    def test_difference_of_squares(self):
        _, factors = factor_over_Q(P(-1, 0, 1))
        assert factors == [(P(-1, 1), 1), (P(1, 1), 1)]

    def test_quartic_splits_into_quadratics(self):
        # 1024 t^4 - 1 = (32 t^2 - 1)(32 t^2 + 1)
        const, factors = factor_over_Q(P(-1, 0, 0, 0, 1024))
        assert const == 1024
        assert factors == [
            (P(Fraction(-1, 32), 0, 1), 1),
            (P(Fraction(1, 32), 0, 1), 1),
        ]

    def test_sextic_is_irreducible(self):
        _, factors = factor_over_Q(P(-1, 0, 0, 297, 0, 0, 729))
        assert len(factors) == 1
        assert factors[0] == (P(-1, 0, 0, 297, 0, 0, 729).monic(), 1)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factor_over_Q(P())

    @pytest.mark.parametrize("coeffs", [
        (0, 0, 0, 1),
        (-1, 0, 0, 0, 1024),
        (6, 11, 6, 1),
        (Fraction(1, 2), 0, Fraction(3, 2), 1, 7),
        (0, -4, 0, 1),
    ])
    def test_remultiplication(self, coeffs):
        p = P(*coeffs)
        const, factors = factor_over_Q(p)
        prod = P(const)
        for fac, mult in factors:
            for _ in range(mult):
                prod = prod * fac
        assert prod == p

    def test_factors_are_squarefree_and_rootless(self):
        p = P(0, -4, 0, 1) * P(0, -4, 0, 1) * P(5, 1)
        _, factors = factor_over_Q(p)
        for fac, _ in factors:
            deriv = UniPoly([c * k for k, c in enumerate(fac.coeffs)][1:])
            assert poly_gcd(fac, deriv) == P(1)

    def test_canonical_order(self):
        _, factors = factor_over_Q(P(-1, 0, 1) * P(Fraction(1, 32), 0, 1) * 32)
        degrees = [f.degree for f, _ in factors]
        assert degrees == sorted(degrees)


class TestNumberField:
    def test_degree_one_field_gen_is_rational(self):
        k = NumberField(P(-Fraction(1, 5), 1))
        assert k.gen.is_rational() and k.gen.as_rational() == Fraction(1, 5)

    def test_gen_is_root_of_modulus(self):
        k = NumberField(P(-2, 0, 1))
        g = k.gen
        assert (g * g - k.from_rational(2)).is_zero()

    def test_reducible_modulus_rejected(self):
        with pytest.raises(ValueError):
            NumberField(P(-1, 0, 1))

    def test_inverse(self):
        k = NumberField(P(-2, 0, 1))
        x = k.element([1, 1])  # 1 + sqrt(2)
        assert (x * x.inverse()) == k.one

    def test_ring_axioms_randomized(self):
        rng = random.Random(20260813)
        k = NumberField(P(1, -1, 0, 1, 1))
        for _ in range(25):
            a = k.random_element(rng)
            b = k.random_element(rng)
            c = k.random_element(rng)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a

    def test_hash_consistent_with_eq(self):
        k = NumberField(P(-2, 0, 1))
        assert hash(k.element([1, 2])) == hash(k.element([1, 2]))


class TestRationalRootsOverNF:
    def field(self):
        return NumberField(P(-2, 0, 1))

    def nf_poly(self, field, rational_coeffs):
        return [field.from_rational(c) for c in rational_coeffs]

    def test_pure_power(self):
        k = self.field()
        coeffs = self.nf_poly(k, [0, 0, 0, 0, 1])  # lambda^4
        assert rational_roots_over_nf(coeffs) == [(Fraction(0), 4)]

    def test_four_distinct_roots(self):
        k = self.field()
        # (x-1)(x-2)(x-3)(x-4) = 24 - 50x + 35x^2 - 10x^3 + x^4
        coeffs = self.nf_poly(k, [24, -50, 35, -10, 1])
        assert rational_roots_over_nf(coeffs) == [
            (Fraction(1), 1), (Fraction(2), 1), (Fraction(3), 1), (Fraction(4), 1),
        ]

    def test_no_rational_root_of_generator_square(self):
        k = self.field()
        coeffs = [k.gen * -1, k.zero, k.one]  # x^2 - sqrt(2)... actually x^2 - g
        assert rational_roots_over_nf(coeffs) == []

    def test_deflation_leaves_rootless_polynomial(self):
        k = self.field()
        # (x - 3)^2 (x^2 - g) where g generates the field
        base = [k.gen * -1, k.zero, k.one]
        for root in (3, 3):
            new = [k.zero] * (len(base) + 1)
            for i, c in enumerate(base):
                new[i + 1] = new[i + 1] + c
                new[i] = new[i] - c * root
            base = new
        roots = rational_roots_over_nf(base)
        assert roots == [(Fraction(3), 2)]

    def test_mixed_field_coefficients(self):
        k = self.field()
        # (x - 1/2)(x - g): coefficients involve the generator
        g = k.gen
        half = k.from_rational(Fraction(1, 2))
        coeffs = [half * g, (half + g) * -1, k.one]
        assert rational_roots_over_nf(coeffs) == [(Fraction(1, 2), 1)]


class TestNfPolyHelpers:
    def test_eval(self):
        k = NumberField(P(-2, 0, 1))
        coeffs = [k.from_rational(-2), k.zero, k.one]
        assert nfpoly_eval(coeffs, k.gen).is_zero()

    def test_normalize_strips_leading_zeros(self):
        k = NumberField(P(-2, 0, 1))
        coeffs = [k.one, k.zero, k.zero]
        assert len(nfpoly_normalize(coeffs)) == 1
