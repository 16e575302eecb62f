"""Quantum period evaluators: structural routes, closed forms, dispatch."""
from fractions import Fraction
from math import factorial

import pytest

from qperiods.periods import (
    BundleData,
    ManifoldSpec,
    ToricData,
    WpsCiData,
    catalog_entry,
    catalog_names,
    enumerate_beta,
    harmonic,
    period_closed_form,
    period_flag_extraction,
    period_product,
    period_strangeway,
    period_toric,
    period_toric_ci,
    period_wps_ci,
    resolve,
    strangeway_c,
)
from qperiods.periods import _mm2_17_j_coefficient

P4_DATA = ToricData(((1, 1, 1, 1, 1),))

# names with both a closed-form and a structural description
DUAL_NAMES = ("MW4_4", "MW4_10", "MW4_12", "MW4_13", "MW4_15", "MW4_17")


class TestEnumerateBeta:
    def test_projective_space(self):
        rows = list(enumerate_beta(P4_DATA, 10))
        assert [r[0] for r in rows] == [(0,), (1,), (2,)]
        assert [r[2] for r in rows] == [0, 5, 10]

    def test_rank_two_cone(self):
        td = ToricData(((1, 1, 1, 1, 0, -2), (0, 0, 0, 0, 1, 1)))
        got = {r[0] for r in enumerate_beta(td, 4)}
        # constraints l >= 0, m >= 0, m >= 2l with degree 2l + 2m
        assert got == {(0, 0), (0, 1), (0, 2)}
        got6 = {r[0] for r in enumerate_beta(td, 6)}
        assert got6 == {(0, 0), (0, 1), (0, 2), (0, 3), (1, 2)}

    def test_degree_zero(self):
        assert [r[0] for r in enumerate_beta(P4_DATA, 0)] == [(0,)]

    def test_each_class_once(self):
        td = ToricData(((1, 1, 1, 0, 0, 0, 1), (0, 0, 0, 1, 1, 1, 1)))
        rows = [r[0] for r in enumerate_beta(td, 8)]
        assert len(rows) == len(set(rows))

    def test_dependent_rows_rejected(self):
        with pytest.raises(ValueError, match="independent"):
            ToricData(((1, 1), (2, 2)))

    def test_trivial_cone_is_fine(self):
        # no effective class pairs nonnegatively with both columns
        rows = list(enumerate_beta(ToricData(((1, -1),)), 4))
        assert [r[0] for r in rows] == [(0,)]


class TestPeriodToric:
    def test_p4(self):
        g = period_toric(P4_DATA, 10)
        assert g[5] == Fraction(1, factorial(1) ** 5)
        assert g.regularize()[5] == 120

    def test_rank_two_bundle_example(self):
        td = catalog_entry("MW4_15").structural.toric
        r = period_toric(td, 6).regularize()
        assert r[2] == 2 and r[6] == 380

    def test_product_presented_as_toric(self):
        td = catalog_entry("MW4_17").structural.toric
        assert period_toric(td, 4).regularize()[4] == 60


class TestPeriodToricCI:
    def test_quartic_fourfold(self):
        spec = catalog_entry("V4_4").structural
        g = period_toric_ci(spec.toric, spec.bundle, 4)
        assert g[2] == 24
        assert g.regularize()[2] == 48

    def test_two_bilinear_sections(self):
        spec = catalog_entry("MW4_7").structural
        g = period_toric_ci(spec.toric, spec.bundle, 2)
        assert g.regularize()[2] == 4

    def test_double_section(self):
        spec = catalog_entry("MW4_10").structural
        g = period_toric_ci(spec.toric, spec.bundle, 4)
        assert g.regularize()[4] == 84

    def test_bundle_not_nef_rejected(self):
        bd = BundleData(((-1,),))
        with pytest.raises(ValueError, match="not nef"):
            period_toric_ci(P4_DATA, bd, 6)

    def test_unbounded_enumeration_rejected(self):
        # a quintic section exhausts the anticanonical degree
        with pytest.raises(ValueError, match="not positive"):
            period_toric_ci(P4_DATA, BundleData(((5,),)), 3)


class TestPeriodWpsCI:
    def test_fi4_2(self):
        wd = WpsCiData((1, 1, 1, 1, 1, 2), (4,))
        g = period_wps_ci(wd, 3)
        assert g.regularize()[3] == 72

    def test_v4_2(self):
        wd = WpsCiData((1, 1, 1, 1, 1, 3), (6,))
        assert period_wps_ci(wd, 2).regularize()[2] == 240

    def test_plain_weights_match_toric(self):
        wd = WpsCiData((1, 1, 1, 1, 1), ())
        a = period_wps_ci(wd, 15)
        b = period_toric(P4_DATA, 15)
        assert a.coeffs == b.coeffs

    def test_invariants_checked(self):
        with pytest.raises(ValueError):
            WpsCiData((1, 2), (3,))  # 2 does not divide 3


class TestPeriodProduct:
    def test_single_factor_identity(self):
        g = period_closed_form("P1", 6)
        assert period_product([g]).coeffs == g.coeffs

    def test_p1_times_b3_1(self):
        g = period_product([
            period_closed_form("P1", 2), period_closed_form("B3_1", 2),
        ])
        assert g.regularize()[2] == 122

    def test_p2_squared(self):
        p2 = period_closed_form("P2", 3)
        assert period_product([p2, p2]).regularize()[3] == 12


class TestHarmonic:
    def test_values(self):
        assert harmonic(0) == 0
        assert harmonic(1) == 1
        assert harmonic(3) == Fraction(11, 6)


class TestClosedForms:
    def test_v4_12(self):
        assert period_closed_form("V4_12", 2).regularize()[2] == 10

    def test_mw4_11(self):
        r = period_closed_form("MW4_11", 4).regularize()
        assert r[2] == 4 and r[4] == 84

    def test_mw4_9(self):
        assert period_closed_form("MW4_9", 2).regularize()[2] == 8

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            period_closed_form("X99", 4)

    def test_aliases(self):
        a = period_closed_form("V4_5", 9)
        b = period_closed_form("FI4_5", 9)
        assert a.coeffs == b.coeffs


class TestFlagExtraction:
    def test_v4_16(self):
        r = period_flag_extraction("V4_16", 4).regularize()
        assert r[2] == 8 and r[4] == 240

    def test_v4_18(self):
        r = period_flag_extraction("V4_18", 4).regularize()
        assert r[2] == 6 and r[4] == 162

    def test_order_zero(self):
        assert period_flag_extraction("V4_16", 0).coeffs == (Fraction(1),)


class TestStrangeway:
    def test_c_values(self):
        assert strangeway_c(0, 0) == 1
        assert strangeway_c(1, 0) == 1
        assert strangeway_c(0, 1) == 0

    def test_str2_linear_term_vanishes(self):
        assert period_strangeway(2, 4)[1] == 0

    @pytest.mark.parametrize("k,exponent,weight", [
        (1, lambda l, m: l + 2 * m, lambda l, m: factorial(l) ** 5),
        (2, lambda l, m: 2 * l + m,
         lambda l, m: factorial(l) ** 4 * factorial(m)),
        (3, lambda l, m: l + m,
         lambda l, m: factorial(l) ** 4 * factorial(l + m)),
    ])
    def test_against_direct_oracle(self, k, exponent, weight):
        """Re-sum the printed double series from scratch and compare."""
        order = 6
        raw = [Fraction(0)] * (order + 1)
        for l in range(order + 1):
            for m in range(order + 1):
                d = exponent(l, m)
                if d <= order:
                    raw[d] += weight(l, m) * strangeway_c(l, m)
        if k in (1, 3):
            out = [Fraction(0)] * (order + 1)
            for d in range(order + 1):
                for i in range(d + 1):
                    out[d] += Fraction((-1) ** i, factorial(i)) * raw[d - i]
        else:
            out = raw
        assert period_strangeway(k, order).coeffs == tuple(out)

    def test_j_function_identity_grid(self):
        """The c table comes from equating two exponentially twisted
        expansions; with each q carrying 1/z the coefficient of
        q1^L q2^M z^-(L+M) on the table side is the twisted sum below."""
        for L in range(4):
            for M in range(4):
                rhs = sum(
                    Fraction((-1) ** (L - l), factorial(L - l))
                    * factorial(l) ** 5 * factorial(M) * strangeway_c(l, M)
                    for l in range(L + 1)
                )
                assert rhs == _mm2_17_j_coefficient(L, M), (L, M)


class TestResolve:
    def test_builtin_p4(self):
        spec = ManifoldSpec(kind="builtin", name="P4")
        assert resolve(spec, 25).regularize()[20] == 305540235000

    def test_product_of_lines(self):
        p1 = ManifoldSpec(kind="builtin", name="P1")
        spec = ManifoldSpec(kind="product", factors=(p1,) * 4)
        assert resolve(spec, 8).regularize()[6] == 5120

    def test_builtin_fi4_1(self):
        spec = ManifoldSpec(kind="builtin", name="FI4_1")
        assert resolve(spec, 12).regularize()[12] == 46381007673000

    def test_spec_json_round_trip(self):
        spec = catalog_entry("MW4_4").structural
        back = ManifoldSpec.from_json_dict(spec.to_json_dict())
        assert back == spec

    def test_spec_text_round_trip(self):
        spec = catalog_entry("MW4_15").structural
        assert ManifoldSpec.from_text(spec.to_text()) == spec


class TestCatalogInvariants:
    def test_catalog_has_the_35_fourfolds(self):
        names = set(catalog_names())
        expected = {"P4", "Q4"}
        expected.update(f"FI4_{k}" for k in range(1, 7))
        expected.update(f"V4_{k}" for k in range(2, 19, 2))
        expected.update(f"MW4_{k}" for k in range(1, 19))
        assert expected <= names

    @pytest.mark.parametrize("name", sorted(catalog_names()))
    def test_unital_with_zero_linear_term(self, name):
        g = period_closed_form(name, 4)
        assert g[0] == 1
        assert g[1] == 0

    @pytest.mark.parametrize("name", sorted(catalog_names()))
    def test_index_divisibility_vanishing(self, name):
        entry = catalog_entry(name)
        r = entry.fano_index
        if r <= 1:
            pytest.skip("no vanishing constraint for index 1")
        g = period_closed_form(name, 2 * r + 1)
        for d in range(1, 2 * r + 2):
            if d % r:
                assert g[d] == 0, (name, d)

    @pytest.mark.parametrize("name", DUAL_NAMES)
    def test_closed_form_matches_structural(self, name):
        entry = catalog_entry(name)
        assert entry.structural is not None
        closed = period_closed_form(name, 12)
        structural = resolve(entry.structural, 12)
        assert closed.coeffs == structural.coeffs
