"""Singularity analysis: marked points, theta forms, Frobenius solutions,
local log-monodromies and the ramification census."""
from fractions import Fraction

import pytest

from qperiods.exactnum import UniPoly, factor_over_Q
from qperiods.goldendata import load_operator
from qperiods.monodromy import (
    UnsupportedExponentError,
    is_fuchsian,
    local_log_monodromy,
    localize,
    ramification,
    singular_points,
    verify_frobenius,
)
from qperiods.qde import DiffOperator

D_OP = DiffOperator([[0], [1]])
T_D_OP = DiffOperator([[0, 0], [0, 1]])
AIRY_LIKE = DiffOperator([[0, -1], [0, 0], [1, 0]])  # D^2 - t
IRRATIONAL = DiffOperator([[-2], [0], [1]])  # D^2 - 2

P4_QUARTIC = "roots of 625*t^4 + 125*t^3 + 25*t^2 + 5*t + 1"


def points_by_name(op):
    return {p.describe(): p for p in singular_points(op)}


class TestSingularPoints:
    def test_p4_markings(self):
        descs = [p.describe() for p in singular_points(load_operator("P4"))]
        assert descs == ["t = 0", "t = 1/5", P4_QUARTIC, "t = infinity"]

    def test_q4_markings(self):
        descs = [p.describe() for p in singular_points(load_operator("Q4"))]
        assert descs == [
            "t = 0",
            "roots of 32*t^2 - 1",
            "roots of 32*t^2 + 1",
            "t = infinity",
        ]

    def test_euler_operator_markings(self):
        descs = [p.describe() for p in singular_points(D_OP)]
        assert descs == ["t = 0", "t = infinity"]

    def test_conjugate_counts(self):
        pts = points_by_name(load_operator("P4"))
        assert pts["t = 1/5"].degree == 1
        assert pts[P4_QUARTIC].degree == 4
        assert pts["t = 0"].degree == 1

    def test_origin_absorbs_t_factor(self):
        # leading coefficient t(t - 1) marks the origin without a separate
        # finite record for the factor t
        op = DiffOperator([[0, 0, 0], [0, -1, 1]])
        pts = singular_points(op)
        assert [p.describe() for p in pts] == ["t = 0", "t = 1", "t = infinity"]
        assert pts[0].multiplicity_in_leading == 1


class TestLocalize:
    def test_p4_origin_indicial(self):
        op = load_operator("P4")
        tf = localize(op, singular_points(op)[0])
        assert tf.indicial == (0, 0, 0, 0, -1)
        assert tf.clearing_power == 0

    def test_p4_infinity_roots(self):
        op = load_operator("P4")
        tf = localize(op, singular_points(op)[-1])
        const, factors = factor_over_Q(UniPoly(tf.indicial))
        assert const == 3125
        assert [(f.coeffs, m) for f, m in factors] == [
            ((-4, 1), 1), ((-3, 1), 1), ((-2, 1), 1), ((-1, 1), 1),
        ]

    def test_euler_operator_both_ends(self):
        origin, infinity = singular_points(D_OP)
        assert localize(D_OP, origin).indicial == (0, 1)
        assert localize(D_OP, infinity).indicial == (0, -1)

    def test_clearing_power_recorded(self):
        tf = localize(T_D_OP, singular_points(T_D_OP)[0])
        assert tf.indicial == (0, 1)
        assert tf.clearing_power == -1


class TestIsFuchsian:
    @pytest.mark.parametrize("name", ["P4", "Q4", "FI4_1", "MW4_1", "MW4_17"])
    def test_corpus_operators(self, name):
        report = is_fuchsian(load_operator(name))
        assert report
        assert report.failures == ()

    def test_irregular_at_infinity(self):
        report = is_fuchsian(AIRY_LIKE)
        assert not report
        assert report.failures == ("t = infinity",)


class TestLocalLogMonodromy:
    def test_p4_origin_single_block(self):
        op = load_operator("P4")
        lm = local_log_monodromy(op, singular_points(op)[0])
        assert lm.exponents == (0, 0, 0, 0)
        assert lm.blocks == ((Fraction(0), 4),)
        assert lm.contribution == 3

    def test_q4_quadratic_point(self):
        op = load_operator("Q4")
        pt = points_by_name(op)["roots of 32*t^2 - 1"]
        lm = local_log_monodromy(op, pt)
        assert lm.exponents == (0, 1, 1, 2)
        assert lm.blocks == ((Fraction(0), 2), (Fraction(0), 1), (Fraction(0), 1))
        assert lm.contribution == 1

    def test_fi4_1_infinity_has_half_exponents(self):
        op = load_operator("FI4_1")
        lm = local_log_monodromy(op, singular_points(op)[-1])
        assert lm.exponents == (
            Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5, 2),
        )
        assert lm.blocks == (
            (Fraction(0), 1), (Fraction(0), 1),
            (Fraction(1, 2), 1), (Fraction(1, 2), 1),
        )
        assert lm.contribution == 2

    def test_galois_conjugate_root_gives_same_blocks(self):
        op = load_operator("Q4")
        pt = points_by_name(op)["roots of 32*t^2 - 1"]
        other = pt.field.zero - pt.field.gen
        assert (local_log_monodromy(op, pt).blocks
                == local_log_monodromy(op, pt, root=other).blocks)

    def test_irrational_exponents_unsupported(self):
        origin = singular_points(IRRATIONAL)[0]
        with pytest.raises(UnsupportedExponentError, match="t = 0"):
            local_log_monodromy(IRRATIONAL, origin)

    def test_irregular_point_rejected(self):
        infinity = singular_points(AIRY_LIKE)[-1]
        with pytest.raises(ValueError, match="not regular singular"):
            local_log_monodromy(AIRY_LIKE, infinity)

    def test_block_sizes_sum_to_order(self):
        op = load_operator("MW4_17")
        for pt in singular_points(op):
            lm = local_log_monodromy(op, pt)
            assert lm.order == op.order
            assert all(0 <= ev < 1 for ev, _ in lm.blocks)


class TestVerifyFrobenius:
    def test_p4_solutions_annihilated_everywhere(self):
        op = load_operator("P4")
        for pt in singular_points(op):
            assert verify_frobenius(op, pt, terms=12) == 4

    def test_half_integer_classes(self):
        op = load_operator("FI4_1")
        assert verify_frobenius(op, singular_points(op)[-1], terms=12) == 4


class TestRamification:
    def test_p4_extremal(self):
        rep = ramification(load_operator("P4"))
        assert (rep.rank, rep.rf, rep.defect) == (4, 8, 0)
        assert rep.verdict == "extremal"
        assert not rep.anomalous

    def test_p4_text_snapshot(self):
        expected = (
            "rank: 4\n"
            "point: t = 0\n"
            "  exponents: 0, 0, 0, 0\n"
            "  blocks: (0, 4)\n"
            "  contribution: 3\n"
            "point: t = 1/5\n"
            "  exponents: 0, 1, 1, 2\n"
            "  blocks: (0, 2), (0, 1), (0, 1)\n"
            "  contribution: 1\n"
            "point: roots of 625*t^4 + 125*t^3 + 25*t^2 + 5*t + 1\n"
            "  exponents: 0, 1, 1, 2\n"
            "  blocks: (0, 2), (0, 1), (0, 1)\n"
            "  contribution: 1\n"
            "  conjugates: 4\n"
            "rf: 8\n"
            "defect: 0\n"
            "verdict: extremal\n"
        )
        assert ramification(load_operator("P4")).text() == expected

    def test_trivial_points_kept_in_data_only(self):
        rep = ramification(load_operator("P4"))
        descs = [e.point.describe() for e in rep.entries]
        assert "t = infinity" in descs
        assert "t = infinity" not in rep.text()

    def test_mw4_17_defect_one(self):
        rep = ramification(load_operator("MW4_17"))
        assert rep.defect == 1
        assert rep.verdict == "defect 1"
        origin = rep.entries[0]
        assert origin.point.describe() == "t = 0"
        assert origin.local.blocks == (
            (Fraction(0), 4), (Fraction(0), 2), (Fraction(0), 2),
        )

    def test_mw4_1_fractional_eigenvalues(self):
        rep = ramification(load_operator("MW4_1"))
        assert rep.verdict == "extremal"
        by_point = {e.point.describe(): e for e in rep.entries}
        for desc in ("t = 1/2", "t = -1/2"):
            blocks = by_point[desc].local.blocks
            assert blocks[-2:] == ((Fraction(1, 6), 1), (Fraction(5, 6), 1))
            assert by_point[desc].contribution == 2

    @pytest.mark.parametrize("name", ["Q4", "FI4_5", "V4_12"])
    def test_defect_nonnegative(self, name):
        assert ramification(load_operator(name)).defect >= 0

    def test_irrational_exponents_propagate(self):
        with pytest.raises(UnsupportedExponentError):
            ramification(IRRATIONAL)
