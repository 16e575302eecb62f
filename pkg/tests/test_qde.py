"""Differential operators in D = t d/dt: application, canonical form,
and reconstruction from truncated series."""
import random
from fractions import Fraction
from math import comb

import pytest

from qperiods.goldendata import load_operator
from qperiods.periods import period_closed_form
from qperiods.qde import (
    AmbiguousOperatorError,
    DiffOperator,
    apply,
    canonicalize,
    equal_up_to_scalar,
    reconstruct,
    _lift_and_verify,
    _prime_stream,
)
from qperiods.series import TruncatedSeries

D_OP = DiffOperator([[0], [1]])


def binomial_central_series(order):
    """sum_d binom(2d, d) t^(2d), the regularized period of the line,
    written straight from the closed form (1 - 4t^2)^(-1/2)."""
    return TruncatedSeries(
        [comb(n, n // 2) if n % 2 == 0 else 0 for n in range(order + 1)]
    )


def regularized(name, order):
    return period_closed_form(name, order).regularize()


class TestDiffOperator:
    def test_shape_accessors(self):
        op = DiffOperator([[1, 2], [3, 4], [5, 6]])
        assert op.order == 2
        assert op.degree == 1
        assert op.p(1)(2) == 11

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            DiffOperator([])

    def test_rejects_ragged_rows(self):
        with pytest.raises(ValueError):
            DiffOperator([[1, 2], [3]])

    def test_rejects_zero_leading_row(self):
        with pytest.raises(ValueError, match="p_N"):
            DiffOperator([[1], [0]])

    def test_text_round_trip(self):
        op = load_operator("FI4_3")
        assert DiffOperator.from_text(op.to_text()) == op

    def test_text_comments_ignored(self):
        text = "# a note\norder: 1\ndegree: 0\n0\n1\n"
        assert DiffOperator.from_text(text) == D_OP

    def test_text_header_required(self):
        with pytest.raises(ValueError, match="header"):
            DiffOperator.from_text("degree: 0\norder: 1\n0\n1\n")

    def test_text_row_count_checked(self):
        with pytest.raises(ValueError, match="rows"):
            DiffOperator.from_text("order: 2\ndegree: 0\n0\n1\n")

    def test_text_row_width_checked(self):
        with pytest.raises(ValueError, match="entries"):
            DiffOperator.from_text("order: 1\ndegree: 1\n0 1\n1\n")

    def test_from_file(self, tmp_path):
        op = load_operator("Q4")
        path = tmp_path / "q4.qdo"
        path.write_text(op.to_text(), encoding="utf-8")
        assert DiffOperator.from_file(path) == op


class TestCanonicalize:
    def test_scalar_collapse(self):
        assert canonicalize(DiffOperator([[0], [-2]])) == D_OP

    def test_rational_multiple_of_corpus_operator(self):
        golden = load_operator("P4")
        scaled = DiffOperator(
            [[Fraction(-3, 7) * c for c in row] for row in golden.coeffs]
        )
        assert canonicalize(scaled) == golden

    def test_trims_zero_top_column(self):
        op = canonicalize(DiffOperator([[1, 0], [1, 0]]))
        assert op.degree == 0
        assert op.coeffs == ((1,), (1,))

    @pytest.mark.parametrize("name", ["P4", "Q4", "MW4_17"])
    def test_idempotent_on_corpus(self, name):
        op = load_operator(name)
        assert canonicalize(op) == op


class TestEqualUpToScalar:
    def test_scalar_multiple(self):
        op = load_operator("P4")
        tripled = DiffOperator([[3 * c for c in row] for row in op.coeffs])
        assert equal_up_to_scalar(op, tripled)

    def test_distinct_operators(self):
        assert not equal_up_to_scalar(load_operator("P4"), load_operator("Q4"))

    def test_perturbed_coefficient(self):
        op = load_operator("P4")
        rows = [list(row) for row in op.coeffs]
        rows[0][-1] += 1
        assert not equal_up_to_scalar(op, DiffOperator(rows))


class TestApply:
    def test_d_kills_constants(self):
        out = apply(D_OP, TruncatedSeries([1]))
        assert out.is_zero()

    def test_multiplication_by_t(self):
        out = apply(DiffOperator([[0, 1]]), TruncatedSeries([1]))
        assert out.coeffs == (Fraction(0), Fraction(1))

    def test_corpus_operator_annihilates_period(self):
        op = load_operator("P4")
        out = apply(op, regularized("P4", 100))
        assert all(out[n] == 0 for n in range(96))
        assert out.is_zero()
        # every t-power of L pairs with a known coefficient up to the
        # truncation plus the lowest t-power present in L
        assert out.truncation_order == 100

    def test_nonsolution_leaves_residue(self):
        out = apply(load_operator("Q4"), regularized("P4", 40))
        assert not out.is_zero()


class TestReconstruct:
    def test_line(self):
        # (1-4t^2)f' = 4tf for f = (1-4t^2)^(-1/2); multiplying by t
        # gives ((4t^2-1)D + 4t^2)f = 0 in canonical form
        res = reconstruct(binomial_central_series(80))
        assert res.found and res.status == "found"
        assert res.operator.coeffs == ((0, 0, 4), (-1, 0, 4))
        assert res.nullity == 1
        assert res.equations == 81

    def test_line_matches_catalog_series(self):
        assert regularized("P1", 30).coeffs == binomial_central_series(30).coeffs

    def test_constant_series(self):
        res = reconstruct(TruncatedSeries([1] + [0] * 60))
        assert res.operator == D_OP

    @pytest.mark.parametrize("name,terms", [
        ("P4", 120), ("Q4", 120), ("V4_12", 160),
    ])
    def test_corpus_spot_checks(self, name, terms):
        res = reconstruct(regularized(name, terms))
        golden = load_operator(name)
        assert res.operator == golden
        assert equal_up_to_scalar(res.operator, golden)
        assert res.nullity == 1

    def test_annihilates_input(self):
        f = regularized("MW4_14", 170)
        res = reconstruct(f)
        assert apply(res.operator, f).is_zero()

    def test_scale_invariance(self):
        f = regularized("Q4", 120)
        scaled = TruncatedSeries([7 * c for c in f.coeffs])
        assert reconstruct(scaled).operator == reconstruct(f).operator

    def test_worker_count_does_not_change_result(self):
        f = binomial_central_series(80)
        assert reconstruct(f, workers=1) == reconstruct(f, workers=3)

    def test_generic_series_has_no_annihilator(self):
        rng = random.Random(20260813)
        coeffs = [Fraction(rng.randrange(-9, 10), rng.randrange(1, 7))
                  for _ in range(80)]
        coeffs[0] = Fraction(1)
        res = reconstruct(TruncatedSeries(coeffs), max_order=2, max_degree=2)
        assert not res.found
        assert res.status == "no_annihilator"
        assert res.operator is None

    def test_short_series_hits_margin(self):
        res = reconstruct(binomial_central_series(9))
        assert res.status == "no_annihilator"

    def test_zero_series_rejected(self):
        with pytest.raises(ValueError, match="zero series"):
            reconstruct(TruncatedSeries([0, 0, 0]))

    def test_oversized_candidate_is_ambiguous(self):
        # at order 2, degree 0 the constant series admits both D and D^2,
        # so the lift certifies a two-dimensional annihilator space
        alpha = tuple([Fraction(1)] + [Fraction(0)] * 60)
        with pytest.raises(AmbiguousOperatorError) as exc:
            _lift_and_verify(alpha, 2, 0, _prime_stream(), 1, 50)
        assert exc.value.order == 2
        assert exc.value.dimension == 2
        assert "dimension" in str(exc.value)
