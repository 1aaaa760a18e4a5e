"""
Tests for linear forms, partial Poincare series and critical exponents
"""
import math

import pytest

from horofol.errors import DimensionMismatch, InputError, InsufficientGrowthData
from horofol.groups.ball import enumerate_ball
from horofol.groups.group_spec import factor_spec
from horofol.measures.poincare import (
    LinearForm,
    counting_function,
    critical_exponent,
    poincare_partial,
)


class TestLinearForm:

    def test_parse(self):
        assert LinearForm.parse("0.5, 0.5").to_list() == [0.5, 0.5]

    def test_parse_rejects_text(self):
        with pytest.raises(InputError):
            LinearForm.parse("a,b")

    def test_rejects_empty_and_nan(self):
        with pytest.raises(InputError):
            LinearForm(())
        with pytest.raises(InputError):
            LinearForm.of(1.0, float('nan'))

    def test_evaluation(self):
        psi = LinearForm.of(1.0, 2.0)
        assert psi([3.0, 4.0]) == pytest.approx(11.0)
        with pytest.raises(DimensionMismatch):
            psi([1.0, 2.0, 3.0])

    def test_zero_form(self):
        assert LinearForm.of(0.0, 0.0).is_zero
        assert not LinearForm.of(0.0, 1.0).is_zero


class TestPoincarePartial:

    def test_identity_only(self, diagonal_spec, uniform_psi):
        assert poincare_partial(diagonal_spec, uniform_psi, 1.0, 0) == pytest.approx(1.0)

    def test_cyclic_geometric_series(self, cyclic_translation, uniform_psi):
        s = 1.0
        expected = (1.0 + math.exp(-s)) / (1.0 - math.exp(-s))
        assert poincare_partial(cyclic_translation, uniform_psi, s, 40) == pytest.approx(
            expected, rel=1e-9
        )

    def test_monotone_in_length_and_exponent(self, diagonal_spec, uniform_psi):
        ball = enumerate_ball(diagonal_spec, 4)
        by_length = [poincare_partial(diagonal_spec, uniform_psi, 1.0, L, ball=ball)
                     for L in range(5)]
        assert by_length == sorted(by_length)
        by_exponent = [poincare_partial(diagonal_spec, uniform_psi, s, 4, ball=ball)
                       for s in (0.5, 1.0, 2.0)]
        assert by_exponent == sorted(by_exponent, reverse=True)

    def test_zero_form_rejected(self, diagonal_spec):
        with pytest.raises(InputError):
            poincare_partial(diagonal_spec, LinearForm.of(0.0, 0.0), 1.0, 2)

    def test_rank_mismatch(self, diagonal_spec):
        with pytest.raises(DimensionMismatch):
            poincare_partial(diagonal_spec, LinearForm.of(1.0), 1.0, 2)


class TestCriticalExponent:

    def test_counting_function(self):
        assert counting_function([1.0, 2.0, 2.0, 5.0], [0.5, 2.0, 10.0]).tolist() == [0, 3, 4]

    def test_needs_long_words(self, diagonal_spec, uniform_psi):
        with pytest.raises(InsufficientGrowthData):
            critical_exponent(diagonal_spec, uniform_psi, 5)

    def test_zero_form_rejected(self, diagonal_spec):
        with pytest.raises(InputError):
            critical_exponent(diagonal_spec, LinearForm.of(0.0, 0.0), 6)

    def test_schottky_exponent(self, diagonal_spec, uniform_psi):
        estimate = critical_exponent(diagonal_spec, uniform_psi, 6)
        assert 0.0 < estimate.delta < 1.0
        assert estimate.buckets_used >= 8
        assert estimate.window[0] < estimate.window[1] <= estimate.complete_up_to
        assert estimate.to_dict()['max_word_length'] == 6

    def test_cyclic_group_has_no_growth(self, cyclic_translation, uniform_psi):
        estimate = critical_exponent(cyclic_translation, uniform_psi, 400)
        assert estimate.delta < 0.02

    def test_diagonal_matches_single_factor(self, diagonal_spec, uniform_psi):
        product = critical_exponent(diagonal_spec, uniform_psi, 6)
        single = critical_exponent(factor_spec(diagonal_spec, 0), LinearForm.of(1.0), 6)
        assert product.delta == pytest.approx(single.delta, abs=0.05)

    @pytest.mark.slow
    def test_estimate_is_stable(self, diagonal_spec, uniform_psi):
        ball = enumerate_ball(diagonal_spec, 10)
        eight = critical_exponent(diagonal_spec, uniform_psi, 8, ball=ball)
        ten = critical_exponent(diagonal_spec, uniform_psi, 10, ball=ball)
        assert abs(ten.delta - eight.delta) <= 0.05
