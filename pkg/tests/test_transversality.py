"""
Tests for the finite-ball transversality diagnostics
"""
import math

import numpy as np
import pytest

from horofol.errors import InputError, InsufficientGrowthData
from horofol.geometry.hyperbolic_plane import IsometryH2
from horofol.geometry.product_space import ProductIsometry
from horofol.groups.ball import enumerate_ball
from horofol.groups.group_spec import cyclic_spec
from horofol.groups.transversality import (
    _antipodal_witnesses,
    attracting_angles,
    componentwise_shadow_report,
    div_factors_report,
    transversality_check,
)


def test_needs_two_letters(diagonal_spec):
    with pytest.raises(InsufficientGrowthData):
        transversality_check(diagonal_spec, 1)


def test_diagonal_group_passes(diagonal_spec):
    report = transversality_check(diagonal_spec, 6)
    assert report.divergent_ok
    assert report.antipodal_ok
    assert report.witnesses == []
    assert len(report.bucket_minima) == 6
    assert report.growth_floor == pytest.approx(0.2 * 2.0 * math.log(3.0))


def test_bucket_minima_grow(twisted_spec):
    minima = transversality_check(twisted_spec, 5).bucket_minima
    assert minima[-1] > minima[0]


def test_attracting_angles(diagonal_spec):
    ball = enumerate_ball(diagonal_spec, 1)
    angles = attracting_angles(ball.mats)
    assert np.isnan(angles[0]).all()
    a = ball.word_index["a"]
    assert angles[a] == pytest.approx([0.0, 0.0], abs=1e-12)
    b = ball.word_index["b"]
    assert angles[b, 0] == pytest.approx(angles[b, 1])


def test_shared_component_is_a_witness():
    angles = np.array([[0.1, 0.5], [0.1, 0.9], [2.0, 3.0]])
    witnesses = _antipodal_witnesses(angles, ["x", "y", "z"], 1e-6)
    assert len(witnesses) == 1
    assert {witnesses[0]['first'], witnesses[0]['second']} == {"x", "y"}
    assert witnesses[0]['factor'] == 0


def test_equal_tuples_are_not_witnesses():
    angles = np.array([[0.1, 0.5], [0.1, 0.5], [6.28, 1.0]])
    assert _antipodal_witnesses(angles, ["x", "y", "z"], 1e-6) == []


def test_div_factors_stable_on_schottky(diagonal_spec):
    report = div_factors_report(diagonal_spec, 8)
    assert report.radii == [2.0, 4.0, 8.0]
    assert report.lengths == [4, 6, 8]
    assert len(report.history) == 3
    assert report.growth == pytest.approx([0.0, 0.0, 0.0])
    assert report.holds
    # identical factors: the threshold is the largest displacement up to R
    assert report.thresholds[0] == 0.0
    assert report.thresholds[1] == pytest.approx(math.acosh((41.0 / 9.0) ** 2))
    assert all(t <= R for t, R in zip(report.thresholds, report.radii))


def test_div_factors_fail_without_divergence():
    still = ProductIsometry.of(IsometryH2.translation(1.0), IsometryH2.identity())
    report = div_factors_report(cyclic_spec(still), 6)
    assert report.lengths == [2, 4, 6]
    assert report.thresholds == pytest.approx([6.0, 6.0, 6.0])
    assert report.growth == pytest.approx([2.0, 2.0, 2.0])
    assert not report.holds


def test_div_factors_needs_two_lengths(diagonal_spec):
    with pytest.raises(InsufficientGrowthData):
        div_factors_report(diagonal_spec, 2)
    with pytest.raises(InputError):
        div_factors_report(diagonal_spec, 6, step=0)


def test_componentwise_shadow_diagonal(diagonal_spec):
    six = componentwise_shadow_report(diagonal_spec, 6, 1.0)
    eight = componentwise_shadow_report(diagonal_spec, 8, 1.0)
    for report in (six, eight):
        assert report.pairs_in_shadow > 0
        assert math.isfinite(report.max_radius)
        assert report.max_radius < 1.0
    assert eight.pairs_tested > six.pairs_tested


@pytest.mark.slow
def test_componentwise_shadow_stable_at_ten(diagonal_spec):
    report = componentwise_shadow_report(diagonal_spec, 10, 1.0)
    assert report.max_radius < 1.0
