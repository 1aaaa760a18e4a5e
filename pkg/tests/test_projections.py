"""
Tests for Cartan and Jordan projections, spectra and cone samples
"""
import math

import numpy as np
import pytest

from horofol.errors import InputError, NotJointlyLoxodromic
from horofol.geometry.hyperbolic_plane import IsometryH2
from horofol.geometry.product_space import ProductIsometry
from horofol.groups.ball import GroupElement, make_element
from horofol.groups.projections import (
    _unique_rows,
    cartan_projection,
    jordan_from_traces,
    jordan_projection,
    length_spectrum,
    limit_cone_sample,
)


def test_generator_translation_length(diagonal_spec):
    a = make_element(diagonal_spec, "a")
    assert jordan_projection(a) == pytest.approx([2.0 * math.log(3.0)] * 2)
    assert cartan_projection(a) == pytest.approx(jordan_projection(a))


def test_elliptic_factor_rejected():
    g = ProductIsometry.of(IsometryH2.translation(1.0), IsometryH2.rotation(0.5))
    element = GroupElement("g", g, np.zeros(2))
    with pytest.raises(NotJointlyLoxodromic) as excinfo:
        jordan_projection(element)
    assert excinfo.value.factors == [1]
    assert excinfo.value.word == "g"


def test_traces_below_two_give_nan():
    tau = jordan_from_traces(np.array([1.0, -2.0, 3.0]))
    assert np.isnan(tau[0]) and np.isnan(tau[1])
    assert tau[2] == pytest.approx(2.0 * math.acosh(1.5))


def test_powers_scale_translation_length(twisted_spec):
    g = make_element(twisted_spec, "a.b")
    tau = jordan_projection(g)
    for k in range(2, 6):
        power = make_element(twisted_spec, ".".join(["a.b"] * k))
        assert jordan_projection(power) == pytest.approx(k * tau, abs=1e-9)


def test_cartan_dominates_jordan(twisted_spec):
    for word in ("a", "a.b", "a.B.a", "b.b.A"):
        g = make_element(twisted_spec, word)
        assert (cartan_projection(g) >= jordan_projection(g) - 1e-9).all()


def test_spectrum_of_diagonal_group_is_diagonal(diagonal_spec):
    sample = length_spectrum(diagonal_spec, 3)
    assert len(sample.vectors) > 0
    assert sample.vectors[:, 0] == pytest.approx(sample.vectors[:, 1])
    assert len(sample.words) == len(sample.vectors)
    assert sample.to_dict()['max_word_length'] == 3


def test_unique_rows_across_rounding_boundaries():
    edge = 0.5e-9
    vectors = np.array([
        [1.0 + edge - 1e-13, 2.0],
        [1.0 + edge + 1e-13, 2.0],
        [3.0, 4.0],
        [3.0, 4.0 + 5e-10],
        [1.0 + 3e-9, 2.0],
    ])
    assert _unique_rows(vectors, 1e-9).tolist() == [0, 2, 4]


def test_unique_rows_empty():
    assert _unique_rows(np.zeros((0, 2)), 1e-9).size == 0


def test_spectrum_needs_positive_length(diagonal_spec):
    with pytest.raises(InputError):
        length_spectrum(diagonal_spec, 0)
    with pytest.raises(InputError):
        limit_cone_sample(diagonal_spec, 0)


def test_limit_cone_directions(diagonal_spec, twisted_spec):
    diagonal = limit_cone_sample(diagonal_spec, 3)
    assert diagonal == pytest.approx(np.full(diagonal.shape, 1.0 / math.sqrt(2.0)))
    twisted = limit_cone_sample(twisted_spec, 3)
    assert np.linalg.norm(twisted, axis=1) == pytest.approx(np.ones(len(twisted)))
    assert (twisted > 0).all()
