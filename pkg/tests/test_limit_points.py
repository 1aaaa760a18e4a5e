"""
Tests for conical and guided limit point witnesses
"""
import pytest

from horofol.errors import ConstantTooSmall, DimensionMismatch, InputError
from horofol.geometry.product_space import ProductBoundaryPoint
from horofol.groups.ball import make_element
from horofol.groups.limit_points import conical_busemann_witness, conical_witness, guided_witness

UP = ProductBoundaryPoint.parse([None, None])


def test_conical_witnesses_along_the_axis(diagonal_spec):
    words = {g.word for g in conical_witness(UP, diagonal_spec, 3, 0.5)}
    assert {"a", "a.a", "a.a.a"} <= words
    assert "A" not in words


def test_conical_radius_must_be_positive(diagonal_spec):
    with pytest.raises(InputError):
        conical_witness(UP, diagonal_spec, 3, 0.0)


def test_conical_rank_mismatch(diagonal_spec):
    with pytest.raises(DimensionMismatch):
        conical_witness(ProductBoundaryPoint.parse([None]), diagonal_spec, 3, 1.0)


def test_busemann_witnesses(diagonal_spec):
    words = {g.word for g in conical_busemann_witness(UP, diagonal_spec, 3, 0.1)}
    assert {"a", "a.a", "a.a.a"} <= words
    assert "A" not in words


def test_guided_witness_identity(diagonal_spec):
    phi = make_element(diagonal_spec, "a")
    witness = guided_witness(UP, phi, 1.0, 3, diagonal_spec, 4)
    assert witness.is_identity


def test_guided_witness_preconditions(diagonal_spec):
    phi = make_element(diagonal_spec, "a")
    with pytest.raises(InputError):
        guided_witness(UP, phi, 1.0, 0, diagonal_spec, 4)
    with pytest.raises(ConstantTooSmall):
        guided_witness(UP, phi, 0.05, 3, diagonal_spec, 4)
