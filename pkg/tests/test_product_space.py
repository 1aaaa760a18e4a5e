"""
Tests for products of hyperbolic planes
"""
import math

import numpy as np
import pytest

from horofol.errors import DimensionMismatch
from horofol.geometry.hyperbolic_plane import INFINITY, BoundaryPointH2, H2Point, IsometryH2
from horofol.geometry.product_space import (
    ProductBoundaryPoint,
    ProductIsometry,
    ProductPoint,
    SegmentTuple,
    apply_product,
    busemann_vec,
    converges_to,
    kappa,
    product_shadow_contains,
    visual_endpoint,
)


def test_kappa_example():
    z = ProductPoint.of(H2Point(0.0, 1.0), H2Point(0.0, 1.0))
    w = ProductPoint.of(H2Point(0.0, 2.0), H2Point(1.0, 1.0))
    assert kappa(z, w) == pytest.approx([math.log(2.0), 0.962424], abs=1e-6)


def test_kappa_rank_mismatch():
    with pytest.raises(DimensionMismatch):
        kappa(ProductPoint.basepoint(2), ProductPoint.basepoint(3))


def test_busemann_vec_componentwise():
    xi = ProductBoundaryPoint.parse([None, 0.0])
    z = ProductPoint.basepoint(2)
    w = ProductPoint.of(H2Point(0.0, 2.0), H2Point(0.0, 2.0))
    assert busemann_vec(xi, z, w) == pytest.approx([math.log(2.0), -math.log(2.0)])


def test_parse_accepts_inf_spellings():
    xi = ProductBoundaryPoint.parse(["inf", 1.5, None])
    assert xi[0].is_infinity and xi[2].is_infinity
    assert xi.to_json() == [None, 1.5, None]


def test_isometry_algebra():
    g = ProductIsometry.of(IsometryH2.translation(1.0), IsometryH2.rotation(0.4))
    assert (g @ g.inverse()).equals(ProductIsometry.identity(2))
    assert g.power(3).equals(g @ g @ g)
    assert g.matrices.shape == (2, 2, 2)


def test_action_on_points_and_boundary():
    g = ProductIsometry.of(IsometryH2.translation(1.0), IsometryH2.translation(-1.0))
    moved = apply_product(g, ProductPoint.basepoint(2))
    assert moved[0].im == pytest.approx(math.e)
    assert moved[1].im == pytest.approx(1.0 / math.e)
    ends = g(ProductBoundaryPoint.of(INFINITY, BoundaryPointH2.finite(1.0)))
    assert ends[0].is_infinity
    assert ends[1].value == pytest.approx(1.0 / math.e)


def test_product_shadow_needs_every_factor():
    z = ProductPoint.basepoint(2)
    w = ProductPoint.of(H2Point(0.0, 2.0), H2Point(0.0, 2.0))
    up = ProductBoundaryPoint.of(INFINITY, INFINITY)
    mixed = ProductBoundaryPoint.of(INFINITY, BoundaryPointH2.finite(0.0))
    assert product_shadow_contains(z, w, 0.5, up)
    assert not product_shadow_contains(z, w, 0.5, mixed)


def test_visual_endpoint():
    z = ProductPoint.basepoint(2)
    w = ProductPoint.of(H2Point(0.0, 2.0), H2Point(1.0, 1.0))
    ends = visual_endpoint(z, w)
    assert ends[0].is_infinity
    assert ends[1].value == pytest.approx((1.0 + math.sqrt(5.0)) / 2.0)


def test_segment_tuple():
    segs = SegmentTuple.between(ProductPoint.basepoint(2), ProductPoint.of(
        H2Point(0.0, 2.0), H2Point(1.0, 1.0)
    ))
    assert [s.length for s in segs] == pytest.approx([math.log(2.0), 0.962424], abs=1e-6)


def test_converges_to_diagonal_ray():
    seq = [ProductPoint.of(H2Point(0.0, math.exp(n)), H2Point(0.0, math.exp(-n)))
           for n in range(1, 30)]
    xi = ProductBoundaryPoint.of(INFINITY, BoundaryPointH2.finite(0.0))
    assert converges_to(seq, xi, 1e-6)
    assert not converges_to(seq, ProductBoundaryPoint.of(INFINITY, INFINITY), 1e-6)
    assert not converges_to([], xi, 1e-6)


def test_converges_to_needs_tail():
    far = ProductPoint.of(H2Point(5.0, 1.0))
    near = ProductPoint.of(H2Point(0.0, 1e-9))
    xi = ProductBoundaryPoint.of(BoundaryPointH2.finite(0.0))
    assert not converges_to([near] * 10 + [far], xi, 1e-6)
    assert converges_to([far] * 10 + [near] * 4, xi, 1e-6)


def test_to_list_shapes():
    g = ProductIsometry.identity(3)
    assert np.array(g.to_list()).shape == (3, 2, 2)
    assert ProductPoint.basepoint(3).to_list() == [[0.0, 1.0]] * 3
