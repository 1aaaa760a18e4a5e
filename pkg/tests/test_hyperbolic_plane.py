"""
Tests for the upper half-plane kernel
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from horofol.errors import (
    CoincidentEndpoints,
    DegenerateSegment,
    InvalidIsometry,
    InvalidPoint,
    NotLoxodromic,
)
from horofol.geometry.hyperbolic_plane import (
    INFINITY,
    QUOTED_IDEAL_TRIANGLE_HEIGHT,
    BoundaryPointH2,
    GeodesicH2,
    H2Point,
    IsometryH2,
    IsometryType,
    RayH2,
    SegmentH2,
    angle_to_boundary,
    apply_isometry,
    are_independent,
    busemann,
    busemann_array,
    busemann_limit,
    classify_isometry,
    dist,
    distance_to_path,
    fixed_points,
    geodesic_between,
    geodesic_through,
    hausdorff_distance,
    min_displacement,
    project_to_geodesic,
    ray_endpoints,
    right_angle_ideal_triangle_height,
    segment_distance,
    shadow_contains,
    translation_length_axis,
)

points = st.builds(
    H2Point,
    st.floats(min_value=-5.0, max_value=5.0),
    st.floats(min_value=0.1, max_value=10.0),
)
boundary_points = st.one_of(
    st.just(INFINITY),
    st.floats(min_value=-5.0, max_value=5.0).map(BoundaryPointH2.finite),
)
angles = st.floats(min_value=0.0, max_value=2.0 * math.pi)


def _finite(x):
    return BoundaryPointH2.finite(x)


class TestPointsAndDistance:
    """Points, the metric and isometries"""

    def test_distance_example(self):
        assert dist(H2Point(0.0, 1.0), H2Point(1.0, 1.0)) == pytest.approx(0.962424, abs=1e-6)

    def test_vertical_distance_is_log_ratio(self, origin):
        assert dist(origin, H2Point(0.0, math.e ** 3)) == pytest.approx(3.0)

    @pytest.mark.parametrize("re, im", [(0.0, 0.0), (1.0, -2.0), (math.nan, 1.0), (0.0, math.inf)])
    def test_invalid_points_rejected(self, re, im):
        with pytest.raises(InvalidPoint):
            H2Point(re, im)

    def test_non_unimodular_matrix_rejected(self):
        with pytest.raises(InvalidIsometry):
            IsometryH2(2.0, 0.0, 0.0, 1.0)

    def test_normalized_from_scales_to_determinant_one(self):
        g = IsometryH2.normalized_from([[2.0, 0.0], [0.0, 2.0]])
        assert g.equals(IsometryH2.identity())

    def test_psl_sign_ambiguity(self):
        assert IsometryH2(-1.0, 0.0, 0.0, -1.0).equals(IsometryH2.identity())

    def test_translation_moves_along_imaginary_axis(self, origin):
        image = apply_isometry(IsometryH2.translation(2.0), origin)
        assert image.re == pytest.approx(0.0)
        assert image.im == pytest.approx(math.e ** 2)

    def test_rotation_fixes_i(self, origin):
        image = IsometryH2.rotation(1.3)(origin)
        assert dist(image, origin) < 1e-12

    def test_boundary_action(self):
        g = IsometryH2.translation(1.0)
        assert apply_isometry(g, INFINITY).is_infinity
        assert apply_isometry(g, _finite(1.0)).value == pytest.approx(math.e)

    @settings(max_examples=60, deadline=None)
    @given(points, points, angles, st.floats(min_value=-3.0, max_value=3.0), angles)
    def test_isometries_preserve_distance(self, x, y, first, shift, second):
        g = IsometryH2.rotation(first) @ IsometryH2.translation(shift) @ IsometryH2.rotation(second)
        assert dist(g(x), g(y)) == pytest.approx(dist(x, y), abs=1e-8)


class TestClassification:
    """Trace classification, fixed points and translation lengths"""

    def test_kinds(self):
        assert classify_isometry(IsometryH2.identity()) is IsometryType.IDENTITY
        assert classify_isometry(IsometryH2.rotation(0.5)) is IsometryType.ELLIPTIC
        assert classify_isometry(IsometryH2(1.0, 1.0, 0.0, 1.0)) is IsometryType.PARABOLIC
        assert classify_isometry(IsometryH2.translation(0.5)) is IsometryType.LOXODROMIC

    def test_translation_fixed_points(self):
        attracting, repelling = fixed_points(IsometryH2.translation(1.0))
        assert attracting.is_infinity
        assert repelling.value == pytest.approx(0.0)

    def test_translation_length_and_axis(self):
        axis = translation_length_axis(IsometryH2.translation(1.0))
        assert axis.tau == pytest.approx(1.0)
        assert axis.axis.start.value == pytest.approx(0.0)
        assert axis.axis.end.is_infinity

    def test_parabolic_fixed_point(self):
        (fixed,) = fixed_points(IsometryH2(1.0, 1.0, 0.0, 1.0))
        assert fixed.is_infinity

    def test_translation_length_needs_loxodromic(self):
        with pytest.raises(NotLoxodromic):
            translation_length_axis(IsometryH2.rotation(1.0))
        assert min_displacement(IsometryH2.rotation(1.0)) == 0.0

    @settings(max_examples=50, deadline=None)
    @given(st.floats(min_value=0.1, max_value=5.0), angles)
    def test_conjugation_keeps_translation_length(self, t, theta):
        g = IsometryH2.translation(t).conjugate_by(IsometryH2.rotation(theta))
        assert translation_length_axis(g).tau == pytest.approx(t, abs=1e-9)

    def test_independence(self):
        g = IsometryH2.translation(1.0)
        h = g.conjugate_by(IsometryH2.rotation(math.pi / 2.0))
        assert are_independent(g, h)
        assert not are_independent(g, g.power(3))


class TestGeodesicsAndProjections:
    """Geodesics, rays, segments and nearest-point projections"""

    def test_coincident_endpoints_rejected(self):
        with pytest.raises(CoincidentEndpoints):
            GeodesicH2(INFINITY, INFINITY)

    def test_geodesic_between_picks_the_path_type(self):
        x, y = H2Point(0.0, 1.0), H2Point(1.0, 2.0)
        assert isinstance(geodesic_between(x, y), SegmentH2)
        assert isinstance(geodesic_between(_finite(-1.0), _finite(1.0)), GeodesicH2)
        ray = geodesic_between(_finite(2.0), x)
        assert isinstance(ray, RayH2)
        assert ray.end == _finite(2.0)
        assert dist(ray.base, x) == pytest.approx(0.0, abs=1e-9)
        with pytest.raises(CoincidentEndpoints):
            geodesic_between(INFINITY, INFINITY)

    def test_projection_onto_imaginary_axis(self):
        axis = GeodesicH2(_finite(0.0), INFINITY)
        foot, t = project_to_geodesic(axis, H2Point(-1.0, 1.0))
        assert foot.re == pytest.approx(0.0, abs=1e-12)
        assert foot.im == pytest.approx(math.sqrt(2.0))
        assert t == pytest.approx(math.log(math.sqrt(2.0)))

    def test_projection_onto_unit_semicircle(self):
        circle = GeodesicH2(_finite(-1.0), _finite(1.0))
        foot, t = project_to_geodesic(circle, H2Point(0.0, 3.0))
        assert foot.re == pytest.approx(0.0, abs=1e-12)
        assert foot.im == pytest.approx(1.0)
        assert t == pytest.approx(0.0, abs=1e-12)

    def test_geodesics_run_from_start_to_end(self):
        circle = GeodesicH2(_finite(-1.0), _finite(1.0))
        assert circle.point_at(-30.0).re == pytest.approx(-1.0, abs=1e-9)
        assert circle.point_at(30.0).re == pytest.approx(1.0, abs=1e-9)
        assert dist(circle.point_at(0.0), circle.point_at(2.5)) == pytest.approx(2.5)

    @pytest.mark.parametrize("start, end", [
        (_finite(-1.0), _finite(1.0)),
        (_finite(0.0), INFINITY),
        (INFINITY, _finite(2.0)),
        (_finite(3.0), _finite(-2.0)),
    ])
    def test_projection_matches_minimization(self, start, end, rng):
        geodesic = GeodesicH2(start, end)
        for _ in range(10):
            x = H2Point(float(rng.normal(0.0, 2.0)), float(rng.uniform(0.2, 4.0)))
            foot, t = project_to_geodesic(geodesic, x)
            oracle = minimize_scalar(
                lambda s: dist(x, geodesic.point_at(s)),
                bounds=(t - 5.0, t + 5.0),
                method="bounded",
                options={"xatol": 1e-10},
            )
            assert dist(x, foot) <= oracle.fun + 1e-9
            assert t == pytest.approx(oracle.x, abs=1e-4)

    def test_geodesic_through_contains_both_points(self):
        x, y = H2Point(-1.0, 0.5), H2Point(2.0, 1.5)
        geodesic = geodesic_through(x, y)
        assert geodesic.contains(x) and geodesic.contains(y)
        assert geodesic.param_of(y) > geodesic.param_of(x)

    def test_ray_endpoint_through_point(self, origin):
        end = ray_endpoints(origin.z, complex(1.0, 1.0))
        assert float(end) == pytest.approx((1.0 + math.sqrt(5.0)) / 2.0)
        assert geodesic_through(origin, H2Point(1.0, 1.0)).end.value == pytest.approx(float(end))
        assert np.isinf(ray_endpoints(origin.z, 2j))

    def test_ray_points(self, origin):
        ray = RayH2.from_point(origin, INFINITY)
        assert ray.point_at(1.0).im == pytest.approx(math.e)
        assert dist(ray.base, origin) < 1e-12

    def test_degenerate_segment(self, origin):
        seg = SegmentH2(origin, origin)
        assert seg.is_degenerate
        with pytest.raises(DegenerateSegment):
            seg.geodesic
        foot, s = project_to_geodesic(seg, H2Point(1.0, 1.0))
        assert foot == origin and s == 0.0

    def test_segment_projection_is_clamped(self, origin):
        seg = SegmentH2(origin, H2Point(0.0, math.e))
        foot, s = project_to_geodesic(seg, H2Point(0.0, 10.0))
        assert s == pytest.approx(1.0)
        assert foot.im == pytest.approx(math.e)

    def test_segment_distance_agrees_with_projection(self, rng):
        for _ in range(25):
            a = H2Point(float(rng.normal()), float(rng.uniform(0.2, 3.0)))
            b = H2Point(float(rng.normal()), float(rng.uniform(0.2, 3.0)))
            p = H2Point(float(rng.normal()), float(rng.uniform(0.2, 3.0)))
            expected = distance_to_path(SegmentH2(a, b), p)
            assert float(segment_distance(a.z, b.z, p.z)) == pytest.approx(expected, abs=1e-8)

    def test_hausdorff_distance_of_a_segment_with_itself(self, origin):
        seg = SegmentH2(origin, H2Point(2.0, 0.5))
        assert hausdorff_distance(seg, seg.reversed()) < 1e-6

    def test_boundary_angles(self):
        assert INFINITY.angle == pytest.approx(0.0)
        assert angle_to_boundary(0.0).is_infinity
        assert angle_to_boundary(_finite(1.5).angle).value == pytest.approx(1.5)
        assert _finite(2.0).close_to(_finite(2.0 + 1e-12), 1e-9)


class TestBusemann:
    """Closed-form Busemann cocycles"""

    def test_vertical_examples(self, origin):
        assert busemann(INFINITY, origin, H2Point(0.0, 2.0)) == pytest.approx(math.log(2.0))
        assert busemann(_finite(0.0), origin, H2Point(0.0, 2.0)) == pytest.approx(-math.log(2.0))

    def test_limit_oracle(self, origin):
        y = H2Point(0.0, 2.0)
        assert busemann_limit(_finite(0.0), origin, y) == pytest.approx(-math.log(2.0), abs=1e-8)

    def test_array_form_matches_scalar(self):
        xi = np.array([np.inf, 0.5, -2.0])
        x = np.array([1j, 1 + 2j, -1 + 0.5j])
        y = np.array([2j, 0.3 + 1j, 3 + 3j])
        expected = [
            busemann(INFINITY, H2Point(0.0, 1.0), H2Point(0.0, 2.0)),
            busemann(_finite(0.5), H2Point(1.0, 2.0), H2Point(0.3, 1.0)),
            busemann(_finite(-2.0), H2Point(-1.0, 0.5), H2Point(3.0, 3.0)),
        ]
        assert busemann_array(xi, x, y) == pytest.approx(expected)

    @settings(max_examples=80, deadline=None)
    @given(boundary_points, points, points, points)
    def test_cocycle_identity(self, xi, x, y, z):
        defect = busemann(xi, x, z) - busemann(xi, x, y) - busemann(xi, y, z)
        assert abs(defect) < 1e-9

    @settings(max_examples=80, deadline=None)
    @given(boundary_points, points, points)
    def test_one_lipschitz(self, xi, x, y):
        assert abs(busemann(xi, x, y)) <= dist(x, y) + 1e-9

    @settings(max_examples=40, deadline=None)
    @given(boundary_points, points, points)
    def test_closed_form_matches_limit(self, xi, x, y):
        assert busemann(xi, x, y) == pytest.approx(busemann_limit(xi, x, y), abs=1e-6)


class TestShadows:
    """Shadows and the ideal triangle constant"""

    def test_vertical_shadow(self, origin):
        above = H2Point(0.0, 2.0)
        assert shadow_contains(origin, above, 0.1, INFINITY)
        assert not shadow_contains(origin, above, 0.5, _finite(0.0))

    def test_interior_shadow(self, origin):
        assert shadow_contains(origin, H2Point(0.0, 2.0), 0.1, H2Point(0.0, 5.0))
        assert not shadow_contains(origin, H2Point(0.0, 2.0), 0.1, H2Point(0.0, 1.5))

    def test_ideal_triangle_height(self):
        assert right_angle_ideal_triangle_height() == pytest.approx(
            math.log(1.0 + math.sqrt(2.0)), abs=1e-12
        )

    def test_quoted_constant(self):
        assert QUOTED_IDEAL_TRIANGLE_HEIGHT == pytest.approx(0.60346, abs=1e-4)
