"""
Verifiers for the hyperbolic plane kernel: Busemann cocycles, equivariance,
projections, translation lengths and shadows
"""
import math

from ..geometry.hyperbolic_plane import (
    QUOTED_IDEAL_TRIANGLE_HEIGHT,
    H2Point,
    apply_isometry,
    busemann,
    busemann_limit,
    dist,
    geodesic_through,
    project_to_geodesic,
    right_angle_ideal_triangle_height,
    shadow_contains,
    translation_length_axis,
)
from ..models import LemmaId
from .base import Outcome, Verifier, register
from .sampling import (
    near_axis_loxodromic,
    perturbed_boundary,
    random_boundary,
    random_geodesic,
    random_isometry,
    random_point,
)

ORIGIN = H2Point(0.0, 1.0)


@register
class CocycleVerifier(Verifier):
    lemma_id = LemmaId.COCYCLE
    description = "beta(x,z) = beta(x,y) + beta(y,z) and |beta(x,y)| <= d(x,y)"
    defaults = {'cocycle': 1e-9, 'lipschitz': 1e-12}

    def check(self, rng, tol):
        xi = random_boundary(rng)
        x, y, z = random_point(rng), random_point(rng), random_point(rng)
        defect = abs(busemann(xi, x, z) - busemann(xi, x, y) - busemann(xi, y, z))
        d = dist(x, y)
        excess = abs(busemann(xi, x, y)) - d
        failed = defect > tol['cocycle'] or excess > tol['lipschitz'] * max(1.0, d)
        return Outcome(failed, defect, {
            'xi': xi.to_json(),
            'x': x.to_list(),
            'y': y.to_list(),
            'z': z.to_list(),
            'lipschitz_excess': excess,
        })


@register
class BusemannLimitVerifier(Verifier):
    lemma_id = LemmaId.BUSEMANN_LIMIT
    description = "closed-form Busemann function against the ray limit at t = 40"
    defaults = {'limit': 1e-6}

    def check(self, rng, tol):
        xi = random_boundary(rng)
        x, y = random_point(rng), random_point(rng)
        gap = abs(busemann(xi, x, y) - busemann_limit(xi, x, y))
        return Outcome(gap > tol['limit'], gap, {
            'xi': xi.to_json(), 'x': x.to_list(), 'y': y.to_list(),
        })


@register
class EquivarianceVerifier(Verifier):
    lemma_id = LemmaId.EQUIVARIANCE
    description = "d and beta are invariant under isometries"
    defaults = {'distance': 1e-10, 'busemann': 1e-9}

    def check(self, rng, tol):
        g = random_isometry(rng)
        xi = random_boundary(rng)
        x, y = random_point(rng), random_point(rng)
        gx, gy = apply_isometry(g, x), apply_isometry(g, y)
        distance_gap = abs(dist(gx, gy) - dist(x, y))
        busemann_gap = abs(busemann(apply_isometry(g, xi), gx, gy) - busemann(xi, x, y))
        failed = distance_gap > tol['distance'] or busemann_gap > tol['busemann']
        return Outcome(failed, max(distance_gap, busemann_gap), {
            'g': g.to_list(),
            'xi': xi.to_json(),
            'x': x.to_list(),
            'y': y.to_list(),
            'distance_gap': distance_gap,
            'busemann_gap': busemann_gap,
        })


@register
class ProjectionLipschitzVerifier(Verifier):
    lemma_id = LemmaId.PROJECTION_LIPSCHITZ
    description = "nearest-point projection onto a geodesic is 1-Lipschitz"
    defaults = {'lipschitz': 1e-10}

    def check(self, rng, tol):
        geodesic = random_geodesic(rng)
        x, y = random_point(rng), random_point(rng)
        fx, _ = project_to_geodesic(geodesic, x)
        fy, _ = project_to_geodesic(geodesic, y)
        excess = dist(fx, fy) - dist(x, y)
        return Outcome(excess > tol['lipschitz'], excess, {
            'geodesic': [geodesic.start.to_json(), geodesic.end.to_json()],
            'x': x.to_list(),
            'y': y.to_list(),
        })


@register
class TranslationLimitVerifier(Verifier):
    lemma_id = LemmaId.TRANSLATION_LIMIT
    description = "d(o, g^n o)/n approaches the translation length"
    defaults = {'limit': 1e-3, 'n': 200}

    def check(self, rng, tol):
        g = near_axis_loxodromic(rng)
        n = int(tol['n'])
        tau = translation_length_axis(g).tau
        rate = dist(ORIGIN, apply_isometry(g.power(n), ORIGIN)) / n
        gap = abs(rate - tau)
        return Outcome(gap > tol['limit'], gap, {'g': g.to_list(), 'tau': tau, 'rate': rate})


@register
class ShadowBusemannVerifier(Verifier):
    lemma_id = LemmaId.SHADOW_BUSE
    description = "xi in O_R(x, y) forces d(x,y) - 2R <= beta_xi(x,y) <= d(x,y)"
    defaults = {'sandwich': 1e-9}

    def check(self, rng, tol):
        x, y = random_point(rng), random_point(rng)
        R = float(rng.uniform(0.2, 3.0))
        scale = float(rng.uniform(0.01, 0.5))
        xi = perturbed_boundary(rng, geodesic_through(x, y).end, scale=scale)
        if not shadow_contains(x, y, R, xi):
            return Outcome(False, 0.0, {'in_shadow': False})
        d, beta = dist(x, y), busemann(xi, x, y)
        violation = max(d - 2.0 * R - beta, beta - d, 0.0)
        return Outcome(violation > tol['sandwich'], violation, {
            'in_shadow': True,
            'x': x.to_list(),
            'y': y.to_list(),
            'xi': xi.to_json(),
            'R': R,
            'busemann': beta,
            'distance': d,
        })


@register
class AppendixConstantVerifier(Verifier):
    lemma_id = LemmaId.APPENDIX_CONST
    description = "height of the right-angle vertex of the (pi/2, 0, 0) triangle"
    defaults = {'quoted': 1e-4, 'height': 1e-9, 'quoted_target': 0.60346}

    def check(self, rng, tol):
        height = right_angle_ideal_triangle_height()
        exact = math.log(1.0 + math.sqrt(2.0))
        quoted_gap = abs(QUOTED_IDEAL_TRIANGLE_HEIGHT - tol['quoted_target'])
        height_gap = abs(height - exact)
        failed = quoted_gap > tol['quoted'] or height_gap > tol['height']
        return Outcome(failed, quoted_gap, {
            'value': QUOTED_IDEAL_TRIANGLE_HEIGHT,
            'quoted_target': tol['quoted_target'],
            'computed_height': height,
            'exact_height': exact,
            'discrepancy': height - QUOTED_IDEAL_TRIANGLE_HEIGHT,
        })
