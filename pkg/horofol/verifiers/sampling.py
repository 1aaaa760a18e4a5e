"""
Seeded random configurations for the verifiers
"""
import math

import numpy as np

from ..geometry.alignment import points_off_axis
from ..geometry.hyperbolic_plane import (
    INFINITY,
    BoundaryPointH2,
    GeodesicH2,
    H2Point,
    IsometryH2,
    angle_to_boundary,
    apply_isometry,
)
from ..geometry.product_space import ProductIsometry

IM_RANGE = (0.05, 20.0)
INFINITY_SHARE = 0.1


def random_point(rng: np.random.Generator) -> H2Point:
    """Gaussian half-plane coordinates, im clipped to IM_RANGE"""
    re = rng.normal(0.0, 2.0)
    im = float(np.clip(abs(rng.normal(1.0, 2.0)), *IM_RANGE))
    return H2Point(float(re), im)


def random_boundary(rng: np.random.Generator) -> BoundaryPointH2:
    if rng.random() < INFINITY_SHARE:
        return INFINITY
    return BoundaryPointH2.finite(float(rng.normal(0.0, 3.0)))


def random_geodesic(rng: np.random.Generator) -> GeodesicH2:
    start = random_boundary(rng)
    end = random_boundary(rng)
    while end == start:
        end = random_boundary(rng)
    return GeodesicH2(start, end)


def random_isometry(rng: np.random.Generator, spread: float = 2.0) -> IsometryH2:
    """rotation . translation . rotation, every element of PSL(2, R) has this form"""
    first = IsometryH2.rotation(rng.uniform(0.0, 2.0 * math.pi))
    shift = IsometryH2.translation(rng.uniform(-spread, spread))
    second = IsometryH2.rotation(rng.uniform(0.0, 2.0 * math.pi))
    return first @ shift @ second


def random_product_isometry(
    rng: np.random.Generator, r: int, spread: float = 2.0
) -> ProductIsometry:
    return ProductIsometry(tuple(random_isometry(rng, spread) for _ in range(r)))


def point_at_distance(x: H2Point, d: float, theta: float) -> H2Point:
    """Point at distance d from x in direction theta"""
    w = complex(IsometryH2.rotation(theta)(H2Point(0.0, math.exp(d))).z)
    return H2Point(x.re + x.im * w.real, x.im * w.imag)


def near_axis_loxodromic(
    rng: np.random.Generator, tau_range=(0.1, 3.0), max_offset: float = 0.3
) -> IsometryH2:
    """Loxodromic whose axis passes within max_offset of i"""
    tau = rng.uniform(*tau_range)
    quarter = IsometryH2.rotation(math.pi / 2.0)
    across = quarter @ IsometryH2.translation(rng.uniform(0.0, max_offset)) @ quarter.inverse()
    k = IsometryH2.rotation(rng.uniform(0.0, 2.0 * math.pi)) @ across
    return IsometryH2.translation(tau).conjugate_by(k)


def random_loxodromic(
    rng: np.random.Generator, tau_range=(0.1, 3.0), spread: float = 1.5
) -> IsometryH2:
    translation = IsometryH2.translation(rng.uniform(*tau_range))
    return translation.conjugate_by(random_isometry(rng, spread))


def perturbed_boundary(
    rng: np.random.Generator, xi: BoundaryPointH2, scale: float = 0.2
) -> BoundaryPointH2:
    """Boundary point at a Gaussian angular offset from xi"""
    return angle_to_boundary(float(np.mod(xi.angle + rng.normal(0.0, scale), 2.0 * math.pi)))


def axis_configuration(rng: np.random.Generator, params, offsets, spread: float = 2.0):
    """Points off the imaginary axis at the given feet and offsets, moved by one random isometry"""
    g = random_isometry(rng, spread)
    zs = points_off_axis(np.asarray(params, dtype=float), np.asarray(offsets, dtype=float))
    points = [apply_isometry(g, H2Point.from_complex(complex(z))) for z in np.atleast_1d(zs)]
    axis = GeodesicH2(apply_isometry(g, BoundaryPointH2.finite(0.0)), apply_isometry(g, INFINITY))
    return points, axis
