"""
Conical and guided limit points, witnessed by elements of a word ball
"""
import logging
from typing import List

import numpy as np

from ..errors import ConstantTooSmall, InputError, NoWitnessInBall
from ..geometry.alignment import axis_constant
from ..geometry.hyperbolic_plane import (
    SegmentH2,
    apply_isometry,
    boundary_homogeneous,
    boundary_values,
    busemann_array,
    dist_array,
    geodesic_from_point,
    mobius_array,
    mobius_boundary,
)
from ..geometry.product_space import ProductBoundaryPoint, check_rank
from .ball import Ball, GroupElement, enumerate_ball
from .group_spec import GroupSpec
from .projections import jordan_projection

logger = logging.getLogger(__name__)


def _ray_distances(xi: ProductBoundaryPoint, spec: GroupSpec, ball: Ball) -> np.ndarray:
    """Distance from g z0 to the ray [z0, xi) in every factor, array (N, r)"""
    distances = np.empty(ball.orbit.shape)
    for i, (x0, end) in enumerate(zip(spec.basepoint, xi)):
        geodesic = geodesic_from_point(x0, end)
        t0 = geodesic.param_of(x0)
        params = np.maximum(geodesic.params_of(ball.orbit[:, i]), t0)
        distances[:, i] = dist_array(ball.orbit[:, i], geodesic.points_at(params))
    return distances


def conical_witness(
    xi: ProductBoundaryPoint, spec: GroupSpec, L: int, R: float, workers: int = 1,
    ball: Ball = None,
) -> List[GroupElement]:
    """Ball elements g with xi in the product shadow O_R(z0, g z0)"""
    if R <= 0:
        raise InputError(f"Shadow radius must be positive, got {R}")
    check_rank(xi, spec.basepoint)
    ball = ball.truncate(L) if ball is not None else enumerate_ball(spec, L, workers)
    inside = (_ray_distances(xi, spec, ball) < R).all(axis=1)
    witnesses = [ball[i] for i in np.flatnonzero(inside)]
    logger.debug("%d of %d ball elements shadow %s at R=%.3f",
                 len(witnesses), len(ball), xi.to_json(), R)
    return witnesses


def conical_busemann_witness(
    xi: ProductBoundaryPoint, spec: GroupSpec, L: int, K: float, workers: int = 1,
    ball: Ball = None,
) -> List[GroupElement]:
    """Ball elements with beta_xi(z0, g z0) >= kappa(z0, g z0) - K in every factor"""
    check_rank(xi, spec.basepoint)
    ball = ball.truncate(L) if ball is not None else enumerate_ball(spec, L, workers)
    z0 = np.array([p.z for p in spec.basepoint])
    beta = busemann_array(boundary_values(xi)[None, :], z0[None, :], ball.orbit)
    keep = (beta >= ball.cartan - K).all(axis=1)
    return [ball[i] for i in np.flatnonzero(keep)]


def guided_witness(
    xi: ProductBoundaryPoint, phi: GroupElement, K: float, n: int, spec: GroupSpec, L: int,
    workers: int = 1, ball: Ball = None,
) -> GroupElement:
    """First h in the ball with (x0, h[x0, phi^n x0], xi) K-aligned in factor 1.

    Both sides are moved by h^-1, so every candidate is tested against the
    fixed segment [x0, phi^n x0].
    """
    if n < 1:
        raise InputError(f"Guided witness needs n >= 1, got {n}")
    check_rank(xi, spec.basepoint)
    jordan_projection(phi)

    x0 = spec.basepoint[0]
    C = axis_constant(phi.matrix[0], x0, kmax=n).C
    if K < C:
        raise ConstantTooSmall(f"K = {K} is below the axis constant {C:.4f} of {phi.word}")

    seg = SegmentH2(x0, apply_isometry(phi.matrix[0].power(n), x0))
    geodesic, t0, length = seg.geodesic, seg.t0, seg.length

    ball = ball.truncate(L) if ball is not None else enumerate_ball(spec, L, workers)
    inverse = ball.inverse_mats[:, 0]
    starts = mobius_array(inverse, x0.z)
    left = np.clip(geodesic.params_of(starts) - t0, 0.0, length)

    ends = mobius_boundary(inverse, boundary_values([xi[0]])[0])
    v0, v1 = boundary_homogeneous(ends)
    right = length - np.clip(geodesic.boundary_params(v0, v1) - t0, 0.0, length)

    aligned = np.flatnonzero(np.maximum(left, right) < K)
    if not aligned.size:
        raise NoWitnessInBall(
            f"No element of the {L}-ball guides {xi.to_json()} along {phi.word}^{n} at K = {K}"
        )
    return ball[int(aligned[0])]
