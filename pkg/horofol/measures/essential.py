"""
Witnesses for values of the essential subgroup of a conformal density
"""
import logging
from typing import Sequence, Union

import numpy as np

from ..errors import DimensionMismatch, InputError, NoWitnessInBall
from ..geometry.hyperbolic_plane import busemann_array, mobius_array, mobius_boundary
from ..groups.ball import Ball, GroupElement, enumerate_ball
from ..groups.group_spec import GroupSpec
from ..groups.projections import jordan_projection
from .burger_roblin import BoxRegion
from .density import AtomicMeasure, BoundaryCell, boundary_angles, cells_mask

logger = logging.getLogger(__name__)

CellSet = Union[BoxRegion, Sequence[BoundaryCell]]


def _cells(E: CellSet) -> Sequence[BoundaryCell]:
    return E.cells if isinstance(E, BoxRegion) else E


def busemann_deviation(
    nu: AtomicMeasure, spec: GroupSpec, h: np.ndarray, a: Sequence[float]
) -> np.ndarray:
    """||beta_xi(z0, h z0) - a||_inf for every atom xi, h given as (r, 2, 2)"""
    z0 = np.array([p.z for p in spec.basepoint])
    moved = mobius_array(h, z0)
    beta = busemann_array(nu.points, z0[None, :], moved[None, :])
    return np.abs(beta - np.asarray(a, dtype=float)[None, :]).max(axis=1)


def _conjugates(g: np.ndarray, g_inv: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """g phi g^-1 factor by factor"""
    return np.einsum('sij,sjk,skl->sil', g, phi, g_inv)


def essential_witness(
    spec: GroupSpec, nu: AtomicMeasure, E: CellSet, phi: GroupElement, a: Sequence[float],
    eps: float, L: int, workers: int = 1, ball: Ball = None,
) -> GroupElement:
    """First g in the ball for which h = g phi g^-1 returns a positive-mass part of E near a.

    An atom xi counts when xi and h^-1 xi lie in E and
    ||beta_xi(z0, h z0) - a||_inf < eps.
    """
    if eps <= 0:
        raise InputError(f"eps must be positive, got {eps}")
    if len(a) != spec.r or nu.r != spec.r:
        raise DimensionMismatch(f"Target of length {len(a)} for a group on {spec.r} factors")
    jordan_projection(phi)
    cells = _cells(E)

    in_E = cells_mask(cells, nu.angles) & (nu.weights > 0)
    support = AtomicMeasure(
        nu.points[in_E], nu.weights[in_E], nu.dimension, nu.form, nu.ball_length
    )
    if not len(support):
        raise NoWitnessInBall("E carries no atom of positive mass")

    ball = ball.truncate(L) if ball is not None else enumerate_ball(spec, L, workers)
    phi_mats = phi.matrix.matrices
    phi_inv = phi.matrix.inverse().matrices
    for index in range(len(ball)):
        g, g_inv = ball.mats[index], ball.inverse_mats[index]
        h = _conjugates(g, g_inv, phi_mats)
        close = busemann_deviation(support, spec, h, a) < eps
        if not close.any():
            continue
        h_inv = _conjugates(g, g_inv, phi_inv)
        returned = np.stack(
            [mobius_boundary(h_inv[i], support.points[:, i]) for i in range(spec.r)], axis=1
        )
        hits = close & cells_mask(cells, boundary_angles(returned))
        if hits.any():
            logger.debug("witness %s: %d atoms, mass %.3e", ball.words[index], int(hits.sum()),
                         float(support.weights[hits].sum()))
            return ball[index]
    raise NoWitnessInBall(
        f"No element of the {L}-ball realizes {list(map(float, a))} within {eps} on E"
    )
