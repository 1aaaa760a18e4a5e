"""
Finite-ball diagnostics of transversality: divergence, antipodality, shadows
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..config import get_settings
from ..errors import InputError, InsufficientGrowthData
from ..geometry.hyperbolic_plane import homogeneous_angle, segment_distance
from .ball import Ball, enumerate_ball
from .group_spec import GroupSpec, LETTER_SEPARATOR
from .projections import jordan_from_traces

logger = logging.getLogger(__name__)

MAX_WITNESSES = 20


@dataclass
class TransversalityReport:
    """Evidence for (or a falsification of) transversality on one ball"""
    divergent_ok: bool
    antipodal_ok: bool
    witnesses: List[Dict] = field(default_factory=list)
    bucket_minima: List[float] = field(default_factory=list)
    growth_floor: float = 0.0

    def to_dict(self) -> Dict:
        return {
            'divergent_ok': self.divergent_ok,
            'antipodal_ok': self.antipodal_ok,
            'witnesses': self.witnesses,
            'bucket_minima': self.bucket_minima,
            'growth_floor': self.growth_floor,
        }


@dataclass
class DivFactorsReport:
    """For each R, the threshold R' past which every factor displacement exceeds R.

    ``history`` holds the thresholds on each ball of ``lengths``; the property
    holds when none of them grows over the last step.
    """
    radii: List[float]
    lengths: List[int]
    thresholds: List[float]
    history: List[List[float]]
    growth: List[float]
    holds: bool

    def to_dict(self) -> Dict:
        return {
            'radii': self.radii,
            'lengths': self.lengths,
            'thresholds': self.thresholds,
            'history': self.history,
            'growth': self.growth,
            'holds': self.holds,
        }


@dataclass
class ComponentwiseShadowReport:
    """Largest factor shadow radius needed when factor 1 lies in O_R"""
    R: float
    pairs_tested: int
    pairs_in_shadow: int
    max_radius: float

    def to_dict(self) -> Dict:
        return {
            'R': self.R,
            'pairs_tested': self.pairs_tested,
            'pairs_in_shadow': self.pairs_in_shadow,
            'max_radius': self.max_radius,
        }


def attracting_angles(mats: np.ndarray) -> np.ndarray:
    """Cayley angles of the attracting fixed points, NaN for non-loxodromic factors"""
    a, b, c, d = mats[..., 0, 0], mats[..., 0, 1], mats[..., 1, 0], mats[..., 1, 1]
    tr = a + d
    root = np.sqrt(np.maximum(tr * tr - 4.0, 0.0))
    lam = np.sign(tr) * (np.abs(tr) + root) / 2.0
    first0, first1 = b, lam - a
    second0, second1 = lam - d, c
    use_first = np.hypot(first0, first1) >= np.hypot(second0, second1)
    v0 = np.where(use_first, first0, second0)
    v1 = np.where(use_first, first1, second1)
    angles = homogeneous_angle(v0, v1)
    loxodromic = ~np.isnan(jordan_from_traces(tr))
    return np.where(loxodromic, angles, np.nan)


def _circular_gap(x, y):
    gap = np.abs(x - y) % (2 * np.pi)
    return np.minimum(gap, 2 * np.pi - gap)


def _antipodal_witnesses(angles: np.ndarray, words: List[str], tol: float) -> List[Dict]:
    """Pairs with distinct attracting tuples sharing a component, by sort and sweep"""
    witnesses: List[Dict] = []
    n, r = angles.shape
    for i in range(r):
        order = np.argsort(angles[:, i])
        sorted_angles = angles[order, i]
        # wrap the first elements around the circle once
        for pos in range(n):
            j = pos + 1
            while True:
                other = j % n
                if other == pos or j - pos >= n:
                    break
                gap = _circular_gap(sorted_angles[pos], sorted_angles[other])
                if gap > tol:
                    break
                first, second = order[pos], order[other]
                if not np.all(_circular_gap(angles[first], angles[second]) <= tol):
                    witnesses.append({
                        'first': words[first],
                        'second': words[second],
                        'factor': i,
                        'gap': float(gap),
                    })
                    if len(witnesses) >= MAX_WITNESSES:
                        return witnesses
                j += 1
    return witnesses


def transversality_check(
    spec: GroupSpec, L: int, tol: Optional[float] = None, workers: int = 1, ball: Ball = None
) -> TransversalityReport:
    """Divergence and antipodality evidence on the L-ball"""
    if L < 2:
        raise InsufficientGrowthData(f"Transversality check needs L >= 2, got {L}")
    settings = get_settings()
    tol = settings.ANTIPODAL_TOL if tol is None else tol
    ball = ball.truncate(L) if ball is not None else enumerate_ball(spec, L, workers)

    smallest = ball.cartan.min(axis=1)
    minima = [float(smallest[ball.sphere(n)].min()) for n in range(1, L + 1) if ball.sphere(n).size]
    generator_scale = float(ball.cartan[ball.sphere(1)].max(axis=1).min())
    floors = [settings.GROWTH_FLOOR * n * generator_scale for n in range(1, len(minima) + 1)]
    nondecreasing = all(b >= a - settings.EQUALITY_TOL for a, b in zip(minima, minima[1:]))
    above_floor = all(m >= f for m, f in zip(minima, floors)) and generator_scale > 0
    divergent_ok = bool(nondecreasing and above_floor)

    angles = attracting_angles(ball.mats)
    joint = np.flatnonzero(~np.isnan(angles).any(axis=1))
    witnesses = _antipodal_witnesses(angles[joint], [ball.words[i] for i in joint], tol)
    if not divergent_ok:
        logger.info("divergence proxy failed: bucket minima %s", minima)

    return TransversalityReport(
        divergent_ok=divergent_ok,
        antipodal_ok=not witnesses,
        witnesses=witnesses,
        bucket_minima=minima,
        growth_floor=settings.GROWTH_FLOOR * generator_scale,
    )


def _div_threshold(cartan: np.ndarray, R: float) -> float:
    small = cartan.min(axis=1) <= R
    return float(cartan[small, 0].max()) if small.any() else 0.0


def div_factors_report(
    spec: GroupSpec, L: int, radii: Sequence[float] = (2.0, 4.0, 8.0), workers: int = 1,
    ball: Ball = None, step: Optional[int] = None,
) -> DivFactorsReport:
    """Smallest R' with d_1 > R' forcing d_i > R in every factor, per R.

    The thresholds are taken on the balls of radius L - 2*step, L - step and L;
    a threshold still growing over the last step means the ball has not yet
    seen every element that is small in some factor.
    """
    settings = get_settings()
    step = settings.DIV_FACTORS_STEP if step is None else step
    if step < 1:
        raise InputError(f"Stability step must be positive, got {step}")
    lengths = [n for n in (L - 2 * step, L - step, L) if n >= 1]
    if len(lengths) < 2:
        raise InsufficientGrowthData(f"Threshold stability needs L >= {step + 1}, got {L}")
    ball = ball.truncate(L) if ball is not None else enumerate_ball(spec, L, workers)

    history = []
    for n in lengths:
        count = int(np.searchsorted(ball.lengths, n, side='right'))
        cartan = ball.cartan[1:count]
        history.append([_div_threshold(cartan, R) for R in radii])
    growth = [later - earlier for earlier, later in zip(history[-2], history[-1])]
    holds = all(g <= settings.DIV_STABILITY_TOL for g in growth)
    if not holds:
        logger.info("div-factors thresholds still growing at L=%d: %s", L, growth)
    return DivFactorsReport(list(map(float, radii)), lengths, history[-1], history, growth, holds)


def componentwise_shadow_report(
    spec: GroupSpec, L: int, R: float, workers: int = 1, ball: Ball = None
) -> ComponentwiseShadowReport:
    """Shadow radii needed in every factor for prefix pairs (g, h) with h_1 x_1 in O_R"""
    ball = ball.truncate(L) if ball is not None else enumerate_ball(spec, L, workers)
    index = ball.word_index
    g_idx, h_idx = [], []
    for h, word in enumerate(ball.words[1:], start=1):
        letters = word.split(LETTER_SEPARATOR)
        for k in range(1, len(letters)):
            g = index.get(LETTER_SEPARATOR.join(letters[:k]))
            if g is not None:
                g_idx.append(g)
                h_idx.append(h)
    if not g_idx:
        return ComponentwiseShadowReport(R, 0, 0, 0.0)

    g_arr, h_arr = np.array(g_idx), np.array(h_idx)
    z0 = np.array([p.z for p in spec.basepoint])
    distances = segment_distance(z0[None, :], ball.orbit[h_arr], ball.orbit[g_arr])
    inside = distances[:, 0] < R
    max_radius = float(distances[inside].max()) if inside.any() else 0.0
    return ComponentwiseShadowReport(R, len(g_arr), int(inside.sum()), max_radius)
