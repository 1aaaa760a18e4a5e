"""
Alignment, contracting and squeezing machinery for geodesics in H^2 and Z
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import get_settings
from ..errors import (
    DegenerateSegment,
    InputError,
    InvalidPoint,
    NoCandidateAligns,
    NoConvergence,
    ProjectionsTooClose,
    RadiusTooSmall,
)
from .hyperbolic_plane import (
    AnyPoint,
    BoundaryPointH2,
    GeodesicH2,
    H2Point,
    IsometryH2,
    RayH2,
    SegmentH2,
    apply_isometry,
    dist,
    dist_array,
    mobius_array,
    project_to_geodesic,
    segment_distance,
    shadow_contains,
    translation_length_axis,
)
from .product_space import (
    ProductBoundaryPoint,
    ProductIsometry,
    ProductPoint,
    SegmentTuple,
    apply_product,
)

logger = logging.getLogger(__name__)


@dataclass
class AlignmentReport:
    """Defects of a one- or two-sided alignment test"""
    aligned: bool
    left_defect: float
    right_defect: float
    K: float

    def to_dict(self) -> dict:
        return {
            'aligned': self.aligned,
            'left_defect': self.left_defect,
            'right_defect': self.right_defect,
            'K': self.K,
        }


@dataclass
class ContractingDecomposition:
    """Points p, q on [x, y] with the projected-diameter bounds they achieve"""
    p: H2Point
    q: H2Point
    left_diameter: float
    right_diameter: float
    start_gap: float
    end_gap: float

    def holds(self, bound: float = 2.0, tol: Optional[float] = None) -> bool:
        tol = get_settings().CONTRACTING_TOL if tol is None else tol
        limit = bound + tol
        return max(self.left_diameter, self.right_diameter, self.start_gap, self.end_gap) <= limit


@dataclass
class SqueezeEstimate:
    """Empirical offset L(epsilon) of the squeezing property"""
    epsilon: float
    L: float
    samples: int
    worst_midpoint_distance: float
    cap_reached: bool = False
    four_point_worst: float = 0.0
    four_point_failures: int = 0

    def to_dict(self) -> dict:
        return {
            'epsilon': self.epsilon,
            'L': self.L,
            'samples': self.samples,
            'worst_midpoint_distance': self.worst_midpoint_distance,
            'cap_reached': self.cap_reached,
            'four_point_worst': self.four_point_worst,
            'four_point_failures': self.four_point_failures,
        }


@dataclass
class AxisConstant:
    """Constant C(g, axis, basepoint) certified on 1 <= k <= kmax"""
    C: float
    generator: IsometryH2
    axis: GeodesicH2
    basepoint: H2Point
    s0: float = 0.0
    orbit_height: float = 0.0
    certified: bool = True
    kmax: int = 0

    def to_dict(self) -> dict:
        return {
            'C': self.C,
            'generator': self.generator.to_list(),
            'axis': [self.axis.start.to_json(), self.axis.end.to_json()],
            'basepoint': self.basepoint.to_list(),
            's0': self.s0,
            'orbit_height': self.orbit_height,
            'certified': self.certified,
            'kmax': self.kmax,
        }


# ---------------------------------------------------------------------------
# Projections and alignment

def boundary_projection(seg: SegmentH2, xi: BoundaryPointH2) -> H2Point:
    """Limit of the projections onto seg along the ray from seg.start to xi"""
    if seg.is_degenerate:
        raise DegenerateSegment(f"Segment collapses to {seg.start}")
    settings = get_settings()
    ray = RayH2.from_point(seg.start, xi)
    t = 1.0
    previous, _ = project_to_geodesic(seg, ray.point_at(t))
    while t < settings.BOUNDARY_T_MAX:
        t *= 2.0
        try:
            foot, _ = project_to_geodesic(seg, ray.point_at(t))
        except (InvalidPoint, OverflowError, ValueError) as e:
            raise NoConvergence(f"Ray to {xi} left floating-point range at t = {t}") from e
        if dist(foot, previous) < settings.BOUNDARY_CAUCHY_TOL:
            return foot
        previous = foot
    raise NoConvergence(f"Projection of {xi} not Cauchy by t = {settings.BOUNDARY_T_MAX}")


def _foot(seg: SegmentH2, w: AnyPoint) -> H2Point:
    if isinstance(w, BoundaryPointH2):
        return boundary_projection(seg, w)
    foot, _ = project_to_geodesic(seg, w)
    return foot


def is_aligned(w: AnyPoint, seg: SegmentH2, K: float) -> AlignmentReport:
    """(w, seg) is K-aligned when w projects within K of the start of seg"""
    if seg.is_degenerate:
        raise DegenerateSegment(f"Segment collapses to {seg.start}")
    defect = dist(_foot(seg, w), seg.start)
    return AlignmentReport(defect < K, defect, 0.0, K)


def triple_alignment(w: AnyPoint, seg: SegmentH2, z: AnyPoint, K: float) -> AlignmentReport:
    """Two-sided test of (w, seg, z)"""
    left = is_aligned(w, seg, K).left_defect
    right = is_aligned(z, seg.reversed(), K).left_defect
    return AlignmentReport(max(left, right) < K, left, right, K)


def is_aligned_triple(w: AnyPoint, seg: SegmentH2, z: AnyPoint, K: float) -> bool:
    return triple_alignment(w, seg, z, K).aligned


def product_alignment(
    z: Sequence[AnyPoint], segs: SegmentTuple, w: Sequence[AnyPoint], K: float
) -> List[AlignmentReport]:
    """Factorwise triple alignment of (z, [segs], w)"""
    return [triple_alignment(a, s, b, K) for a, s, b in zip(z, segs, w)]


# ---------------------------------------------------------------------------
# Contracting and squeezing

def _prefix_diameters(params: np.ndarray, zs: np.ndarray, geodesic: GeodesicH2) -> np.ndarray:
    """Diam(pi([z_0, z_k]) + {z_k}) for every k"""
    lo = np.minimum.accumulate(params)
    hi = np.maximum.accumulate(params)
    to_lo = dist_array(zs, geodesic.points_at(lo))
    to_hi = dist_array(zs, geodesic.points_at(hi))
    return np.maximum(hi - lo, np.maximum(to_lo, to_hi))


def contracting_decomposition(
    geodesic: GeodesicH2, x: H2Point, y: H2Point, step: Optional[float] = None
) -> ContractingDecomposition:
    """Split [x, y] at p, q so that both ends project to sets of diameter at most 2"""
    tx, ty = geodesic.param_of(x), geodesic.param_of(y)
    if abs(tx - ty) <= 2.0:
        raise ProjectionsTooClose(f"Projections are {abs(tx - ty):.6f} apart, need more than 2")

    settings = get_settings()
    zs = SegmentH2(x, y).sample(step)
    params = geodesic.params_of(zs)
    left = _prefix_diameters(params, zs, geodesic)
    right = _prefix_diameters(params[::-1], zs[::-1], geodesic)[::-1]

    limit = 2.0 + settings.CONTRACTING_TOL
    start_gaps = dist_array(zs, geodesic.point_at(tx).z)
    end_gaps = dist_array(zs, geodesic.point_at(ty).z)

    left_ok = np.flatnonzero(left <= limit)
    i = int(left_ok[np.argmin(start_gaps[left_ok])]) if left_ok.size else int(np.argmin(left))
    right_ok = np.flatnonzero(right <= limit)
    right_ok = right_ok[right_ok >= i]
    if right_ok.size:
        j = int(right_ok[np.argmin(end_gaps[right_ok])])
    else:
        j = len(zs) - 1

    logger.debug("contracting split at samples %d and %d of %d", i, j, len(zs))
    return ContractingDecomposition(
        p=H2Point.from_complex(complex(zs[i])),
        q=H2Point.from_complex(complex(zs[j])),
        left_diameter=float(left[i]),
        right_diameter=float(right[j]),
        start_gap=float(start_gaps[i]),
        end_gap=float(end_gaps[j]),
    )


def points_off_axis(feet_params, offsets):
    """Points of H^2 at signed distance ``offsets`` from the imaginary axis"""
    r = np.exp(feet_params)
    return r * (np.tanh(offsets) + 1j / np.cosh(offsets))


def _squeeze_draws(rng: np.random.Generator, count: int):
    extra = rng.exponential(1.0, size=(2, count))
    offsets = rng.uniform(-10.0, 10.0, size=(2, count))
    return extra, offsets


def four_point_defect(x1: H2Point, x2: H2Point, y1: H2Point, y2: H2Point) -> float:
    """|d(x1,y1) - d(x1,y2) - d(x2,y1) + d(x2,y2)|"""
    return abs(dist(x1, y1) - dist(x1, y2) - dist(x2, y1) + dist(x2, y2))


def squeeze_estimate(epsilon: float, trials: int, seed: int) -> SqueezeEstimate:
    """Smallest grid offset L at which [x, y] passes within epsilon of gamma(t).

    The geodesic is the imaginary axis with t = 0; x and y project to
    -a and +b with a, b >= L.
    """
    if not 0.0 < epsilon <= 1.0:
        raise InputError(f"epsilon must lie in (0, 1], got {epsilon}")
    settings = get_settings()
    step, cap = settings.SQUEEZE_GRID_STEP, settings.SQUEEZE_CAP

    L, index = step, 0
    worst = math.inf
    while True:
        extra, offsets = _squeeze_draws(np.random.default_rng([seed, index]), trials)
        x = points_off_axis(-(L + extra[0]), offsets[0])
        y = points_off_axis(L + extra[1], offsets[1])
        worst = float(segment_distance(x, y, 1j).max())
        if worst <= epsilon or L >= cap:
            break
        L += step
        index += 1
    cap_reached = worst > epsilon
    logger.debug("squeeze epsilon=%s accepted L=%s (worst %.6f)", epsilon, L, worst)

    # four-point consequence at the accepted L on fresh draws
    rng = np.random.default_rng([seed, index, 1])
    extra = rng.exponential(1.0, size=(4, trials))
    offsets = rng.uniform(-10.0, 10.0, size=(4, trials))
    x1 = points_off_axis(-(L + extra[0]), offsets[0])
    x2 = points_off_axis(-(L + extra[1]), offsets[1])
    y1 = points_off_axis(L + extra[2], offsets[2])
    y2 = points_off_axis(L + extra[3], offsets[3])
    defects = np.abs(
        dist_array(x1, y1) - dist_array(x1, y2) - dist_array(x2, y1) + dist_array(x2, y2)
    )
    return SqueezeEstimate(
        epsilon=epsilon,
        L=L,
        samples=trials,
        worst_midpoint_distance=worst,
        cap_reached=cap_reached,
        four_point_worst=float(defects.max()),
        four_point_failures=int(np.count_nonzero(defects > 8.0 * epsilon)),
    )


def projection_defect_check(geodesic: GeodesicH2, x: H2Point, s: float) -> float:
    """|d(x, gamma(s)) - d(x, gamma(t)) - |t - s|| with gamma(t) the projection of x"""
    foot, t = project_to_geodesic(geodesic, x)
    return abs(dist(x, geodesic.point_at(s)) - dist(x, foot) - abs(t - s))


def verify_shadow_alignment(
    x: H2Point, y: H2Point, z: H2Point, w: H2Point, R: float
) -> Tuple[bool, bool]:
    """Both directions of the shadow/alignment correspondence, vacuous cases passing"""
    if R <= 1.0:
        raise RadiusTooSmall(f"Radius must exceed 1, got {R}")
    seg = SegmentH2(y, z)

    forward_ok = True
    if shadow_contains(x, y, R, w) and shadow_contains(y, z, R, w):
        forward_ok = is_aligned_triple(x, seg, w, 6.0 * R)

    backward_ok = True
    if dist(y, z) > 3.0 * R and is_aligned_triple(x, seg, w, R):
        backward_ok = shadow_contains(x, y, 3.0 * R, w) and shadow_contains(y, z, 3.0 * R, w)

    return forward_ok, backward_ok


# ---------------------------------------------------------------------------
# Axes of loxodromics

def _alignment_defects(seg: SegmentH2, zs: np.ndarray) -> np.ndarray:
    params = seg.geodesic.params_of(zs) - seg.t0
    return np.clip(params, 0.0, seg.length)


def axis_constant(
    g: IsometryH2, basepoint: H2Point, kmax: int, samples: int = 256, seed: int = 0
) -> AxisConstant:
    """Constant C with d(g^k x0, gamma(s0 + k tau)) < C for |k| <= kmax.

    The projection bounds for x against [x0, g^k x0] are re-checked on seeded
    points; C grows by AXIS_MARGIN until they hold.
    """
    settings = get_settings()
    tau, axis, _, _ = translation_length_axis(g)
    s0 = axis.param_of(basepoint)

    heights = []
    for k in range(-kmax, kmax + 1):
        image = apply_isometry(g.power(k), basepoint)
        heights.append(dist(image, axis.point_at(s0 + k * tau)))
    orbit_height = max(heights)
    C = orbit_height + settings.AXIS_MARGIN

    rng = np.random.default_rng([seed])
    params = rng.uniform(s0 - 5.0, s0 + tau * kmax + 5.0, size=samples)
    offsets = rng.uniform(-4.0, 4.0, size=samples)
    normal = np.exp(params) * (np.tanh(offsets) + 1j / np.cosh(offsets))
    xs = mobius_array(axis.denormalizer, normal)
    shifts = axis.params_of(xs) - s0

    segments = [
        SegmentH2(basepoint, apply_isometry(g.power(k), basepoint)) for k in range(1, kmax + 1)
    ]
    defects = [_alignment_defects(seg, xs) for seg in segments]

    certified = False
    for _ in range(1000):
        violations = 0
        for k, D in enumerate(defects, start=1):
            not_aligned = D >= C
            violations += int(np.count_nonzero(not_aligned & (shifts < D - C)))
            aligned_short = D < tau * k - C
            violations += int(np.count_nonzero(aligned_short & (shifts > D + C)))
        if violations == 0:
            certified = True
            break
        C += settings.AXIS_MARGIN
    if not certified:
        logger.warning("axis constant not certified, stopping at C=%.3f", C)

    return AxisConstant(
        C=C,
        generator=g,
        axis=axis,
        basepoint=basepoint,
        s0=s0,
        orbit_height=orbit_height,
        certified=certified,
        kmax=kmax,
    )


def extension_select(
    phi: ProductIsometry,
    candidates: Sequence[ProductIsometry],
    x: Union[ProductPoint, ProductBoundaryPoint],
    y: Union[ProductPoint, ProductBoundaryPoint],
    n: int,
    alpha: float,
    basepoint: Optional[ProductPoint] = None,
) -> int:
    """Index of the first a making (x, a[x0, phi^n x0], a phi^n a y) alpha-aligned in factor 1"""
    if not candidates:
        raise NoCandidateAligns("Candidate list is empty")
    x0 = basepoint or ProductPoint.basepoint(len(phi))
    phi_n = phi.power(n)
    for index, a in enumerate(candidates):
        start = apply_isometry(a[0], x0[0])
        end = apply_isometry((a @ phi_n)[0], x0[0])
        target = apply_product(a @ phi_n @ a, y)[0]
        if is_aligned_triple(x[0], SegmentH2(start, end), target, alpha):
            return index
    raise NoCandidateAligns(
        f"None of {len(candidates)} candidates is {alpha}-aligned for n = {n}"
    )
