"""
Verifiers for alignment, contracting, squeezing and axis statements
"""
import math

import numpy as np

from ..geometry.alignment import (
    axis_constant,
    contracting_decomposition,
    is_aligned,
    projection_defect_check,
    squeeze_estimate,
    triple_alignment,
    verify_shadow_alignment,
)
from ..geometry.hyperbolic_plane import (
    SegmentH2,
    dist,
    distance_to_path,
    hausdorff_distance,
    project_to_geodesic,
)
from ..models import LemmaId, Report, VerifyJob
from .base import Outcome, Verifier, register
from .sampling import (
    axis_configuration,
    point_at_distance,
    random_geodesic,
    random_loxodromic,
    random_point,
)


@register
class ThinVerifier(Verifier):
    lemma_id = LemmaId.THIN
    description = "C-equivalent segments are at Hausdorff distance at most C"
    defaults = {'hausdorff': 1e-6}

    def check(self, rng, tol):
        a, b = random_point(rng), random_point(rng)
        C = float(rng.uniform(0.05, 3.0))
        a2 = point_at_distance(a, C * rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0 * math.pi))
        b2 = point_at_distance(b, C * rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0 * math.pi))
        first, second = SegmentH2(a, b), SegmentH2(a2, b2)
        equivalence = max(dist(a, a2), dist(b, b2))
        excess = hausdorff_distance(first, second) - equivalence
        return Outcome(excess > tol['hausdorff'], excess, {
            'first': [a.to_list(), b.to_list()],
            'second': [a2.to_list(), b2.to_list()],
            'C': equivalence,
        })


@register
class ContractingVerifier(Verifier):
    lemma_id = LemmaId.CONTRACTING
    description = "segments with distant projections split into contracted ends"
    defaults = {'contracting': 1e-6}

    def check(self, rng, tol):
        gap = float(rng.uniform(2.05, 8.0))
        offsets = rng.uniform(-3.0, 3.0, size=2)
        (x, y), axis = axis_configuration(rng, [0.0, gap], offsets)
        split = contracting_decomposition(axis, x, y)
        worst = max(split.left_diameter, split.right_diameter, split.start_gap, split.end_gap)
        return Outcome(not split.holds(tol=tol['contracting']), worst, {
            'x': x.to_list(),
            'y': y.to_list(),
            'axis': [axis.start.to_json(), axis.end.to_json()],
            'p': split.p.to_list(),
            'q': split.q.to_list(),
        })


@register
class ProjectionDefectVerifier(Verifier):
    lemma_id = LemmaId.PROJECTION_DEFECT
    description = "d(x, gamma(s)) agrees with d(x, pi(x)) + |t - s| up to 1.3"
    defaults = {'bound': 1.3}

    def check(self, rng, tol):
        geodesic = random_geodesic(rng)
        x = random_point(rng)
        _, t = project_to_geodesic(geodesic, x)
        s = t + float(rng.normal(0.0, 3.0))
        defect = projection_defect_check(geodesic, x, s)
        return Outcome(defect > tol['bound'], defect, {
            'geodesic': [geodesic.start.to_json(), geodesic.end.to_json()],
            'x': x.to_list(),
            's': s,
        })


@register
class SqueezeVerifier(Verifier):
    lemma_id = LemmaId.SQUEEZE
    description = "squeezing offset L(epsilon) and the 8 epsilon four-point bound"
    defaults = {'epsilon': 1.0}

    def run(self, job: VerifyJob) -> Report:
        # one grid search over all trials; failures are four-point violations
        tol = self.tolerances(job)
        estimate = squeeze_estimate(tol['epsilon'], job.trials, job.seed)
        failures = estimate.four_point_failures + int(estimate.cap_reached)
        return Report(job, failures, estimate.to_dict())


@register
class AlignDichotomyVerifier(Verifier):
    lemma_id = LemmaId.ALIGN_DICHOTOMY
    description = (
        "no point is D-aligned with a segment and the segment (length - D)-aligned with it"
    )
    defaults = {'dichotomy': 1e-9}

    def check(self, rng, tol):
        seg = SegmentH2(random_point(rng), random_point(rng))
        x = random_point(rng)
        length = seg.length
        D = float(rng.uniform(0.0, length))
        left = is_aligned(x, seg, D).left_defect
        right = is_aligned(x, seg.reversed(), length - D).left_defect
        overlap = min(D - left, length - D - right)
        return Outcome(overlap > tol['dichotomy'], overlap, {
            'segment': [seg.start.to_list(), seg.end.to_list()],
            'x': x.to_list(),
            'D': D,
            'left_defect': left,
            'right_defect': right,
        })


def _shadow_instance(rng: np.random.Generator):
    """Four points near one geodesic, feet in order, and a radius in [1.01, 5]"""
    R = float(rng.uniform(1.01, 5.0))
    feet = np.cumsum(rng.uniform(0.0, 3.0 * R, size=4))
    offsets = rng.normal(0.0, R / 2.0, size=4)
    points, _ = axis_configuration(rng, feet, offsets)
    return points, R


@register
class ShadowAlignForwardVerifier(Verifier):
    lemma_id = LemmaId.SHADOW_ALIGN_FWD
    description = "w in O_R(x,y) and O_R(y,z) makes (x, [y,z], w) 6R-aligned"
    defaults = {}

    def check(self, rng, tol):
        (x, y, z, w), R = _shadow_instance(rng)
        forward_ok, _ = verify_shadow_alignment(x, y, z, w, R)
        details = {'points': [p.to_list() for p in (x, y, z, w)], 'R': R}
        score = 0.0
        if distance_to_path(SegmentH2(x, w), y) < R and distance_to_path(SegmentH2(y, w), z) < R:
            report = triple_alignment(x, SegmentH2(y, z), w, 6.0 * R)
            score = max(report.left_defect, report.right_defect) / (6.0 * R)
            details.update(report.to_dict())
        return Outcome(not forward_ok, score, details)


@register
class ShadowAlignBackwardVerifier(Verifier):
    lemma_id = LemmaId.SHADOW_ALIGN_BWD
    description = "R-aligned (x, [y,z], w) with d(y,z) > 3R puts w in O_3R(x,y) and O_3R(y,z)"
    defaults = {}

    def check(self, rng, tol):
        (x, y, z, w), R = _shadow_instance(rng)
        _, backward_ok = verify_shadow_alignment(x, y, z, w, R)
        details = {'points': [p.to_list() for p in (x, y, z, w)], 'R': R}
        score = 0.0
        if dist(y, z) > 3.0 * R and triple_alignment(x, SegmentH2(y, z), w, R).aligned:
            first = distance_to_path(SegmentH2(x, w), y)
            second = distance_to_path(SegmentH2(y, w), z)
            score = max(first, second) / (3.0 * R)
            details.update({'shadow_distances': [first, second]})
        return Outcome(not backward_ok, score, details)


@register
class AxisBoundsVerifier(Verifier):
    lemma_id = LemmaId.AXIS_BOUNDS
    description = "orbit of a loxodromic stays within C of its axis, also for g^2"
    defaults = {'kmax': 6, 'samples': 128}

    def check(self, rng, tol):
        g = random_loxodromic(rng)
        x0 = random_point(rng)
        kmax = int(tol['kmax'])
        seed = int(rng.integers(0, 2 ** 31))
        constant = axis_constant(g, x0, kmax, samples=int(tol['samples']), seed=seed)
        square = axis_constant(g.power(2), x0, max(1, kmax // 2), samples=8, seed=seed)
        excess = square.orbit_height - constant.C
        failed = not constant.certified or constant.orbit_height >= constant.C or excess > 0.0
        details = constant.to_dict()
        details['square_orbit_height'] = square.orbit_height
        return Outcome(failed, constant.C, details)
