"""
Linear forms, partial Poincare series and critical exponent estimates
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..config import get_settings
from ..errors import DimensionMismatch, InputError, InsufficientGrowthData
from ..groups.ball import Ball, enumerate_ball
from ..groups.group_spec import GroupSpec

logger = logging.getLogger(__name__)

MIN_CRITICAL_LENGTH = 6


@dataclass(frozen=True)
class LinearForm:
    """psi(v) = <coefficients, v> on R^r"""
    coefficients: Tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(c) for c in self.coefficients)
        if not values or not all(math.isfinite(c) for c in values):
            raise InputError(f"Linear form needs finite coefficients, got {self.coefficients}")
        object.__setattr__(self, 'coefficients', values)

    @classmethod
    def parse(cls, text: str) -> "LinearForm":
        """From a comma-separated list such as ``0.5,0.5``"""
        try:
            return cls(tuple(float(part) for part in text.split(",")))
        except ValueError as e:
            raise InputError(f"Cannot read a linear form from '{text}'") from e

    @classmethod
    def of(cls, *coefficients: float) -> "LinearForm":
        return cls(tuple(coefficients))

    @property
    def r(self) -> int:
        return len(self.coefficients)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coefficients)

    @property
    def is_zero(self) -> bool:
        return all(c == 0.0 for c in self.coefficients)

    def __call__(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape[-1] != self.r:
            raise DimensionMismatch(
                f"Form of rank {self.r} applied to vectors of length {v.shape[-1]}"
            )
        return v @ self.vector

    def to_list(self) -> List[float]:
        return list(self.coefficients)


def _orbit_values(spec: GroupSpec, psi: LinearForm, ball: Ball) -> np.ndarray:
    if psi.r != spec.r:
        raise DimensionMismatch(f"Form of rank {psi.r} for a group acting on {spec.r} factors")
    return psi(ball.cartan)


def _nonzero(psi: LinearForm) -> None:
    if psi.is_zero:
        raise InputError("Poincare series needs a nonzero linear form")


def poincare_partial(
    spec: GroupSpec, psi: LinearForm, s: float, L: int, workers: int = 1, ball: Ball = None
) -> float:
    """Sum of exp(-s psi(kappa(g))) over the L-ball"""
    _nonzero(psi)
    ball = ball.truncate(L) if ball is not None else enumerate_ball(spec, L, workers)
    values = _orbit_values(spec, psi, ball)
    return math.fsum(np.exp(-s * values))


@dataclass
class CriticalExponent:
    """Fitted exponential growth rate of the psi-orbit counting function"""
    delta: float
    divergence_type_evidence: bool
    max_word_length: int
    intercept: float = 0.0
    complete_up_to: float = 0.0
    buckets_used: int = 0
    growth: float = 0.0
    window: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'delta': self.delta,
            'divergence_type_evidence': self.divergence_type_evidence,
            'max_word_length': self.max_word_length,
            'intercept': self.intercept,
            'complete_up_to': self.complete_up_to,
            'buckets_used': self.buckets_used,
            'growth': self.growth,
            'window': self.window,
        }


def counting_function(values: np.ndarray, thresholds: Sequence[float]) -> np.ndarray:
    """#{g : psi(kappa(g)) <= T} for each T"""
    ordered = np.sort(values)
    return np.searchsorted(ordered, np.asarray(thresholds), side='right')


def critical_exponent(
    spec: GroupSpec, psi: LinearForm, Lmax: int, workers: int = 1, ball: Ball = None
) -> CriticalExponent:
    """Least-squares slope of log N(T) against T over the stable range of T.

    N(T) is trusted up to the smallest value of psi(kappa) on the outer sphere;
    the lowest and highest buckets of that range are dropped.
    """
    _nonzero(psi)
    if Lmax < MIN_CRITICAL_LENGTH:
        raise InsufficientGrowthData(
            f"Critical exponent needs Lmax >= {MIN_CRITICAL_LENGTH}, got {Lmax}"
        )
    settings = get_settings()
    ball = ball.truncate(Lmax) if ball is not None else enumerate_ball(spec, Lmax, workers)
    values = _orbit_values(spec, psi, ball)

    outer = ball.sphere(ball.lengths.max())
    complete = float(values[outer].min())
    width = settings.DELTA_BUCKET_WIDTH
    thresholds = np.arange(1, int(np.floor(complete / width)) + 1) * width
    low = int(np.floor(len(thresholds) * settings.DELTA_DROP_LOW))
    high = len(thresholds) - int(np.floor(len(thresholds) * settings.DELTA_DROP_HIGH))
    window = thresholds[low:high]
    if len(window) < settings.DELTA_MIN_BUCKETS:
        raise InsufficientGrowthData(
            f"Only {len(window)} stable buckets below T = {complete:.3f}; "
            f"need {settings.DELTA_MIN_BUCKETS}"
        )

    counts = counting_function(values, window)
    slope, intercept = np.polyfit(window, np.log(counts), 1)
    delta = max(float(slope), 0.0)

    inner = values[ball.lengths <= ball.length - 2]
    partial = math.fsum(np.exp(-delta * values))
    previous = math.fsum(np.exp(-delta * inner))
    growth = partial / previous - 1.0
    logger.info("delta %.4f from %d buckets up to T=%.3f, growth %.3f",
                delta, len(window), complete, growth)

    return CriticalExponent(
        delta=delta,
        divergence_type_evidence=bool(growth >= settings.DIVERGENCE_GROWTH),
        max_word_length=ball.length,
        intercept=float(intercept),
        complete_up_to=complete,
        buckets_used=len(window),
        growth=float(growth),
        window=[float(window[0]), float(window[-1])],
    )
