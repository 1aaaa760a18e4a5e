"""
Cartan and Jordan projections, length spectra and limit cone samples
"""
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from ..config import get_settings
from ..errors import InputError, NotJointlyLoxodromic
from .ball import Ball, GroupElement, enumerate_ball
from .group_spec import GroupSpec


@dataclass
class SpectrumSample:
    """Jordan projections of the jointly loxodromic elements of a ball"""
    vectors: np.ndarray
    max_word_length: int
    words: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'max_word_length': self.max_word_length,
            'vectors': self.vectors.tolist(),
            'words': self.words,
        }


def cartan_projection(e: GroupElement) -> np.ndarray:
    """kappa(z0, g z0), cached on the element"""
    return e.cartan


def jordan_from_traces(traces: np.ndarray) -> np.ndarray:
    """2 arccosh(|tr|/2) entrywise, NaN where a factor is not loxodromic"""
    tol = get_settings().TRACE_TOL
    half = np.abs(traces) / 2.0
    return np.where(np.abs(traces) > 2.0 + tol, 2.0 * np.arccosh(np.maximum(half, 1.0)), np.nan)


def jordan_projection(e: GroupElement) -> np.ndarray:
    """Vector of translation lengths, one per factor"""
    traces = np.array([g.trace for g in e.matrix])
    tau = jordan_from_traces(traces)
    bad = np.flatnonzero(np.isnan(tau))
    if bad.size:
        raise NotJointlyLoxodromic(bad.tolist(), e.word)
    return tau


def _unique_rows(vectors: np.ndarray, tol: float) -> np.ndarray:
    """Indices of the rows kept when each row within tol (sup norm) of a kept one is dropped.

    Rows are bucketed by their first coordinate; rows within tol sit in the same
    or an adjacent bucket.
    """
    buckets: Dict[int, List[int]] = {}
    keep: List[int] = []
    keys = np.floor(vectors[:, 0] / tol).astype(np.int64).tolist() if len(vectors) else []
    for i, key in enumerate(keys):
        near = [j for k in (key - 1, key, key + 1) for j in buckets.get(k, ())]
        if near and (np.abs(vectors[near] - vectors[i]).max(axis=1) <= tol).any():
            continue
        buckets.setdefault(key, []).append(i)
        keep.append(i)
    return np.array(keep, dtype=int)


def length_spectrum(spec: GroupSpec, L: int, workers: int = 1, ball: Ball = None) -> SpectrumSample:
    """Distinct Jordan projections over the L-ball"""
    if L < 1:
        raise InputError(f"Length spectrum needs L >= 1, got {L}")
    ball = ball.truncate(L) if ball is not None else enumerate_ball(spec, L, workers)
    tau = jordan_from_traces(ball.traces)
    joint = np.flatnonzero(~np.isnan(tau).any(axis=1))
    vectors = tau[joint]
    keep = _unique_rows(vectors, get_settings().EQUALITY_TOL)
    return SpectrumSample(vectors[keep], L, [ball.words[joint[i]] for i in keep])


def limit_cone_sample(spec: GroupSpec, L: int, workers: int = 1, ball: Ball = None) -> np.ndarray:
    """Unit directions kappa(g)/|kappa(g)| for non-identity g with |kappa(g)| >= 1"""
    if L < 1:
        raise InputError(f"Limit cone sample needs L >= 1, got {L}")
    ball = ball.truncate(L) if ball is not None else enumerate_ball(spec, L, workers)
    cartan = ball.cartan[1:]
    norms = np.linalg.norm(cartan, axis=1)
    keep = norms >= 1.0
    return cartan[keep] / norms[keep, None]
