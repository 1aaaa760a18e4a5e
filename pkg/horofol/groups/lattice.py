"""
Heuristic non-arithmeticity test for translation-length spectra
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Union

import numpy as np

from .projections import SpectrumSample

logger = logging.getLogger(__name__)

LOVASZ_DELTA = 0.75
MAX_SUBSET = 16
MAX_COMBINATION_POOL = 24


@dataclass
class NonArithmeticityReport:
    """Best sublattice found by integer reduction of the sample"""
    dense_heuristic: bool
    lattice_covolume: float
    rank: int
    threshold: float
    basis: List[List[float]] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'dense_heuristic': self.dense_heuristic,
            'lattice_covolume': (
                self.lattice_covolume if np.isfinite(self.lattice_covolume) else None
            ),
            'rank': self.rank,
            'threshold': self.threshold,
            'basis': self.basis,
        }


def gram_schmidt(B: np.ndarray):
    """Orthogonalised rows and the projection coefficients"""
    n = B.shape[0]
    Q = np.zeros_like(B, dtype=float)
    mu = np.zeros((n, n))
    for i in range(n):
        Q[i] = B[i]
        for j in range(i):
            denom = np.dot(Q[j], Q[j])
            mu[i, j] = np.dot(B[i], Q[j]) / denom if denom > 0 else 0.0
            Q[i] -= mu[i, j] * Q[j]
    return Q, mu


def lll_reduce(B: np.ndarray, delta: float = LOVASZ_DELTA, max_swaps: int = 10_000) -> np.ndarray:
    """LLL reduction of the rows of B"""
    B = np.array(B, dtype=float)
    n = B.shape[0]
    Q, mu = gram_schmidt(B)
    k, swaps = 1, 0
    while k < n and swaps < max_swaps:
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q != 0:
                B[k] -= q * B[j]
                Q, mu = gram_schmidt(B)
        lhs = np.dot(Q[k], Q[k])
        rhs = (delta - mu[k, k - 1] ** 2) * np.dot(Q[k - 1], Q[k - 1])
        if lhs >= rhs:
            k += 1
        else:
            B[[k, k - 1]] = B[[k - 1, k]]
            Q, mu = gram_schmidt(B)
            k = max(k - 1, 1)
            swaps += 1
    return B


def short_combinations(vectors: np.ndarray, depth: int) -> np.ndarray:
    """Small nonzero integer combinations found by reducing [I | W v] for W = 4^k"""
    m = vectors.shape[0]
    found = []
    for k in range(1, depth + 1):
        weight = 4.0 ** k
        basis = np.hstack([np.eye(m), weight * vectors])
        reduced = lll_reduce(basis)
        coefficients = np.round(reduced[:, :m])
        combos = coefficients @ vectors
        nonzero = np.linalg.norm(combos, axis=1) > 1e-12
        found.append(combos[nonzero])
    return np.concatenate(found) if found else np.zeros((0, vectors.shape[1]))


def _best_covolume(candidates: np.ndarray, r: int):
    order = np.argsort(np.linalg.norm(candidates, axis=1))
    pool = candidates[order[:MAX_COMBINATION_POOL]]
    norms = np.linalg.norm(pool, axis=1)
    best, basis = np.inf, None
    for idx in itertools.combinations(range(len(pool)), r):
        sub = pool[list(idx)]
        volume = abs(np.linalg.det(sub))
        if volume <= 1e-12 * np.prod(norms[list(idx)]):
            continue
        if volume < best:
            best, basis = volume, sub
    return best, basis


def non_arithmeticity_report(
    sample: Union[SpectrumSample, np.ndarray], threshold: float, depth: int = 12
) -> NonArithmeticityReport:
    """Finite-resolution evidence that the sample generates a dense subgroup.

    Growing subsets of the shortest vectors are reduced; the covolume of the best
    rank-r sublattice among the originals and the short combinations is reported.
    """
    if isinstance(sample, SpectrumSample):
        vectors = sample.vectors
    else:
        vectors = np.asarray(sample, dtype=float)
    vectors = np.atleast_2d(vectors)
    r = vectors.shape[1]
    rank = int(np.linalg.matrix_rank(vectors)) if len(vectors) else 0
    if rank < r:
        return NonArithmeticityReport(False, float('inf'), rank, threshold)

    order = np.argsort(np.linalg.norm(vectors, axis=1))
    shortest = vectors[order]
    candidates = [shortest[:MAX_COMBINATION_POOL]]
    size = r + 1
    while True:
        subset = shortest[:min(size, len(shortest), MAX_SUBSET)]
        candidates.append(short_combinations(subset, depth))
        if size >= min(len(shortest), MAX_SUBSET):
            break
        size *= 2

    covolume, basis = _best_covolume(np.concatenate(candidates), r)
    logger.debug("best sublattice covolume %.3e from %d vectors", covolume, len(vectors))
    return NonArithmeticityReport(
        dense_heuristic=bool(covolume < threshold),
        lattice_covolume=float(covolume),
        rank=rank,
        threshold=threshold,
        basis=basis.tolist() if basis is not None else [],
    )
