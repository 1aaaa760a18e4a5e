"""
Word balls of finitely generated groups, enumerated level by level
"""
import copy
import json
import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config import get_settings
from ..errors import BallTooLarge, InputError
from ..geometry.hyperbolic_plane import dist_array, mobius_array
from ..geometry.product_space import ProductIsometry, kappa
from .group_spec import IDENTITY_WORD, LETTER_SEPARATOR, GroupSpec, parse_group_spec

logger = logging.getLogger(__name__)


@dataclass
class GroupElement:
    """Element of the group with the word that produced it"""
    word: str
    matrix: ProductIsometry
    cartan: np.ndarray

    @property
    def length(self) -> int:
        return 0 if self.word == IDENTITY_WORD else self.word.count(LETTER_SEPARATOR) + 1

    @property
    def is_identity(self) -> bool:
        return self.word == IDENTITY_WORD

    def to_dict(self) -> Dict:
        return {
            'word': self.word,
            'matrix': self.matrix.to_list(),
            'cartan': self.cartan.tolist(),
        }


def make_element(spec: GroupSpec, word: str) -> GroupElement:
    """GroupElement for an explicit word over the generators"""
    g = spec.word_isometry(word)
    return GroupElement(word, g, kappa(spec.basepoint, g(spec.basepoint)))


class _Registry:
    """Seen matrices, bucketed by a scalar projection and confirmed at the dedup tolerance.

    Matrices within the tolerance project at most 2*tolerance apart, so a
    bucket width of 4*tolerance puts them in the same or adjacent buckets.
    """

    def __init__(self, tolerance: float):
        self.tolerance = tolerance
        self.width = 4.0 * tolerance
        self.direction: Optional[np.ndarray] = None
        self.buckets: Dict[int, List[np.ndarray]] = {}

    @staticmethod
    def _normalize(mats: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Sign-normalized entries per factor and the overall size max(1, |entry|)"""
        flat = mats.reshape(mats.shape[0], mats.shape[1], 4)
        scale = np.abs(flat).max(axis=2, keepdims=True)
        first = (np.abs(flat) > 1e-9 * scale).argmax(axis=2)
        signs = np.sign(np.take_along_axis(flat, first[..., None], axis=2))
        signed = (flat * signs).reshape(mats.shape[0], -1)
        size = np.maximum(1.0, np.abs(signed).max(axis=1))
        return signed, size

    def _keys(self, signed: np.ndarray, size: np.ndarray) -> np.ndarray:
        if self.direction is None:
            weights = np.random.default_rng(0).standard_normal(signed.shape[1])
            self.direction = weights / np.abs(weights).sum()
        projection = (signed / size[:, None]) @ self.direction
        return np.floor(projection / self.width).astype(np.int64)

    def admit(self, mats: np.ndarray) -> np.ndarray:
        """Register new matrices; mask of those not seen before"""
        signed, size = self._normalize(mats)
        keys = self._keys(signed, size)
        keep = np.zeros(mats.shape[0], dtype=bool)
        for i, key in enumerate(keys.tolist()):
            limit = self.tolerance * size[i]
            near = (other for k in (key - 1, key, key + 1) for other in self.buckets.get(k, ()))
            if any(np.abs(other - signed[i]).max() <= limit for other in near):
                continue
            self.buckets.setdefault(key, []).append(signed[i])
            keep[i] = True
        return keep


class Ball(Sequence):
    """Elements of word length at most ``length``, in level and then word order"""

    def __init__(self, spec: GroupSpec, length: int, mats: np.ndarray, words: List[str],
                 lengths: np.ndarray):
        self.spec = spec
        self.length = length
        self.mats = mats
        self.words = words
        self.lengths = lengths

    def __len__(self) -> int:
        return len(self.words)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        matrix = ProductIsometry.from_arrays(self.mats[index])
        return GroupElement(self.words[index], matrix, self.cartan[index].copy())

    @cached_property
    def orbit(self) -> np.ndarray:
        """g z0 per factor, complex array (N, r)"""
        z0 = np.array([p.z for p in self.spec.basepoint])
        return mobius_array(self.mats, z0[None, :])

    @cached_property
    def cartan(self) -> np.ndarray:
        """kappa(z0, g z0), array (N, r)"""
        z0 = np.array([p.z for p in self.spec.basepoint])
        return dist_array(z0[None, :], self.orbit)

    @cached_property
    def inverse_mats(self) -> np.ndarray:
        m = self.mats
        inv = np.empty_like(m)
        inv[..., 0, 0] = m[..., 1, 1]
        inv[..., 0, 1] = -m[..., 0, 1]
        inv[..., 1, 0] = -m[..., 1, 0]
        inv[..., 1, 1] = m[..., 0, 0]
        return inv

    @cached_property
    def traces(self) -> np.ndarray:
        return self.mats[..., 0, 0] + self.mats[..., 1, 1]

    @cached_property
    def word_index(self) -> Dict[str, int]:
        return {w: i for i, w in enumerate(self.words)}

    def sphere(self, n: int) -> np.ndarray:
        """Indices of elements of word length exactly n"""
        return np.flatnonzero(self.lengths == n)

    def truncate(self, length: int) -> "Ball":
        """Sub-ball of radius at most ``length``, sharing storage"""
        if length > self.length:
            raise InputError(f"Cannot truncate a ball of radius {self.length} to {length}")
        if length == self.length:
            return self
        count = int(np.searchsorted(self.lengths, length, side='right'))
        return Ball(self.spec, length, self.mats[:count], self.words[:count], self.lengths[:count])


def _grow(spec: GroupSpec, L: int, cap: int, first_letters: Optional[List[int]] = None):
    """Level-by-level enumeration of reduced words, deduplicated by matrix"""
    letters = spec.letter_matrices()
    inverse = spec.inverse_letters()
    names = spec.letters
    r = spec.r

    identity = np.broadcast_to(np.eye(2), (1, r, 2, 2)).copy()
    registry = _Registry(spec.dedup_tolerance)
    registry.admit(identity)

    levels_mats = [identity]
    levels_words: List[List[str]] = [[IDENTITY_WORD]]
    total = 1
    frontier_mats, frontier_words = identity, [IDENTITY_WORD]
    frontier_last = np.array([-1])

    for n in range(1, L + 1):
        if len(frontier_words) == 0:
            break
        valid = np.ones((len(frontier_words), len(names)), dtype=bool)
        has_parent = frontier_last >= 0
        valid[np.flatnonzero(has_parent), inverse[frontier_last[has_parent]]] = False
        if n == 1 and first_letters is not None:
            valid[:, [k for k in range(len(names)) if k not in first_letters]] = False
        parents, choices = np.nonzero(valid)
        candidates = np.einsum('fsij,fsjl->fsil', frontier_mats[parents], letters[choices])
        keep = registry.admit(candidates) if len(candidates) else np.zeros(0, dtype=bool)

        total += int(keep.sum())
        if total > cap:
            raise BallTooLarge(cap, n)

        parents, choices = parents[keep], choices[keep]
        frontier_mats = candidates[keep]
        frontier_words = [
            names[k] if n == 1 else f"{frontier_words[p]}{LETTER_SEPARATOR}{names[k]}"
            for p, k in zip(parents, choices)
        ]
        frontier_last = choices
        levels_mats.append(frontier_mats)
        levels_words.append(frontier_words)
        logger.debug("word length %d: %d new elements, %d total", n, len(frontier_words), total)

    return levels_mats, levels_words


def _subtree(spec_json: str, L: int, cap: int, letter: int):
    spec = parse_group_spec(spec_json)
    return _grow(spec, L, cap, [letter])


def _merge(spec: GroupSpec, L: int, cap: int, parts) -> Tuple[list, list]:
    """Concatenate per-letter subtrees level by level, deduplicating across them"""
    registry = _Registry(spec.dedup_tolerance)
    identity = parts[0][0][0]
    registry.admit(identity)
    levels_mats, levels_words = [identity], [[IDENTITY_WORD]]
    total = 1
    for n in range(1, L + 1):
        mats = [p[0][n] for p in parts if len(p[0]) > n and len(p[0][n])]
        words = [w for p in parts if len(p[1]) > n for w in p[1][n]]
        if not mats:
            break
        stacked = np.concatenate(mats)
        keep = registry.admit(stacked)
        total += int(keep.sum())
        if total > cap:
            raise BallTooLarge(cap, n)
        levels_mats.append(stacked[keep])
        levels_words.append([w for w, k in zip(words, keep) if k])
    return levels_mats, levels_words


@lru_cache(maxsize=4)
def _cached_ball(spec_json: str, L: int, cap: int, workers: int) -> Ball:
    spec = parse_group_spec(spec_json)
    if workers > 1 and L >= 1:
        count = 2 * len(spec.generators)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_subtree, [spec_json] * count, [L] * count,
                                  [cap] * count, range(count)))
        levels_mats, levels_words = _merge(spec, L, cap, parts)
    else:
        levels_mats, levels_words = _grow(spec, L, cap)

    mats = np.concatenate(levels_mats)
    words = [w for level in levels_words for w in level]
    lengths = np.concatenate([np.full(len(level), n) for n, level in enumerate(levels_words)])
    return Ball(spec, L, mats, words, lengths)


def enumerate_ball(spec: GroupSpec, L: int, workers: int = 1) -> Ball:
    """All distinct elements given by reduced words of length at most L"""
    if L < 0:
        raise InputError(f"Word length must be non-negative, got {L}")
    cap = get_settings().BALL_CAP
    cached = _cached_ball(json.dumps(spec.to_dict(), sort_keys=True), L, cap, max(1, workers))
    # shallow copy: storage and computed arrays stay shared with the cache
    ball = copy.copy(cached)
    ball.spec = spec
    return ball
