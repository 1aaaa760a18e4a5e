"""
Products Z = X_1 x ... x X_r of upper half-planes
"""
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..config import get_settings
from ..errors import DimensionMismatch, InvalidPoint
from .hyperbolic_plane import (
    INFINITY,
    BoundaryPointH2,
    H2Point,
    IsometryH2,
    SegmentH2,
    apply_isometry,
    busemann,
    dist,
    geodesic_through,
    shadow_contains,
)


def check_rank(*tuples) -> int:
    sizes = {len(t) for t in tuples}
    if len(sizes) != 1:
        raise DimensionMismatch(f"Factor counts differ: {sorted(sizes)}")
    return sizes.pop()


@dataclass(frozen=True)
class ProductPoint:
    """Point of Z, one H2Point per factor"""

    components: Tuple[H2Point, ...]

    def __post_init__(self):
        if len(self.components) < 1:
            raise InvalidPoint("A product point needs at least one factor")
        object.__setattr__(self, 'components', tuple(self.components))

    @classmethod
    def of(cls, *points: H2Point) -> "ProductPoint":
        return cls(tuple(points))

    @classmethod
    def from_complex(cls, values: Sequence[complex]) -> "ProductPoint":
        return cls(tuple(H2Point.from_complex(v) for v in values))

    @classmethod
    def basepoint(cls, r: int) -> "ProductPoint":
        return cls(tuple(H2Point(0.0, 1.0) for _ in range(r)))

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> H2Point:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def to_list(self) -> list:
        return [p.to_list() for p in self.components]


@dataclass(frozen=True)
class ProductBoundaryPoint:
    """Point of the product boundary, one BoundaryPointH2 per factor"""

    components: Tuple[BoundaryPointH2, ...]

    def __post_init__(self):
        if len(self.components) < 1:
            raise InvalidPoint("A boundary tuple needs at least one factor")
        object.__setattr__(self, 'components', tuple(self.components))

    @classmethod
    def of(cls, *points: BoundaryPointH2) -> "ProductBoundaryPoint":
        return cls(tuple(points))

    @classmethod
    def parse(cls, values: Sequence) -> "ProductBoundaryPoint":
        """From JSON-style values, None or "inf" meaning infinity"""
        points = []
        for v in values:
            if v is None or (isinstance(v, str) and v.lower() in ('inf', 'infinity')):
                points.append(INFINITY)
            else:
                points.append(BoundaryPointH2.finite(float(v)))
        return cls(tuple(points))

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> BoundaryPointH2:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    @property
    def angles(self) -> np.ndarray:
        return np.array([p.angle for p in self.components])

    def close_to(self, other: "ProductBoundaryPoint", tol: float) -> bool:
        check_rank(self, other)
        return all(p.close_to(q, tol) for p, q in zip(self, other))

    def to_json(self) -> list:
        return [p.to_json() for p in self.components]


@dataclass(frozen=True)
class ProductIsometry:
    """Isometry of Z acting factor by factor"""

    components: Tuple[IsometryH2, ...]

    def __post_init__(self):
        if len(self.components) < 1:
            raise InvalidPoint("A product isometry needs at least one factor")
        object.__setattr__(self, 'components', tuple(self.components))

    @classmethod
    def of(cls, *factors: IsometryH2) -> "ProductIsometry":
        return cls(tuple(factors))

    @classmethod
    def identity(cls, r: int) -> "ProductIsometry":
        return cls(tuple(IsometryH2.identity() for _ in range(r)))

    @classmethod
    def from_arrays(cls, mats) -> "ProductIsometry":
        return cls(tuple(IsometryH2.from_array(m) for m in mats))

    @property
    def matrices(self) -> np.ndarray:
        """Array of shape (r, 2, 2)"""
        return np.stack([g.matrix for g in self.components])

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> IsometryH2:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __matmul__(self, other: "ProductIsometry") -> "ProductIsometry":
        check_rank(self, other)
        return ProductIsometry(tuple(g @ h for g, h in zip(self, other)))

    def inverse(self) -> "ProductIsometry":
        return ProductIsometry(tuple(g.inverse() for g in self.components))

    def power(self, k: int) -> "ProductIsometry":
        return ProductIsometry(tuple(g.power(k) for g in self.components))

    def equals(self, other: "ProductIsometry", tol=None) -> bool:
        check_rank(self, other)
        return all(g.equals(h, tol) for g, h in zip(self, other))

    def __call__(self, p):
        return apply_product(self, p)

    def to_list(self) -> list:
        return [g.to_list() for g in self.components]


@dataclass(frozen=True)
class SegmentTuple:
    """Componentwise segments [z, z']"""

    components: Tuple[SegmentH2, ...]

    @classmethod
    def between(cls, z: ProductPoint, w: ProductPoint) -> "SegmentTuple":
        check_rank(z, w)
        return cls(tuple(SegmentH2(x, y) for x, y in zip(z, w)))

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> SegmentH2:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)


ProductAny = Union[ProductPoint, ProductBoundaryPoint]


def kappa(z: ProductPoint, w: ProductPoint) -> np.ndarray:
    """Vector-valued distance, one entry per factor"""
    check_rank(z, w)
    return np.array([dist(x, y) for x, y in zip(z, w)])


def busemann_vec(xi: ProductBoundaryPoint, z: ProductPoint, w: ProductPoint) -> np.ndarray:
    """Vector-valued Busemann cocycle"""
    check_rank(xi, z, w)
    return np.array([busemann(e, x, y) for e, x, y in zip(xi, z, w)])


def apply_product(g: ProductIsometry, p: ProductAny) -> ProductAny:
    """Componentwise action on interior or boundary tuples"""
    check_rank(g, p)
    images = tuple(apply_isometry(h, x) for h, x in zip(g, p))
    if isinstance(p, ProductPoint):
        return ProductPoint(images)
    return ProductBoundaryPoint(images)


def product_shadow_contains(z: ProductPoint, w: ProductPoint, R: float, target: ProductAny) -> bool:
    """Membership in the product of the factor shadows O_R(x_i, y_i)"""
    check_rank(z, w, target)
    return all(shadow_contains(x, y, R, t) for x, y, t in zip(z, w, target))


def visual_endpoint(z: ProductPoint, w: ProductPoint) -> ProductBoundaryPoint:
    """Boundary tuple reached by extending the rays from z through w"""
    check_rank(z, w)
    ends: List[BoundaryPointH2] = []
    for x, y in zip(z, w):
        ends.append(geodesic_through(x, y).end)
    return ProductBoundaryPoint(tuple(ends))


def _component_near(x: H2Point, xi: BoundaryPointH2, tol: float) -> bool:
    if xi.is_infinity:
        return x.im > 1.0 / tol
    return abs(x.z - xi.value) < tol


def converges_to(seq: Sequence[ProductPoint], xi: ProductBoundaryPoint, tol: float) -> bool:
    """Each component enters and stays in the tol-neighbourhood of its limit.

    Staying is checked on the final CONVERGENCE_TAIL share of the sequence.
    """
    if not seq:
        return False
    check_rank(seq[0], xi)
    tail = max(1, int(math.ceil(len(seq) * get_settings().CONVERGENCE_TAIL)))
    return all(
        _component_near(z[i], xi[i], tol)
        for z in seq[-tail:]
        for i in range(len(xi))
    )

