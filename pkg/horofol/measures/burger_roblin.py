"""
Burger-Roblin measures of boxes in the horospherical space H = dZ x R^r
"""
import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatch, InputError
from ..geometry.hyperbolic_plane import busemann_array, mobius_array
from ..geometry.product_space import (
    ProductBoundaryPoint,
    ProductIsometry,
    ProductPoint,
    apply_product,
    busemann_vec,
    check_rank,
)
from .density import AtomicMeasure, BoundaryCell, boundary_angles, cells_mask
from .poincare import LinearForm


@dataclass(frozen=True)
class HoroPoint:
    """Point (xi, u) of H"""
    xi: ProductBoundaryPoint
    u: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'u', tuple(float(v) for v in self.u))
        if len(self.u) != len(self.xi):
            raise DimensionMismatch(
                f"{len(self.xi)} boundary components with {len(self.u)} heights"
            )

    def to_dict(self) -> Dict:
        return {'xi': self.xi.to_json(), 'u': list(self.u)}


@dataclass(frozen=True)
class BoxRegion:
    """Union of boundary cells times a product of intervals in R^r"""
    cells: Tuple[BoundaryCell, ...]
    box: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, 'cells', tuple(self.cells))
        object.__setattr__(self, 'box', tuple((float(lo), float(hi)) for lo, hi in self.box))
        if not self.cells:
            raise InputError("Box region needs at least one boundary cell")
        for lo, hi in self.box:
            if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
                raise InputError(f"Box side [{lo}, {hi}] is empty or unbounded")
        for cell in self.cells:
            if cell.r != len(self.box):
                raise DimensionMismatch(f"Cell of rank {cell.r} in a box of rank {len(self.box)}")

    @classmethod
    def unit(cls, cells: Sequence[BoundaryCell]) -> "BoxRegion":
        return cls(tuple(cells), tuple((0.0, 1.0) for _ in range(cells[0].r)))

    @property
    def r(self) -> int:
        return len(self.box)

    @property
    def volume(self) -> float:
        return math.prod(hi - lo for lo, hi in self.box)

    def to_dict(self) -> Dict:
        return {
            'cells': [c.to_dict() for c in self.cells],
            'box': [list(side) for side in self.box],
        }


def _exponential_integral(rate: float, lo: float, hi: float) -> float:
    """Integral of exp(rate u) over [lo, hi]"""
    if rate == 0.0:
        return hi - lo
    return math.exp(rate * lo) * math.expm1(rate * (hi - lo)) / rate


def box_integral(delta: float, psi: LinearForm, box: Sequence[Tuple[float, float]]) -> float:
    """Integral of exp(delta psi(u)) du over the box, factor by factor"""
    if psi.r != len(box):
        raise DimensionMismatch(f"Form of rank {psi.r} on a box of rank {len(box)}")
    return math.prod(
        _exponential_integral(delta * c, lo, hi) for c, (lo, hi) in zip(psi.coefficients, box)
    )


def br_box_measure(nu: AtomicMeasure, delta: float, psi: LinearForm, region: BoxRegion) -> float:
    """mu(E) for dmu = exp(delta psi(u)) dnu(xi) du"""
    if nu.r != region.r:
        raise DimensionMismatch(f"Measure of rank {nu.r} on a region of rank {region.r}")
    mass = math.fsum(nu.weights[cells_mask(region.cells, nu.angles)])
    return mass * box_integral(delta, psi, region.box)


def translate_box(region: BoxRegion, a: Sequence[float]) -> BoxRegion:
    """Image of the region under T_a: (xi, u) -> (xi, u + a)"""
    if len(a) != region.r:
        raise DimensionMismatch(f"Shift of length {len(a)} for a region of rank {region.r}")
    box = tuple((lo + float(t), hi + float(t)) for (lo, hi), t in zip(region.box, a))
    return BoxRegion(region.cells, box)


def horo_action(g: ProductIsometry, point: HoroPoint, z0: ProductPoint) -> HoroPoint:
    """g (xi, u) = (g xi, u + beta_xi(g^-1 z0, z0))"""
    check_rank(g, point.xi, z0)
    shift = busemann_vec(point.xi, apply_product(g.inverse(), z0), z0)
    return HoroPoint(apply_product(g, point.xi), tuple(np.add(point.u, shift)))


@dataclass
class HoroInvarianceReport:
    """mu(gE) against mu(E) for an atomic Burger-Roblin measure"""
    measure: float
    image_measure: float
    defect: float
    word: str

    def to_dict(self) -> Dict:
        return {
            'measure': self.measure,
            'image_measure': self.image_measure,
            'defect': self.defect,
            'word': self.word,
        }


def horo_invariance_defect(
    nu: AtomicMeasure, delta: float, psi: LinearForm, g: ProductIsometry, region: BoxRegion,
    z0: ProductPoint, word: str = "",
) -> HoroInvarianceReport:
    """Relative change mu(gE)/mu(E) - 1; zero when nu is exactly conformal.

    Each atom xi of E is carried to g xi with its box shifted by
    beta_xi(g^-1 z0, z0), so mu(gE) weights it by exp(delta psi(shift)).
    """
    check_rank(g, z0)
    if nu.r != region.r:
        raise DimensionMismatch(f"Measure of rank {nu.r} on a region of rank {region.r}")
    base = box_integral(delta, psi, region.box)
    inside = cells_mask(region.cells, nu.angles)
    measure = math.fsum(nu.weights[inside]) * base

    # atoms eta with g^-1 eta in E carry the image of E
    g_inv = g.inverse()
    preimages = nu.pushforward_points(g_inv)
    carried = cells_mask(region.cells, boundary_angles(preimages))
    z = np.array([p.z for p in z0])
    moved = mobius_array(g_inv.matrices, z)
    shifts = busemann_array(preimages[carried], moved[None, :], z[None, :])
    factors = np.exp(delta * psi(shifts))
    image = math.fsum(nu.weights[carried] * factors) * base

    defect = image / measure - 1.0 if measure > 0 else math.inf
    return HoroInvarianceReport(measure, image, defect, word)


def shift_ratio(nu: AtomicMeasure, delta: float, psi: LinearForm, region: BoxRegion,
                a: Sequence[float]) -> Tuple[float, float]:
    """Observed and expected mu(T_a E) / mu(E)"""
    before = br_box_measure(nu, delta, psi, region)
    after = br_box_measure(nu, delta, psi, translate_box(region, a))
    expected = math.exp(delta * float(psi(np.asarray(a, dtype=float))))
    return after / before, expected

