"""
Atomic approximations of conformal densities on the product boundary
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import get_settings
from ..errors import DimensionMismatch, EmptyCells, InputError
from ..geometry.hyperbolic_plane import (
    angle_to_boundary,
    boundary_homogeneous,
    boundary_values,
    busemann_array,
    homogeneous_angle,
    mobius_array,
    mobius_boundary,
    ray_endpoints,
)
from ..geometry.product_space import ProductBoundaryPoint, ProductIsometry
from ..groups.ball import Ball, GroupElement, enumerate_ball
from ..groups.group_spec import GroupSpec
from .poincare import LinearForm

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
ATOM_RESOLUTION = 1e-9
MIN_RESIDUAL_CELLS = 4


def boundary_angles(points: np.ndarray) -> np.ndarray:
    """Cayley angles of boundary values, same shape as ``points``"""
    v0, v1 = boundary_homogeneous(points)
    return homogeneous_angle(v0, v1)


@dataclass
class AtomicMeasure:
    """Finitely many weighted atoms on the product boundary"""
    points: np.ndarray
    weights: np.ndarray
    dimension: float
    form: LinearForm
    ball_length: int

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        self.weights = np.asarray(self.weights, dtype=float)
        if len(self.points) != len(self.weights):
            raise DimensionMismatch(f"{len(self.points)} atoms with {len(self.weights)} weights")
        if (self.weights < 0).any():
            raise InputError("Atom weights must be non-negative")

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def r(self) -> int:
        return self.points.shape[1]

    @property
    def total_mass(self) -> float:
        return math.fsum(self.weights)

    @property
    def angles(self) -> np.ndarray:
        return boundary_angles(self.points)

    def atom(self, index: int) -> ProductBoundaryPoint:
        return ProductBoundaryPoint.parse([None if np.isinf(v) else v for v in self.points[index]])

    def pushforward_points(self, g: ProductIsometry) -> np.ndarray:
        """Atom positions moved by g, factor by factor"""
        if len(g) != self.r:
            raise DimensionMismatch(f"Isometry of rank {len(g)} on a measure of rank {self.r}")
        return np.stack(
            [mobius_boundary(g[i].matrix, self.points[:, i]) for i in range(self.r)], axis=1
        )

    def to_dict(self) -> Dict:
        """Convert to dictionary for JSON export; infinity is null"""
        return {
            'dimension': self.dimension,
            'form': self.form.to_list(),
            'ball_length': self.ball_length,
            'atoms': [
                {'xi': [None if np.isinf(v) else float(v) for v in point], 'w': float(w)}
                for point, w in zip(self.points, self.weights)
            ],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "AtomicMeasure":
        points = [[np.inf if v is None else float(v) for v in atom['xi']] for atom in data['atoms']]
        weights = [float(atom['w']) for atom in data['atoms']]
        return cls(np.array(points), np.array(weights), float(data['dimension']),
                   LinearForm(tuple(data['form'])), int(data['ball_length']))


# ---------------------------------------------------------------------------
# Boundary cells

@dataclass(frozen=True)
class BoundaryCell:
    """Product of half-open Cayley-angle intervals [lo, hi), one per factor"""
    intervals: Tuple[Tuple[float, float], ...]
    grid_index: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        for lo, hi in self.intervals:
            if not (0.0 <= lo < hi <= TWO_PI):
                raise InputError(f"Cell interval [{lo}, {hi}) is not a sub-interval of [0, 2pi)")

    @property
    def r(self) -> int:
        return len(self.intervals)

    def contains_angles(self, angles: np.ndarray) -> np.ndarray:
        """Mask of rows of an (n, r) angle array inside the cell"""
        angles = np.atleast_2d(angles)
        if angles.shape[1] != self.r:
            raise DimensionMismatch(f"Cell of rank {self.r} tested on rank {angles.shape[1]}")
        bounds = np.array(self.intervals)
        return ((angles >= bounds[:, 0]) & (angles < bounds[:, 1])).all(axis=1)

    def to_dict(self) -> Dict:
        return {
            'intervals': [list(i) for i in self.intervals],
            'grid_index': list(self.grid_index) if self.grid_index is not None else None,
        }


def cell_layout(cells_per_factor: Optional[int] = None) -> np.ndarray:
    """Edges of the uniform angle grid on one factor"""
    m = get_settings().CELLS_PER_FACTOR if cells_per_factor is None else cells_per_factor
    if m < 1:
        raise InputError(f"Need at least one cell per factor, got {m}")
    return np.linspace(0.0, TWO_PI, m + 1)


def grid_indices(angles: np.ndarray, cells_per_factor: int) -> np.ndarray:
    """Grid index of every angle"""
    width = TWO_PI / cells_per_factor
    return np.minimum((np.asarray(angles) / width).astype(int), cells_per_factor - 1)


def grid_cell(index: Sequence[int], cells_per_factor: int) -> BoundaryCell:
    edges = cell_layout(cells_per_factor)
    intervals = tuple((float(edges[k]), float(edges[k + 1])) for k in index)
    return BoundaryCell(intervals, tuple(int(k) for k in index))


def cell_of(xi: ProductBoundaryPoint, cells_per_factor: Optional[int] = None) -> BoundaryCell:
    """Grid cell containing a boundary tuple"""
    m = get_settings().CELLS_PER_FACTOR if cells_per_factor is None else cells_per_factor
    return grid_cell(grid_indices(xi.angles, m), m)


def cell_center(cell: BoundaryCell) -> ProductBoundaryPoint:
    """Boundary tuple at the angular midpoint of every interval"""
    return ProductBoundaryPoint(
        tuple(angle_to_boundary((lo + hi) / 2.0) for lo, hi in cell.intervals)
    )


def full_boundary_cells(r: int) -> List[BoundaryCell]:
    """The whole product boundary as a single cell"""
    return [BoundaryCell(tuple((0.0, TWO_PI) for _ in range(r)))]


def cells_mask(cells: Sequence[BoundaryCell], angles: np.ndarray) -> np.ndarray:
    """Rows of an angle array lying in the union of the cells"""
    mask = np.zeros(len(np.atleast_2d(angles)), dtype=bool)
    for cell in cells:
        mask |= cell.contains_angles(angles)
    return mask


def cell_mass(nu: AtomicMeasure, cells: Sequence[BoundaryCell]) -> float:
    return math.fsum(nu.weights[cells_mask(cells, nu.angles)])


def _grid_masses(angles: np.ndarray, weights: np.ndarray, m: int) -> Dict[Tuple[int, ...], float]:
    masses: Dict[Tuple[int, ...], float] = {}
    for key, w in zip(map(tuple, grid_indices(angles, m)), weights):
        masses[key] = masses.get(key, 0.0) + float(w)
    return masses


def cell_mass_difference(
    first: AtomicMeasure, second: AtomicMeasure, cells_per_factor: Optional[int] = None
) -> float:
    """Largest difference of grid-cell masses between two atomic measures"""
    if first.r != second.r:
        raise DimensionMismatch(f"Measures of rank {first.r} and {second.r}")
    m = get_settings().CELLS_PER_FACTOR if cells_per_factor is None else cells_per_factor
    one = _grid_masses(first.angles, first.weights, m)
    two = _grid_masses(second.angles, second.weights, m)
    keys = one.keys() | two.keys()
    return max((abs(one.get(k, 0.0) - two.get(k, 0.0)) for k in keys), default=0.0)


# ---------------------------------------------------------------------------
# Densities and conformality

def _merge_atoms(points: np.ndarray, weights: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Sum the weights of atoms that coincide at ATOM_RESOLUTION, in first-seen order"""
    keys = np.round(boundary_angles(points) / ATOM_RESOLUTION).astype(np.int64)
    _, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    merged = np.bincount(inverse, weights=weights, minlength=len(first))
    order = np.argsort(first)
    return points[first[order]], merged[order]


def ps_density(
    spec: GroupSpec, psi: LinearForm, s: float, L: int, workers: int = 1, ball: Ball = None
) -> AtomicMeasure:
    """Normalized orbit sum of exp(-s psi(kappa(g))) at the visual endpoints of g z0"""
    if s <= 0:
        raise InputError(f"Density exponent must be positive, got {s}")
    if L < 2:
        raise InputError(f"Density needs L >= 2, got {L}")
    if psi.r != spec.r:
        raise DimensionMismatch(f"Form of rank {psi.r} for a group acting on {spec.r} factors")
    ball = ball.truncate(L) if ball is not None else enumerate_ball(spec, L, workers)

    # a factor fixing z0 has no visual direction
    moving = (ball.cartan > get_settings().EQUALITY_TOL).all(axis=1)
    index = np.flatnonzero(moving)
    if not index.size:
        raise EmptyCells(f"No element of the {L}-ball moves the basepoint in every factor")
    z0 = np.array([p.z for p in spec.basepoint])
    points = ray_endpoints(z0[None, :], ball.orbit[index])
    weights = np.exp(-s * psi(ball.cartan[index]))

    points, weights = _merge_atoms(points, weights)
    total = math.fsum(weights)
    logger.debug("density at s=%.4f: %d atoms from %d elements", s, len(weights), len(index))
    return AtomicMeasure(points, weights / total, float(s), psi, ball.length)


@dataclass
class ResidualReport:
    """Per-cell comparison of nu(g E) / nu(E) with the conformal factor"""
    residual: float
    word: str
    cells_per_factor: int
    rows: List[Dict] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'residual': self.residual,
            'word': self.word,
            'cells_per_factor': self.cells_per_factor,
            'rows': self.rows,
        }


def conformality_residual(
    spec: GroupSpec, psi: LinearForm, s: float, L: int, g: GroupElement, cells: int,
    workers: int = 1, ball: Ball = None, nu: AtomicMeasure = None,
) -> ResidualReport:
    """Worst |log(nu(gE)/nu(E)) + s psi(beta_c(g^-1 z0, z0))| over grid cells E.

    nu(gE) sums the atoms whose image under g^-1 lies in E; c is the cell
    center. Cells below RESIDUAL_MASS_FLOOR on either side are skipped.
    """
    if cells < MIN_RESIDUAL_CELLS:
        raise InputError(
            f"Residual needs at least {MIN_RESIDUAL_CELLS} cells per factor, got {cells}"
        )
    nu = nu if nu is not None else ps_density(spec, psi, s, L, workers, ball)
    floor = get_settings().RESIDUAL_MASS_FLOOR

    g_inv = g.matrix.inverse()
    masses = _grid_masses(nu.angles, nu.weights, cells)
    images = _grid_masses(boundary_angles(nu.pushforward_points(g_inv)), nu.weights, cells)

    z0 = np.array([p.z for p in spec.basepoint])
    moved = mobius_array(g_inv.matrices, z0)

    rows, worst = [], None
    for cell_id, key in enumerate(sorted(masses.keys() | images.keys())):
        mass, image = masses.get(key, 0.0), images.get(key, 0.0)
        residual = None
        if mass >= floor and image >= floor:
            center = boundary_values(cell_center(grid_cell(key, cells)))
            beta = busemann_array(center, moved, z0)
            residual = abs(math.log(image / mass) + s * float(psi(beta)))
            worst = residual if worst is None else max(worst, residual)
        rows.append({
            'cell_id': cell_id,
            'cell': list(key),
            'mass': mass,
            'image_mass': image,
            'residual': residual,
        })
    if worst is None:
        raise EmptyCells(f"No cell carries mass {floor} for both nu and its image under {g.word}")
    return ResidualReport(worst, g.word, cells, rows)
