"""
Upper half-plane model of H^2: points, boundary, geodesics, isometries,
nearest-point projections, Busemann cocycles and shadows.

Geodesic parameters use a canonical origin: the apex of a semicircle, or
x + i for the vertical line through x. Every geodesic is oriented from
``start`` (parameter -inf) to ``end`` (parameter +inf).
"""
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import NamedTuple, Optional, Tuple, Union

import numpy as np

from ..config import get_settings
from ..errors import (
    CoincidentEndpoints,
    DegenerateSegment,
    InvalidIsometry,
    InvalidPoint,
    NotLoxodromic,
)


@dataclass(frozen=True)
class H2Point:
    """Point of the upper half-plane, z = re + i*im with im > 0"""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)) or self.im <= 0:
            raise InvalidPoint(f"Not a point of the upper half-plane: ({self.re}, {self.im})")

    @classmethod
    def from_complex(cls, z: complex) -> "H2Point":
        return cls(float(z.real), float(z.imag))

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    def to_list(self) -> list:
        return [self.re, self.im]


@dataclass(frozen=True)
class BoundaryPointH2:
    """Point of the real line, or the point at infinity when ``value`` is None"""

    value: Optional[float] = None

    def __post_init__(self):
        if self.value is not None and not math.isfinite(self.value):
            raise InvalidPoint(f"Finite boundary point expected, got {self.value}")

    @classmethod
    def finite(cls, x: float) -> "BoundaryPointH2":
        return cls(float(x))

    @classmethod
    def infinity(cls) -> "BoundaryPointH2":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    @property
    def homogeneous(self) -> Tuple[float, float]:
        """Projective coordinates (x, 1), or (1, 0) at infinity"""
        return (1.0, 0.0) if self.value is None else (self.value, 1.0)

    @property
    def angle(self) -> float:
        """Angle of the image on the unit circle under z -> (z - i)/(z + i)"""
        return float(homogeneous_angle(*self.homogeneous))

    def close_to(self, other: "BoundaryPointH2", tol: float) -> bool:
        """Angular comparison, so infinity is handled like any other point"""
        gap = abs(self.angle - other.angle) % (2 * math.pi)
        return min(gap, 2 * math.pi - gap) <= tol

    def to_json(self) -> Optional[float]:
        return self.value

    def __repr__(self) -> str:
        return "BoundaryPointH2(inf)" if self.value is None else f"BoundaryPointH2({self.value})"


INFINITY = BoundaryPointH2(None)

AnyPoint = Union[H2Point, BoundaryPointH2]


class IsometryType(Enum):
    """Classification of orientation-preserving isometries"""
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class IsometryH2:
    """Element of PSL(2, R) acting by z -> (az + b)/(cz + d)"""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        entries = (self.a, self.b, self.c, self.d)
        if not all(math.isfinite(v) for v in entries):
            raise InvalidIsometry(f"Non-finite matrix entries: {entries}")
        # determinant error grows with the square of the entries for long products
        scale = max(1.0, max(abs(v) for v in entries)) ** 2
        if abs(self.a * self.d - self.b * self.c - 1.0) > get_settings().ERROR_TOL * scale * 1e3:
            raise InvalidIsometry(f"Determinant {self.a * self.d - self.b * self.c} is not 1")

    @classmethod
    def from_array(cls, m) -> "IsometryH2":
        m = np.asarray(m, dtype=float)
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))

    @classmethod
    def normalized_from(cls, m) -> "IsometryH2":
        """Scale a matrix of positive determinant to determinant 1"""
        m = np.asarray(m, dtype=float)
        det = float(np.linalg.det(m))
        if det <= 0:
            raise InvalidIsometry(f"Matrix with determinant {det} does not preserve the half-plane")
        return cls.from_array(m / math.sqrt(det))

    @classmethod
    def identity(cls) -> "IsometryH2":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def translation(cls, t: float) -> "IsometryH2":
        """Translation by t along the imaginary axis, towards infinity"""
        return cls(math.exp(t / 2), 0.0, 0.0, math.exp(-t / 2))

    @classmethod
    def rotation(cls, theta: float) -> "IsometryH2":
        """Rotation by theta about i"""
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        return cls(c, s, -s, c)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def trace(self) -> float:
        return self.a + self.d

    def __matmul__(self, other: "IsometryH2") -> "IsometryH2":
        return IsometryH2.from_array(self.matrix @ other.matrix)

    def inverse(self) -> "IsometryH2":
        return IsometryH2(self.d, -self.b, -self.c, self.a)

    def power(self, k: int) -> "IsometryH2":
        base = self if k >= 0 else self.inverse()
        return IsometryH2.from_array(np.linalg.matrix_power(base.matrix, abs(k)))

    def conjugate_by(self, h: "IsometryH2") -> "IsometryH2":
        """h g h^-1"""
        return h @ self @ h.inverse()

    def normalized(self) -> Tuple[float, float, float, float]:
        """Representative with the first nonzero entry positive"""
        entries = (self.a, self.b, self.c, self.d)
        for v in entries:
            if v != 0.0:
                return entries if v > 0 else tuple(-e for e in entries)
        return entries

    def equals(self, other: "IsometryH2", tol: Optional[float] = None) -> bool:
        """Equality in PSL(2, R)"""
        tol = get_settings().EQUALITY_TOL if tol is None else tol
        mine, theirs = self.normalized(), other.normalized()
        return max(abs(u - v) for u, v in zip(mine, theirs)) <= tol

    def __call__(self, p: AnyPoint) -> AnyPoint:
        return apply_isometry(self, p)

    def to_list(self) -> list:
        return [[self.a, self.b], [self.c, self.d]]


# ---------------------------------------------------------------------------
# Vectorised helpers on complex arrays

def mobius_array(m, z):
    """Apply a 2x2 matrix of determinant 1 to complex points, keeping im exact"""
    m = np.asarray(m, dtype=float)
    z = np.asarray(z, dtype=complex)
    a, b, c, d = m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1]
    denom = c * z + d
    w = (a * z + b) / denom
    # Im((az+b)/(cz+d)) = Im z / |cz+d|^2 without cancellation near the boundary
    return w.real + 1j * (z.imag / np.abs(denom) ** 2)


def dist_array(z, w):
    """Hyperbolic distance between arrays of complex points"""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return 2.0 * np.arcsinh(np.abs(z - w) / (2.0 * np.sqrt(z.imag * w.imag)))


def homogeneous_angle(v0, v1):
    """Angle in [0, 2pi) of the boundary point [v0 : v1] on the unit circle"""
    v0 = np.asarray(v0, dtype=float)
    v1 = np.asarray(v1, dtype=float)
    # (x - i)/(x + i) with x = v0/v1 equals (v0 - i v1)^2 / (v0^2 + v1^2)
    angle = np.mod(np.arctan2(-2.0 * v0 * v1, v0 * v0 - v1 * v1), 2.0 * np.pi)
    # tiny negative angles round up to 2pi
    return np.where(angle >= 2.0 * np.pi, 0.0, angle)


def angle_to_boundary(theta: float) -> BoundaryPointH2:
    """Inverse of the Cayley angle: x = -cot(theta/2), infinity at 0"""
    half = math.fmod(theta, 2 * math.pi) / 2
    s = math.sin(half)
    if abs(s) < 1e-15:
        return INFINITY
    return BoundaryPointH2.finite(-math.cos(half) / s)


def segment_distance(a, b, p):
    """Distance from points p to the segments [a, b], all complex arrays"""
    a, b, p = np.broadcast_arrays(
        np.asarray(a, dtype=complex), np.asarray(b, dtype=complex), np.asarray(p, dtype=complex)
    )
    # move a to i
    bb = (b - a.real) / a.imag
    pp = (p - a.real) / a.imag
    # rotate about i (a rotation of the Cayley disk) until b lies above i
    wb = (bb - 1j) / (bb + 1j)
    phase = np.where(np.abs(wb) > 0, np.exp(-1j * np.angle(wb)), 1.0)
    wp = (pp - 1j) / (pp + 1j) * phase
    u = 1j * (1 + wp) / (1 - wp)
    u = u.real + 1j * np.abs(u.imag)
    length = dist_array(a, b)
    t = np.clip(np.log(np.abs(u)), 0.0, length)
    return dist_array(u, 1j * np.exp(t))


# ---------------------------------------------------------------------------
# Points, distances, isometries

def dist(x: H2Point, y: H2Point) -> float:
    """Hyperbolic distance"""
    return 2.0 * math.asinh(abs(x.z - y.z) / (2.0 * math.sqrt(x.im * y.im)))


def apply_isometry(g: IsometryH2, p: AnyPoint) -> AnyPoint:
    """Action on interior and boundary points"""
    if isinstance(p, H2Point):
        return H2Point.from_complex(complex(mobius_array(g.matrix, p.z)))
    v0, v1 = p.homogeneous
    w0, w1 = g.a * v0 + g.b * v1, g.c * v0 + g.d * v1
    if abs(w1) <= 1e-15 * abs(w0):
        return INFINITY
    return BoundaryPointH2.finite(w0 / w1)


def classify_isometry(g: IsometryH2) -> IsometryType:
    """Classify by |trace|"""
    tol = get_settings().TRACE_TOL
    tr = abs(g.trace)
    if tr < 2.0 - tol:
        return IsometryType.ELLIPTIC
    if tr <= 2.0 + tol:
        return IsometryType.IDENTITY if g.equals(IsometryH2.identity()) else IsometryType.PARABOLIC
    return IsometryType.LOXODROMIC


def _dominant_eigenvector(g: IsometryH2) -> Tuple[float, float, float]:
    tr = g.trace
    root = math.sqrt(max(tr * tr - 4.0, 0.0))
    lam = math.copysign((abs(tr) + root) / 2.0, tr) if tr != 0 else 1.0
    first = (g.b, lam - g.a)
    second = (lam - g.d, g.c)
    v = first if math.hypot(*first) >= math.hypot(*second) else second
    return lam, v[0], v[1]


def _homogeneous_to_boundary(v0: float, v1: float) -> BoundaryPointH2:
    if abs(v1) <= 1e-15 * abs(v0):
        return INFINITY
    return BoundaryPointH2.finite(v0 / v1)


def fixed_points(g: IsometryH2) -> Tuple[BoundaryPointH2, ...]:
    """Boundary fixed points: (attracting, repelling) for loxodromics, one for parabolics"""
    kind = classify_isometry(g)
    if kind is IsometryType.LOXODROMIC:
        _, v0, v1 = _dominant_eigenvector(g)
        attracting = _homogeneous_to_boundary(v0, v1)
        _, w0, w1 = _dominant_eigenvector(g.inverse())
        repelling = _homogeneous_to_boundary(w0, w1)
        return attracting, repelling
    if kind is IsometryType.PARABOLIC:
        if abs(g.c) <= 1e-15:
            return (INFINITY,)
        return (BoundaryPointH2.finite((g.a - g.d) / (2.0 * g.c)),)
    return ()


# ---------------------------------------------------------------------------
# Geodesics, rays and segments

def _normalizer(start: BoundaryPointH2, end: BoundaryPointH2) -> np.ndarray:
    """Matrix sending start -> 0, end -> infinity and the canonical origin -> i"""
    if end.is_infinity:
        m = np.array([[1.0, -start.value], [0.0, 1.0]])
    elif start.is_infinity:
        m = np.array([[0.0, -1.0], [1.0, -end.value]])
    else:
        p, q = start.value, end.value
        m = np.array([[1.0, -p], [1.0, -q]])
        if p < q:
            m[0] *= -1.0
        apex = complex((p + q) / 2.0, abs(q - p) / 2.0)
        w = (m[0, 0] * apex + m[0, 1]) / (m[1, 0] * apex + m[1, 1])
        m[0] /= abs(w)
        m /= math.sqrt(np.linalg.det(m))
    return m


@dataclass(frozen=True)
class GeodesicH2:
    """Bi-infinite unit-speed geodesic from ``start`` to ``end``"""

    start: BoundaryPointH2
    end: BoundaryPointH2

    def __post_init__(self):
        if self.start == self.end:
            raise CoincidentEndpoints(f"Geodesic endpoints coincide at {self.start}")

    @cached_property
    def normalizer(self) -> np.ndarray:
        return _normalizer(self.start, self.end)

    @cached_property
    def denormalizer(self) -> np.ndarray:
        m = self.normalizer
        return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])

    @property
    def origin(self) -> H2Point:
        return self.point_at(0.0)

    def point_at(self, t: float) -> H2Point:
        return H2Point.from_complex(complex(self.points_at(t)))

    def points_at(self, ts):
        """Points gamma(t) as complex numbers"""
        return mobius_array(self.denormalizer, 1j * np.exp(np.asarray(ts, dtype=float)))

    def param_of(self, x: H2Point) -> float:
        """Parameter of the nearest-point projection of x"""
        return float(self.params_of(x.z))

    def params_of(self, zs):
        return np.log(np.abs(mobius_array(self.normalizer, zs)))

    def boundary_param(self, xi: BoundaryPointH2) -> float:
        """Parameter of the foot of the perpendicular from a boundary point"""
        v0, v1 = xi.homogeneous
        m = self.normalizer
        w0, w1 = m[0, 0] * v0 + m[0, 1] * v1, m[1, 0] * v0 + m[1, 1] * v1
        if w0 == 0.0:
            return -math.inf
        if w1 == 0.0:
            return math.inf
        return math.log(abs(w0 / w1))

    def boundary_params(self, v0, v1):
        """boundary_param for arrays of projective coordinates [v0 : v1]"""
        m = self.normalizer
        w0 = m[0, 0] * v0 + m[0, 1] * v1
        w1 = m[1, 0] * v0 + m[1, 1] * v1
        with np.errstate(divide="ignore"):
            return np.log(np.abs(w0)) - np.log(np.abs(w1))

    def reversed(self) -> "GeodesicH2":
        return GeodesicH2(self.end, self.start)

    def contains(self, x: H2Point, tol: float = 1e-9) -> bool:
        u = complex(mobius_array(self.normalizer, x.z))
        return abs(u.real) <= tol * abs(u)


@dataclass(frozen=True)
class RayH2:
    """Geodesic ray gamma([t0, +inf)) ending at ``geodesic.end``"""

    geodesic: GeodesicH2
    t0: float

    @classmethod
    def from_point(cls, x: H2Point, xi: BoundaryPointH2) -> "RayH2":
        geodesic = geodesic_from_point(x, xi)
        return cls(geodesic, geodesic.param_of(x))

    @property
    def base(self) -> H2Point:
        return self.geodesic.point_at(self.t0)

    @property
    def end(self) -> BoundaryPointH2:
        return self.geodesic.end

    def point_at(self, s: float) -> H2Point:
        """Point at arclength s >= 0 from the base"""
        return self.geodesic.point_at(self.t0 + s)


@dataclass(frozen=True)
class SegmentH2:
    """Compact geodesic segment [start, end]"""

    start: H2Point
    end: H2Point

    @property
    def is_degenerate(self) -> bool:
        return self.start == self.end

    @cached_property
    def geodesic(self) -> GeodesicH2:
        if self.is_degenerate:
            raise DegenerateSegment(f"Segment collapses to {self.start}")
        return geodesic_through(self.start, self.end)

    @cached_property
    def t0(self) -> float:
        return self.geodesic.param_of(self.start)

    @property
    def length(self) -> float:
        return dist(self.start, self.end)

    def reversed(self) -> "SegmentH2":
        return SegmentH2(self.end, self.start)

    def point_at(self, s: float) -> H2Point:
        """Point at arclength s from the start, clamped to the segment"""
        if self.is_degenerate:
            return self.start
        s = min(max(s, 0.0), self.length)
        return self.geodesic.point_at(self.t0 + s)

    def sample(self, step: Optional[float] = None):
        """Complex sample points at arclength spacing at most ``step``, ends included"""
        step = get_settings().SAMPLE_STEP if step is None else step
        if self.is_degenerate:
            return np.array([self.start.z])
        count = max(2, int(math.ceil(self.length / step)) + 1)
        return self.geodesic.points_at(self.t0 + np.linspace(0.0, self.length, count))


Path = Union[GeodesicH2, RayH2, SegmentH2]


def geodesic_through(x: H2Point, y: H2Point) -> GeodesicH2:
    """Full geodesic through two distinct interior points, oriented from x to y"""
    if x == y:
        raise DegenerateSegment(f"No unique geodesic through {x} twice")
    scale = max(1.0, abs(x.z), abs(y.z))
    if abs(x.re - y.re) <= 1e-13 * scale:
        if y.im > x.im:
            return GeodesicH2(BoundaryPointH2.finite(x.re), INFINITY)
        return GeodesicH2(INFINITY, BoundaryPointH2.finite(x.re))
    center = (abs(x.z) ** 2 - abs(y.z) ** 2) / (2.0 * (x.re - y.re))
    radius = abs(x.z - center)
    left = BoundaryPointH2.finite(center - radius)
    right = BoundaryPointH2.finite(center + radius)
    return GeodesicH2(left, right) if y.re > x.re else GeodesicH2(right, left)


def geodesic_from_point(x: H2Point, xi: BoundaryPointH2) -> GeodesicH2:
    """Full geodesic through x ending at xi"""
    if xi.is_infinity:
        return GeodesicH2(BoundaryPointH2.finite(x.re), INFINITY)
    scale = max(1.0, abs(x.z), abs(xi.value))
    if abs(x.re - xi.value) <= 1e-13 * scale:
        return GeodesicH2(INFINITY, xi)
    center = (abs(x.z) ** 2 - xi.value ** 2) / (2.0 * (x.re - xi.value))
    return GeodesicH2(BoundaryPointH2.finite(2.0 * center - xi.value), xi)


def geodesic_between(x: AnyPoint, y: AnyPoint) -> Path:
    """Geodesic, ray or segment joining two points of the compactification"""
    x_inside, y_inside = isinstance(x, H2Point), isinstance(y, H2Point)
    if x_inside and y_inside:
        return SegmentH2(x, y)
    if x_inside:
        return RayH2.from_point(x, y)
    if y_inside:
        return RayH2.from_point(y, x)
    if x == y:
        raise CoincidentEndpoints(f"Geodesic endpoints coincide at {x}")
    return GeodesicH2(x, y)


def project_to_geodesic(path: Path, x: H2Point) -> Tuple[H2Point, float]:
    """Nearest point of the path to x and its parameter.

    For a full geodesic the parameter is the canonical coordinate; for rays and
    segments it is the arclength from the base point.
    """
    if isinstance(path, GeodesicH2):
        t = path.param_of(x)
        return path.point_at(t), t
    if isinstance(path, RayH2):
        s = max(path.geodesic.param_of(x) - path.t0, 0.0)
        return path.point_at(s), s
    if path.is_degenerate:
        return path.start, 0.0
    s = min(max(path.geodesic.param_of(x) - path.t0, 0.0), path.length)
    return path.point_at(s), s


def distance_to_path(path: Path, y: H2Point) -> float:
    foot, _ = project_to_geodesic(path, y)
    return dist(foot, y)


# ---------------------------------------------------------------------------
# Busemann cocycles, isometry data, shadows

def busemann(xi: BoundaryPointH2, x: H2Point, y: H2Point) -> float:
    """beta_xi(x, y) = lim d(x, z) - d(y, z) as z -> xi, in closed form"""
    if xi.is_infinity:
        return math.log(y.im) - math.log(x.im)
    return (
        math.log(y.im) - 2.0 * math.log(abs(y.z - xi.value))
        - math.log(x.im) + 2.0 * math.log(abs(x.z - xi.value))
    )


def busemann_array(xi, x, y):
    """busemann for arrays: xi real with np.inf for infinity, x and y complex"""
    xi = np.asarray(xi, dtype=float)
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    at_infinity = np.isinf(xi)
    finite_xi = np.where(at_infinity, 0.0, xi)
    vertical = np.log(y.imag) - np.log(x.imag)
    correction = 2.0 * (np.log(np.abs(x - finite_xi)) - np.log(np.abs(y - finite_xi)))
    return np.where(at_infinity, vertical, vertical + correction)


def boundary_values(points) -> np.ndarray:
    """Real coordinates of boundary points, np.inf standing for infinity"""
    return np.array([np.inf if p.is_infinity else p.value for p in points], dtype=float)


def boundary_homogeneous(values):
    """Projective coordinates [v0 : v1] of real boundary values, np.inf allowed"""
    values = np.asarray(values, dtype=float)
    at_infinity = np.isinf(values)
    return np.where(at_infinity, 1.0, values), np.where(at_infinity, 0.0, 1.0)


def mobius_boundary(m, values):
    """Action of matrices on real boundary values, np.inf in and out for infinity"""
    m = np.asarray(m, dtype=float)
    v0, v1 = boundary_homogeneous(values)
    w0 = m[..., 0, 0] * v0 + m[..., 0, 1] * v1
    w1 = m[..., 1, 0] * v0 + m[..., 1, 1] * v1
    at_infinity = np.abs(w1) <= 1e-15 * np.abs(w0)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(at_infinity, np.inf, w0 / np.where(at_infinity, 1.0, w1))


def ray_endpoints(x, y):
    """Boundary values hit by the rays from x through y, np.inf for infinity"""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=complex), np.asarray(y, dtype=complex))
    scale = np.maximum(1.0, np.maximum(np.abs(x), np.abs(y)))
    gap = x.real - y.real
    vertical = np.abs(gap) <= 1e-13 * scale
    safe_gap = np.where(vertical, 1.0, gap)
    center = (np.abs(x) ** 2 - np.abs(y) ** 2) / (2.0 * safe_gap)
    radius = np.abs(x - center)
    circle_end = np.where(y.real > x.real, center + radius, center - radius)
    vertical_end = np.where(y.imag > x.imag, np.inf, x.real)
    return np.where(vertical, vertical_end, circle_end)


def busemann_limit(xi: BoundaryPointH2, x: H2Point, y: H2Point, t: Optional[float] = None) -> float:
    """Finite-ray approximation d(x, z_t) - d(y, z_t) along the ray from x to xi"""
    t = get_settings().LIMIT_RAY_T if t is None else t
    z = RayH2.from_point(x, xi).point_at(t)
    return dist(x, z) - dist(y, z)


class LoxodromicAxis(NamedTuple):
    """Translation length, oriented axis and boundary fixed points"""
    tau: float
    axis: GeodesicH2
    attracting: BoundaryPointH2
    repelling: BoundaryPointH2


def translation_length_axis(g: IsometryH2) -> LoxodromicAxis:
    """tau = 2 arccosh(|tr g|/2); g shifts the axis parameter by +tau"""
    if classify_isometry(g) is not IsometryType.LOXODROMIC:
        raise NotLoxodromic(f"|trace| = {abs(g.trace):.12g} is not above 2")
    tau = 2.0 * math.acosh(abs(g.trace) / 2.0)
    attracting, repelling = fixed_points(g)
    return LoxodromicAxis(tau, GeodesicH2(repelling, attracting), attracting, repelling)


def min_displacement(g: IsometryH2) -> float:
    """inf over x of d(x, gx)"""
    if classify_isometry(g) is IsometryType.LOXODROMIC:
        return translation_length_axis(g).tau
    return 0.0


def are_independent(g: IsometryH2, h: IsometryH2, tol: float = 1e-6) -> bool:
    """Two loxodromics whose fixed point pairs are disjoint"""
    first, second = translation_length_axis(g), translation_length_axis(h)
    ends_g = (first.attracting, first.repelling)
    ends_h = (second.attracting, second.repelling)
    return not any(p.close_to(q, tol) for p in ends_g for q in ends_h)


def shadow_contains(x: H2Point, y: H2Point, R: float, w: AnyPoint) -> bool:
    """w in O_R(x, y): the geodesic from x to w passes within R of y"""
    if isinstance(w, H2Point):
        path: Path = SegmentH2(x, w)
    else:
        path = RayH2.from_point(x, w)
    return distance_to_path(path, y) < R


def hausdorff_distance(first: SegmentH2, second: SegmentH2, step: Optional[float] = None) -> float:
    """Hausdorff distance of two compact segments, estimated by dense sampling"""
    p = first.sample(step)
    q = second.sample(step)
    one = segment_distance(second.start.z, second.end.z, p).max()
    two = segment_distance(first.start.z, first.end.z, q).max()
    return float(max(one, two))


# Distance claimed for the right-angle vertex of a pi/2-0-0 triangle
QUOTED_IDEAL_TRIANGLE_HEIGHT = 2.0 * math.atanh(1.0 - 1.0 / math.sqrt(2.0))


def right_angle_ideal_triangle_height() -> float:
    """Distance from i to the side joining 1 and infinity of the triangle (i, 1, inf)"""
    opposite = GeodesicH2(BoundaryPointH2.finite(1.0), INFINITY)
    vertex = H2Point(0.0, 1.0)
    foot, _ = project_to_geodesic(opposite, vertex)
    return dist(vertex, foot)
