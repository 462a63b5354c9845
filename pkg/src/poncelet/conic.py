"""Planar primitives: points, ellipses, circles, triangles, general conics
and affine maps.

Everything here is immutable.  Angles are radians, lengths are whatever
unit the caller uses (the paper's examples are unit-scale).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DegenerateTriangle,
    IndeterminateConic,
    NotALine,
    SingularMap,
    TiltNotSupported,
)


class Point2(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point2(self.x - other[0], self.y - other[1])

    def scaled(self, k: float) -> "Point2":
        return Point2(k * self.x, k * self.y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


ORIGIN = Point2(0.0, 0.0)


def as_point(p) -> Point2:
    if isinstance(p, Point2):
        return p
    if isinstance(p, complex):
        return Point2(p.real, p.imag)
    x, y = p
    x, y = float(x), float(y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite point ({x}, {y})")
    return Point2(x, y)


def distance(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _wrap_half_turn(angle: float) -> float:
    """Map an axis direction to (-pi/2, pi/2]."""
    angle = math.fmod(angle, math.pi)
    if angle <= -math.pi / 2:
        angle += math.pi
    elif angle > math.pi / 2:
        angle -= math.pi
    return angle


# ---------------------------------------------------------------------------
# General conics
# ---------------------------------------------------------------------------


def _normalize_coeffs(coeffs: Sequence[float]) -> tuple[float, ...]:
    v = np.asarray(coeffs, dtype=float).reshape(6)
    n = float(np.linalg.norm(v))
    if n == 0.0 or not math.isfinite(n):
        raise IndeterminateConic("conic coefficients are all zero or non-finite")
    v = v / n
    # sign convention: first clearly nonzero entry among A, B, C, D, E, F is positive
    for x in v:
        if abs(x) > 1e-14:
            if x < 0:
                v = -v
            break
    return tuple(float(x) for x in v)


@dataclass(frozen=True)
class GeneralConic:
    """``A x^2 + B xy + C y^2 + D x + E y + F = 0`` with unit-norm coefficients."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize_coeffs(self.coeffs))

    @classmethod
    def from_coefficients(cls, A, B, C, D, E, F) -> "GeneralConic":
        return cls((A, B, C, D, E, F))

    @classmethod
    def line(cls, u: float, v: float, w: float) -> "GeneralConic":
        """The line ``u x + v y + w = 0``."""
        return cls((0.0, 0.0, 0.0, u, v, w))

    @classmethod
    def line_through(cls, p, q) -> "GeneralConic":
        (x1, y1), (x2, y2) = p, q
        return cls.line(y1 - y2, x2 - x1, x1 * y2 - x2 * y1)

    @classmethod
    def from_matrix(cls, M: np.ndarray) -> "GeneralConic":
        M = np.asarray(M, dtype=float)
        return cls((M[0, 0], 2 * M[0, 1], M[1, 1], 2 * M[0, 2], 2 * M[1, 2], M[2, 2]))

    @property
    def matrix(self) -> np.ndarray:
        A, B, C, D, E, F = self.coeffs
        return np.array([[A, B / 2, D / 2], [B / 2, C, E / 2], [D / 2, E / 2, F]])

    @property
    def quadratic_norm(self) -> float:
        A, B, C = self.coeffs[:3]
        return math.sqrt(A * A + B * B + C * C)

    def is_line(self, tol: float = 1e-12) -> bool:
        return self.quadratic_norm <= tol and math.hypot(*self.coeffs[3:5]) > tol

    def evaluate(self, x, y):
        A, B, C, D, E, F = self.coeffs
        return A * x * x + B * x * y + C * y * y + D * x + E * y + F


def line_point_distance(line: GeneralConic, p, tol: float = 1e-12) -> float:
    """Unsigned Euclidean distance from ``p`` to a line given as a conic."""
    if not isinstance(line, GeneralConic):
        line = GeneralConic.line(*line)
    if not line.is_line(tol):
        raise NotALine("conic has a non-zero quadratic part")
    _, _, _, D, E, F = line.coeffs
    return abs(D * p[0] + E * p[1] + F) / math.hypot(D, E)


class ConicKind(str, enum.Enum):
    POINT = "Point"
    CIRCLE = "Circle"
    ELLIPSE = "Ellipse"
    PARABOLA = "Parabola"
    HYPERBOLA = "Hyperbola"
    LINE = "Line"
    LINE_PAIR = "LinePair"
    EMPTY = "Empty"


@dataclass(frozen=True)
class ConicClassification:
    kind: ConicKind
    center: Point2 | None = None
    semi_axes: tuple[float, float] | None = None
    tilt: float | None = None

    def to_ellipse(self) -> "Ellipse":
        if self.kind not in (ConicKind.ELLIPSE, ConicKind.CIRCLE):
            raise ValueError(f"{self.kind.value} is not an ellipse")
        a, b = self.semi_axes
        return Ellipse(a, b, self.center, self.tilt)


def conic_classify(q: GeneralConic, tol: float = 1e-9) -> ConicClassification:
    """Classify a normalized conic by its discriminant and the rank of its matrix."""
    A, B, C, D, E, F = q.coeffs
    if max(abs(x) for x in q.coeffs) <= tol:
        raise IndeterminateConic("all coefficients below tolerance")
    if q.quadratic_norm <= tol:
        if math.hypot(D, E) <= tol:
            raise IndeterminateConic("only a constant term survives")
        return ConicClassification(ConicKind.LINE)
    disc = B * B - 4 * A * C
    M = q.matrix
    if abs(disc) <= tol:
        det = float(np.linalg.det(M))
        kind = ConicKind.LINE_PAIR if abs(det) <= tol else ConicKind.PARABOLA
        return ConicClassification(kind)
    Q = M[:2, :2]
    ctr = np.linalg.solve(Q, -M[:2, 2])
    f0 = float(F + 0.5 * (D * ctr[0] + E * ctr[1]))
    center = Point2(float(ctr[0]), float(ctr[1]))
    evals, evecs = np.linalg.eigh(Q)
    if disc > 0:
        if abs(f0) <= tol:
            return ConicClassification(ConicKind.LINE_PAIR, center)
        return ConicClassification(ConicKind.HYPERBOLA, center)
    # central and definite
    if abs(f0) <= tol * max(1.0, float(np.max(np.abs(evals)))):
        return ConicClassification(ConicKind.POINT, center, (0.0, 0.0), 0.0)
    if f0 * evals[0] > 0:
        return ConicClassification(ConicKind.EMPTY, center)
    axes = np.sqrt(-f0 / evals)
    order = np.argsort(-axes)
    major, minor = float(axes[order[0]]), float(axes[order[1]])
    vx, vy = evecs[:, order[0]]
    tilt = _wrap_half_turn(math.atan2(vy, vx))
    if abs(evals[1] - evals[0]) <= tol * max(abs(evals[0]), abs(evals[1])):
        return ConicClassification(ConicKind.CIRCLE, center, (major, major), 0.0)
    return ConicClassification(ConicKind.ELLIPSE, center, (major, minor), tilt)


# ---------------------------------------------------------------------------
# Ellipses and circles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ellipse:
    a: float
    b: float
    center: Point2 = ORIGIN
    tilt: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        a, b = float(self.a), float(self.b)
        if not (b > 0):
            raise ValueError(f"semi-minor axis must be positive, got {b}")
        if b > a:
            if b - a > 1e-12 * b:
                raise ValueError(f"need a >= b, got a={a}, b={b}; use Ellipse.from_axes")
            a = b
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "tilt", float(self.tilt))

    @classmethod
    def from_axes(cls, along_x: float, along_y: float, center=ORIGIN) -> "Ellipse":
        """Axis-aligned ellipse given its semi-axes along x and y, in any order."""
        if along_y > along_x:
            return cls(along_y, along_x, center, math.pi / 2)
        return cls(along_x, along_y, center, 0.0)

    @property
    def c(self) -> float:
        return math.sqrt(max(self.a * self.a - self.b * self.b, 0.0))

    @property
    def is_circle(self) -> bool:
        return self.a == self.b

    @property
    def is_canonical(self) -> bool:
        return self.center == ORIGIN and self.tilt == 0.0

    def require_canonical(self, what: str = "operation") -> None:
        if self.tilt != 0.0 or self.center != ORIGIN:
            raise TiltNotSupported(f"{what} requires an origin-centred, untilted outer ellipse")

    @property
    def axis_along_x(self) -> float:
        """Semi-axis length measured along the global x direction (untilted or quarter-turn only)."""
        return self.b if _is_quarter_turn(self.tilt) else self.a

    @property
    def axis_along_y(self) -> float:
        return self.a if _is_quarter_turn(self.tilt) else self.b

    def _local(self, x, y):
        ct, st = math.cos(self.tilt), math.sin(self.tilt)
        dx, dy = x - self.center.x, y - self.center.y
        return ct * dx + st * dy, -st * dx + ct * dy

    def implicit(self, p) -> float:
        """``(x'/a)^2 + (y'/b)^2 - 1`` in the ellipse's own frame."""
        u, v = self._local(p[0], p[1])
        return (u / self.a) ** 2 + (v / self.b) ** 2 - 1.0

    def contains(self, p, strict: bool = True) -> bool:
        val = self.implicit(p)
        return val < 0 if strict else val <= 0

    def point(self, t: float) -> Point2:
        return ellipse_point(self, t)

    def sample(self, n: int) -> np.ndarray:
        t = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
        ct, st = math.cos(self.tilt), math.sin(self.tilt)
        u, v = self.a * np.cos(t), self.b * np.sin(t)
        return np.column_stack(
            [self.center.x + ct * u - st * v, self.center.y + st * u + ct * v]
        )

    def foci(self) -> tuple[Point2, Point2]:
        c = self.c
        dx, dy = c * math.cos(self.tilt), c * math.sin(self.tilt)
        return (
            Point2(self.center.x + dx, self.center.y + dy),
            Point2(self.center.x - dx, self.center.y - dy),
        )

    def to_conic(self) -> GeneralConic:
        ct, st = math.cos(self.tilt), math.sin(self.tilt)
        ia2, ib2 = 1 / self.a**2, 1 / self.b**2
        A = ct * ct * ia2 + st * st * ib2
        C = st * st * ia2 + ct * ct * ib2
        B = 2 * ct * st * (ia2 - ib2)
        x0, y0 = self.center
        D = -2 * A * x0 - B * y0
        E = -B * x0 - 2 * C * y0
        F = A * x0 * x0 + B * x0 * y0 + C * y0 * y0 - 1
        return GeneralConic((A, B, C, D, E, F))

    def bbox(self) -> tuple[float, float, float, float]:
        ct, st = math.cos(self.tilt), math.sin(self.tilt)
        hx = math.hypot(self.a * ct, self.b * st)
        hy = math.hypot(self.a * st, self.b * ct)
        return (self.center.x - hx, self.center.y - hy, self.center.x + hx, self.center.y + hy)


def _is_quarter_turn(angle: float) -> bool:
    return abs(abs(_wrap_half_turn(angle)) - math.pi / 2) < 1e-12


@dataclass(frozen=True)
class Circle:
    center: Point2
    r: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not (self.r > 0):
            raise ValueError(f"circle radius must be positive, got {self.r}")
        object.__setattr__(self, "r", float(self.r))

    def to_ellipse(self) -> Ellipse:
        return Ellipse(self.r, self.r, self.center, 0.0)

    def to_conic(self) -> GeneralConic:
        return self.to_ellipse().to_conic()

    def implicit(self, p) -> float:
        return (distance(p, self.center) / self.r) ** 2 - 1.0


def as_ellipse(conic) -> Ellipse:
    if isinstance(conic, Ellipse):
        return conic
    if isinstance(conic, Circle):
        return conic.to_ellipse()
    raise TypeError(f"expected Ellipse or Circle, got {type(conic).__name__}")


def ellipse_point(e: Ellipse, t: float) -> Point2:
    ct, st = math.cos(e.tilt), math.sin(e.tilt)
    u, v = e.a * math.cos(t), e.b * math.sin(t)
    return Point2(e.center.x + ct * u - st * v, e.center.y + st * u + ct * v)


# ---------------------------------------------------------------------------
# Triangles
# ---------------------------------------------------------------------------


def signed_area(p, q, r) -> float:
    return 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]))


@dataclass(frozen=True)
class Triangle:
    """Three vertices, stored counterclockwise.

    A clockwise input has ``v2`` and ``v3`` swapped; the first vertex is kept.
    """

    v1: Point2
    v2: Point2
    v3: Point2
    degenerate: bool = field(default=False, compare=False)

    def __post_init__(self):
        v1, v2, v3 = as_point(self.v1), as_point(self.v2), as_point(self.v3)
        area = signed_area(v1, v2, v3)
        scale = max(distance(v1, v2), distance(v2, v3), distance(v3, v1))
        if abs(area) <= 1e-14 * scale * scale or scale == 0.0:
            if not self.degenerate:
                raise DegenerateTriangle("vertices are collinear")
        elif area < 0:
            v2, v3 = v3, v2
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)
        object.__setattr__(self, "v3", v3)

    @classmethod
    def from_array(cls, xy) -> "Triangle":
        xy = np.asarray(xy, dtype=float).reshape(3, 2)
        return cls(Point2(*xy[0]), Point2(*xy[1]), Point2(*xy[2]))

    @property
    def vertices(self) -> np.ndarray:
        return np.array([self.v1, self.v2, self.v3], dtype=float)

    def sides(self) -> tuple[float, float, float]:
        """Side lengths opposite v1, v2, v3."""
        return (
            distance(self.v2, self.v3),
            distance(self.v3, self.v1),
            distance(self.v1, self.v2),
        )

    def area(self) -> float:
        return abs(signed_area(self.v1, self.v2, self.v3))

    def side_lines(self) -> list[GeneralConic]:
        """Lines v2v3, v3v1, v1v2 (each opposite the vertex of the same index)."""
        return [
            GeneralConic.line_through(self.v2, self.v3),
            GeneralConic.line_through(self.v3, self.v1),
            GeneralConic.line_through(self.v1, self.v2),
        ]


# ---------------------------------------------------------------------------
# Affine maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """``p -> L p + t`` with an invertible 2x2 linear part ``L``."""

    linear: tuple[tuple[float, float], tuple[float, float]]
    translation: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        L = np.asarray(self.linear, dtype=float).reshape(2, 2)
        det = float(np.linalg.det(L))
        if not math.isfinite(det) or abs(det) < 1e-14 * max(1.0, float(np.abs(L).max()) ** 2):
            raise SingularMap("linear part is singular")
        object.__setattr__(self, "linear", tuple(tuple(float(x) for x in row) for row in L))
        object.__setattr__(self, "translation", tuple(float(x) for x in self.translation))

    @classmethod
    def scaling(cls, sx: float, sy: float) -> "AffineMap":
        return cls(((sx, 0.0), (0.0, sy)))

    @property
    def L(self) -> np.ndarray:
        return np.asarray(self.linear)

    @property
    def homogeneous(self) -> np.ndarray:
        H = np.eye(3)
        H[:2, :2] = self.L
        H[:2, 2] = self.translation
        return H

    def inverse(self) -> "AffineMap":
        Li = np.linalg.inv(self.L)
        t = -Li @ np.asarray(self.translation)
        return AffineMap(tuple(map(tuple, Li)), tuple(t))

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self o other``."""
        H = self.homogeneous @ other.homogeneous
        return AffineMap(tuple(map(tuple, H[:2, :2])), tuple(H[:2, 2]))

    def apply_points(self, xy: np.ndarray) -> np.ndarray:
        xy = np.asarray(xy, dtype=float)
        return xy @ self.L.T + np.asarray(self.translation)

    def __call__(self, obj):
        return apply_affine(self, obj)


def apply_affine(m: AffineMap, obj):
    """Image of a point, ellipse, circle, triangle or general conic under ``m``."""
    if isinstance(obj, GeneralConic):
        Hi = np.linalg.inv(m.homogeneous)
        return GeneralConic.from_matrix(Hi.T @ obj.matrix @ Hi)
    if isinstance(obj, (Ellipse, Circle)):
        image = apply_affine(m, obj.to_conic())
        cls = conic_classify(image, tol=1e-12)
        return cls.to_ellipse()
    if isinstance(obj, Triangle):
        return Triangle.from_array(m.apply_points(obj.vertices))
    p = as_point(obj)
    x, y = m.apply_points(np.array(p))
    return Point2(float(x), float(y))
