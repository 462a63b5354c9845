"""Triangle centers and scalar triangle quantities.

Centers are evaluated from their first barycentric coordinate (the other
two follow by cycling the sidelengths).  Sidelengths are rescaled so the
longest side is 1 before any barycentric is formed; the Cartesian result
is scale-independent, and near-zero denominators can then be judged against
a fixed threshold.

Where an affine triple (alpha, beta, gamma) is known, ``center_via_triple``
gives the same point as ``alpha X1 + beta X2 + gamma X3`` with coefficients
depending only on ``rho = r / R``.  The two paths are compared on a few fixed
triangles at import.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .conic import Point2, Triangle, as_point, signed_area
from .errors import (
    CenterAtInfinity,
    CenterUndefined,
    ConjugateUndefined,
    NumericalFailure,
)

DENOM_TOL = 1e-13

Bary = Callable[[float, float, float], float]
Triple = Callable[[float], tuple[float, float, float]]


def _inv(x: float) -> float:
    if abs(x) < DENOM_TOL:
        raise CenterUndefined("barycentric denominator vanishes")
    return 1.0 / x


@dataclass(frozen=True)
class CenterSpec:
    k: int
    name: str
    bary: Bary
    triple: Triple | None = None


def _t(alpha, beta, gamma) -> Triple:
    return lambda rho: (alpha(rho), beta(rho), gamma(rho))


def _const(x):
    return lambda rho: x


def _pole(num):
    # coefficient num(rho) / (1 - 2 rho); rho = 1/2 only for an equilateral
    def f(rho):
        d = 1.0 - 2.0 * rho
        if abs(d) < 1e-12:
            raise CenterUndefined("triple has a pole at rho = 1/2 (equilateral)")
        return num(rho) / d

    return f


CENTERS: dict[int, CenterSpec] = {
    s.k: s
    for s in [
        CenterSpec(1, "incenter", lambda l1, l2, l3: l1, _t(_const(1), _const(0), _const(0))),
        CenterSpec(2, "centroid", lambda l1, l2, l3: 1.0, _t(_const(0), _const(1), _const(0))),
        CenterSpec(
            3,
            "circumcenter",
            lambda l1, l2, l3: l1 * l1 * (l2 * l2 + l3 * l3 - l1 * l1),
            _t(_const(0), _const(0), _const(1)),
        ),
        CenterSpec(
            4,
            "orthocenter",
            lambda l1, l2, l3: _inv(l2 * l2 + l3 * l3 - l1 * l1),
            _t(_const(0), _const(3), _const(-2)),
        ),
        CenterSpec(
            5,
            "nine-point center",
            lambda l1, l2, l3: l1 * l1 * (l2 * l2 + l3 * l3) - (l2 * l2 - l3 * l3) ** 2,
            _t(_const(0), _const(1.5), _const(-0.5)),
        ),
        CenterSpec(
            7,
            "Gergonne point",
            lambda l1, l2, l3: _inv(l2 + l3 - l1),
            _t(
                lambda p: (2 * p + 4) / (p + 4),
                lambda p: 3 * p / (p + 4),
                lambda p: -4 * p / (p + 4),
            ),
        ),
        CenterSpec(8, "Nagel point", lambda l1, l2, l3: l2 + l3 - l1, _t(_const(-2), _const(3), _const(0))),
        CenterSpec(10, "Spieker center", lambda l1, l2, l3: l2 + l3, _t(_const(-0.5), _const(1.5), _const(0))),
        CenterSpec(
            11,
            "Feuerbach point",
            lambda l1, l2, l3: (l2 + l3 - l1) * (l2 - l3) ** 2,
            _t(_pole(lambda p: 1.0), _pole(lambda p: -3 * p), _pole(lambda p: p)),
        ),
        CenterSpec(
            12,
            "incircle/nine-point in-similitude center",
            lambda l1, l2, l3: (l2 + l3) ** 2 * _inv(l2 + l3 - l1),
            _t(
                lambda p: 1 / (1 + 2 * p),
                lambda p: 3 * p / (1 + 2 * p),
                lambda p: -p / (1 + 2 * p),
            ),
        ),
        CenterSpec(
            20,
            "de Longchamps point",
            lambda l1, l2, l3: -3 * l1**4 + 2 * l1 * l1 * (l2 * l2 + l3 * l3) + (l2 * l2 - l3 * l3) ** 2,
            _t(_const(0), _const(-3), _const(4)),
        ),
        CenterSpec(
            36,
            "inverse of the incenter in the circumcircle",
            lambda l1, l2, l3: l1 * l1 * (l2 * l2 + l3 * l3 - l1 * l1 - l2 * l3),
            _t(_pole(lambda p: 1.0), _const(0), _pole(lambda p: -2 * p)),
        ),
        CenterSpec(
            59,
            "isogonal conjugate of X11",
            lambda l1, l2, l3: l1 * l1 * _inv(l2 + l3 - l1) * _inv((l2 - l3) ** 2),
        ),
        CenterSpec(
            80,
            "reflection of X1 about X11",
            lambda l1, l2, l3: _inv(l2 * l2 + l3 * l3 - l1 * l1 - l2 * l3),
            _t(_pole(lambda p: 2 * p + 1), _pole(lambda p: -6 * p), _pole(lambda p: 2 * p)),
        ),
        CenterSpec(
            106,
            "isogonal conjugate of the infinite point of X1X2",
            lambda l1, l2, l3: l1 * l1 * _inv(2 * l1 - l2 - l3),
        ),
    ]
}


def get_center(k: int) -> CenterSpec:
    try:
        return CENTERS[int(k)]
    except KeyError:
        raise KeyError(f"X{k} is not registered; known: {sorted(CENTERS)}") from None


@dataclass(frozen=True)
class TriangleMetrics:
    l1: float
    l2: float
    l3: float
    theta1: float
    theta2: float
    theta3: float
    s: float
    area: float
    r: float
    R: float

    @property
    def rho(self) -> float:
        return self.r / self.R

    @property
    def sides(self) -> tuple[float, float, float]:
        return self.l1, self.l2, self.l3

    @property
    def angles(self) -> tuple[float, float, float]:
        return self.theta1, self.theta2, self.theta3


def _angle_at(p, q, r) -> float:
    ux, uy = q[0] - p[0], q[1] - p[1]
    vx, vy = r[0] - p[0], r[1] - p[1]
    return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)


def metrics(t: Triangle) -> TriangleMetrics:
    v1, v2, v3 = t.v1, t.v2, t.v3
    l1, l2, l3 = t.sides()
    area = t.area()
    s = 0.5 * (l1 + l2 + l3)
    return TriangleMetrics(
        l1,
        l2,
        l3,
        _angle_at(v1, v2, v3),
        _angle_at(v2, v3, v1),
        _angle_at(v3, v1, v2),
        s,
        area,
        area / s,
        l1 * l2 * l3 / (4 * area),
    )


def bary_weights(spec: CenterSpec, t: Triangle) -> np.ndarray:
    l1, l2, l3 = t.sides()
    m = max(l1, l2, l3)
    l1, l2, l3 = l1 / m, l2 / m, l3 / m
    return np.array([spec.bary(l1, l2, l3), spec.bary(l2, l3, l1), spec.bary(l3, l1, l2)], dtype=float)


def from_barycentric(w, t: Triangle) -> Point2:
    w = np.asarray(w, dtype=float)
    big = float(np.max(np.abs(w)))
    if big < DENOM_TOL:
        raise CenterUndefined("all barycentric weights vanish")
    total = float(w.sum())
    if abs(total) <= 1e-12 * big:
        raise CenterAtInfinity("barycentric weights sum to zero")
    x, y = (w @ t.vertices) / total
    return Point2(float(x), float(y))


def center_position(spec: CenterSpec | int, t: Triangle) -> Point2:
    if not isinstance(spec, CenterSpec):
        spec = get_center(spec)
    return from_barycentric(bary_weights(spec, t), t)


def center_via_triple(spec: CenterSpec | int, t: Triangle) -> Point2:
    if not isinstance(spec, CenterSpec):
        spec = get_center(spec)
    if spec.triple is None:
        raise ValueError(f"X{spec.k} has no affine triple")
    m = metrics(t)
    alpha, beta, gamma = spec.triple(m.rho)
    x1 = np.asarray(center_position(1, t))
    x2 = np.asarray(center_position(2, t))
    x3 = np.asarray(center_position(3, t))
    x, y = alpha * x1 + beta * x2 + gamma * x3
    return Point2(float(x), float(y))


@dataclass(frozen=True)
class AngleSums:
    half_sines: float
    half_tangents: float
    double_cosines: float
    cosine_product: float
    squared_sides: float


def angle_sums(t: Triangle) -> AngleSums:
    m = metrics(t)
    th = np.array(m.angles)
    return AngleSums(
        float(np.sum(np.sin(th / 2))),
        float(np.sum(np.tan(th / 2))),
        float(np.sum(np.cos(2 * th))),
        float(np.prod(np.cos(th))),
        float(m.l1**2 + m.l2**2 + m.l3**2),
    )


def polar_radius_sq(t: Triangle) -> float:
    """Squared polar-circle radius ``4 R^2 - (l1^2 + l2^2 + l3^2) / 2`` (negative if acute)."""
    m = metrics(t)
    return 4 * m.R**2 - 0.5 * (m.l1**2 + m.l2**2 + m.l3**2)


def adams_radius(t: Triangle) -> float:
    m = metrics(t)
    l1, l2, l3 = m.sides
    q = l1 * l2 + l2 * l3 + l3 * l1
    den = q - m.s**2
    if abs(den) < DENOM_TOL * max(1.0, q):
        raise NumericalFailure("Adams radius denominator vanishes")
    rad = q * q - l1 * l2 * l3 * m.s - q * m.s**2
    if rad < 0:
        raise NumericalFailure("Adams radius is not real for this triangle")
    return abs(m.r * math.sqrt(rad) / den)


def isogonal_conjugate(p, t: Triangle) -> Point2:
    p = as_point(p)
    v1, v2, v3 = t.v1, t.v2, t.v3
    z = np.array([signed_area(p, v2, v3), signed_area(v1, p, v3), signed_area(v1, v2, p)])
    if np.min(np.abs(z)) <= DENOM_TOL * t.area():
        raise ConjugateUndefined("point lies on a sideline")
    l = np.array(t.sides())
    return from_barycentric(l * l / z, t)


def _verify_registry() -> None:
    tris = [
        Triangle((0.0, 0.0), (1.0, 0.0), (0.3, 0.8)),
        Triangle((0.1, -0.2), (2.0, 0.4), (-0.5, 1.3)),
        Triangle((-1.0, 0.0), (1.2, -0.1), (0.2, 0.5)),
    ]
    for spec in CENTERS.values():
        if spec.triple is None:
            continue
        for t in tris:
            p, q = center_position(spec, t), center_via_triple(spec, t)
            if math.dist(p, q) > 1e-9 * max(1.0, math.hypot(*p)):
                raise AssertionError(f"X{spec.k}: barycentric and triple disagree")


_verify_registry()
