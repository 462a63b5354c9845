"""Closure condition for triangles inscribed in an ellipse.

``cayley_residual`` evaluates the polynomial closure condition for an
outer ellipse centred at the origin and a (possibly tilted, off-centre)
elliptic caustic.  For a circular caustic the condition is a biquadratic in
the radius, solved in closed form by ``radius_for_center``.

``poncelet_chain`` is a purely geometric alternative: it walks tangent
lines around the caustic and reports where the walk lands.  It shares no
algebra with the closed forms and is used to cross-check them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .conic import ORIGIN, Circle, Ellipse, Point2, as_ellipse, as_point
from .errors import (
    CircularOuter,
    EmptyCurve,
    NotNested,
    NumericalFailure,
    OutOfDomain,
)


@dataclass(frozen=True)
class CayleyInput:
    outer: Ellipse
    caustic: Ellipse

    def __post_init__(self):
        self.outer.require_canonical("cayley_residual")
        object.__setattr__(self, "caustic", as_ellipse(self.caustic))
        if not is_nested(self.outer, self.caustic):
            raise NotNested("caustic is not strictly inside the outer ellipse")


@dataclass(frozen=True)
class RadiusPair:
    r: float
    r_plus: float


def is_nested(outer: Ellipse, caustic, n: int = 720) -> bool:
    pts = as_ellipse(caustic).sample(n)
    x, y = pts[:, 0], pts[:, 1]
    ct, st = math.cos(outer.tilt), math.sin(outer.tilt)
    dx, dy = x - outer.center.x, y - outer.center.y
    u, v = ct * dx + st * dy, -st * dx + ct * dy
    return bool(np.all((u / outer.a) ** 2 + (v / outer.b) ** 2 < 1.0))


def cayley_terms(outer: Ellipse, caustic) -> tuple[float, float, float, float]:
    """The four groups of the closure polynomial (cos^4, cos^2, free, product)."""
    e = as_ellipse(caustic)
    a, b = outer.a, outer.b
    ac, bc = e.a, e.b
    xc, yc = e.center
    c2 = a * a - b * b
    cc2 = ac * ac - bc * bc
    cs, sn = math.cos(e.tilt), math.sin(e.tilt)
    a2, b2, ac2, bc2 = a * a, b * b, ac * ac, bc * bc

    quartic = (
        a2 * a2 * bc2 * bc2
        + ac2 * ac2 * c2 * c2
        + b2 * b2 * bc2 * bc2
        - 2 * a2 * b2 * bc2 * bc2
        - 2 * c2 * c2 * ac2 * bc2
    ) * cs**4 - 8 * a2 * b2 * cc2 * xc * yc * sn * cs
    quadratic = (
        2 * cc2 * (a2 + b2) * (a2 * yc * yc - b2 * xc * xc)
        + 2 * cc2 * b2 * a2 * a2
        + 2 * (b2 * bc2 * bc2 - ac2 * ac2 * c2 - b2 * b2 * cc2) * a2
        + 2 * bc2 * (ac2 * c2 * c2 - b2 * b2 * bc2)
    ) * cs**2
    free = (
        a2 * a2 * yc**4
        + b2 * b2 * xc**4
        + 2 * b2 * (a2 * ac2 - a2 * b2 - b2 * bc2) * xc * xc
        + 2 * a2 * b2 * xc * xc * yc * yc
        - 2 * a2 * (a2 * ac2 + a2 * b2 - b2 * bc2) * yc * yc
    )
    product = (
        (a * ac - a * b - b * bc)
        * (a * ac + a * b - b * bc)
        * (a * ac - a * b + b * bc)
        * (a * ac + a * b + b * bc)
    )
    return quartic, quadratic, free, product


def cayley_residual(outer: Ellipse, caustic, *, relative: bool = False, check_nested: bool = True) -> float:
    """Left-hand side of the triangle closure condition; zero iff the pair closes.

    With ``relative=True`` the value is divided by ``a**8`` (the polynomial is
    homogeneous of degree eight in lengths).
    """
    outer.require_canonical("cayley_residual")
    caustic = as_ellipse(caustic)
    if check_nested and not is_nested(outer, caustic):
        raise NotNested("caustic is not strictly inside the outer ellipse")
    value = math.fsum(cayley_terms(outer, caustic))
    if relative:
        value /= outer.a**8
    return value


def _circle_radius_closed(a: float, b: float, x: float, y: float) -> tuple[float, float]:
    c2 = a * a - b * b
    p = b * math.sqrt(max(a**4 - c2 * x * x, 0.0))
    q = a * math.sqrt(b**4 + c2 * y * y)
    # p - q loses digits near the boundary; (p^2 - q^2)/(p + q) does not
    diff = (p * p - q * q) / (p + q)
    return diff / c2, (p + q) / c2


def biquadratic_coefficients(outer: Ellipse, c) -> tuple[float, float, float]:
    """Coefficients of the closure condition as a quadratic in ``r**2``."""
    a, b = outer.a, outer.b
    x, y = c
    c2 = a * a - b * b
    return (
        c2 * c2,
        2 * (b * b * c2 * x * x - a * a * c2 * y * y - a * a * b * b * (a * a + b * b)),
        (a * a * b * b - a * a * y * y - b * b * x * x) ** 2,
    )


def _biquadratic_radii(outer: Ellipse, c) -> tuple[float, float]:
    A, B, C = biquadratic_coefficients(outer, c)
    disc = B * B - 4 * A * C
    if disc < 0:
        raise NumericalFailure("biquadratic has no real roots in r^2")
    q = -0.5 * (B + math.copysign(math.sqrt(disc), B))
    u1, u2 = sorted((q / A, C / q))
    if u1 < 0:
        raise NumericalFailure("biquadratic root in r^2 is negative")
    return math.sqrt(u1), math.sqrt(u2)


def radius_for_center(outer: Ellipse, c) -> RadiusPair:
    """Radius of the circular caustic centred at ``c`` (and the enclosing twin)."""
    outer.require_canonical("radius_for_center")
    c = as_point(c)
    if outer.a == outer.b:
        raise CircularOuter("outer is a circle; use euler_chapple")
    if not outer.contains(c):
        raise OutOfDomain(f"caustic centre {tuple(c)} is not inside the outer ellipse")
    r, r_plus = _circle_radius_closed(outer.a, outer.b, c.x, c.y)
    s, s_plus = _biquadratic_radii(outer, c)
    scale = max(1.0, r_plus)
    if abs(r - s) > 1e-9 * scale or abs(r_plus - s_plus) > 1e-9 * scale:
        raise NumericalFailure(
            f"closed-form radii ({r}, {r_plus}) disagree with biquadratic roots ({s}, {s_plus})"
        )
    return RadiusPair(r, r_plus)


def circular_caustic(outer: Ellipse, c) -> Circle:
    return Circle(as_point(c), radius_for_center(outer, c).r)


def euler_chapple(R: float, d: float) -> float:
    """Incircle radius for a circle-in-circle triangle family (``d^2 = R(R - 2r)``)."""
    if R <= 0 or d < 0:
        raise OutOfDomain("need R > 0 and d >= 0")
    if d >= R:
        raise OutOfDomain(f"centre distance {d} is not inside the circle of radius {R}")
    return (R * R - d * d) / (2 * R)


# ---------------------------------------------------------------------------
# Geometric closure oracle
# ---------------------------------------------------------------------------


def _tangent_point(caustic: Ellipse, p: np.ndarray) -> np.ndarray:
    """One of the two tangency points from ``p``; always the same branch."""
    ct, st = math.cos(caustic.tilt), math.sin(caustic.tilt)
    d = p - np.asarray(caustic.center)
    u = np.array([ct * d[0] + st * d[1], -st * d[0] + ct * d[1]]) / [caustic.a, caustic.b]
    rho = math.hypot(*u)
    if rho <= 1.0:
        raise NotNested("chain point is inside the caustic")
    phi = math.atan2(u[1], u[0]) + math.acos(1.0 / rho)
    w = np.array([caustic.a * math.cos(phi), caustic.b * math.sin(phi)])
    return np.asarray(caustic.center) + np.array([ct * w[0] - st * w[1], st * w[0] + ct * w[1]])


def _second_intersection(outer: Ellipse, p: np.ndarray, d: np.ndarray) -> np.ndarray:
    ct, st = math.cos(outer.tilt), math.sin(outer.tilt)
    q = p - np.asarray(outer.center)
    qu = np.array([ct * q[0] + st * q[1], -st * q[0] + ct * q[1]]) / [outer.a, outer.b]
    du = np.array([ct * d[0] + st * d[1], -st * d[0] + ct * d[1]]) / [outer.a, outer.b]
    # |qu + s du|^2 = 1 with |qu| ~ 1: s = -2 qu.du / |du|^2 (the other root is 0)
    s = -2.0 * float(qu @ du) / float(du @ du)
    return p + s * d


def poncelet_chain(outer: Ellipse, caustic, start_t: float, steps: int = 3) -> np.ndarray:
    """Walk ``steps`` tangent chords from ``outer.point(start_t)``; returns all visited points."""
    caustic = as_ellipse(caustic)
    p = np.asarray(outer.point(start_t), dtype=float)
    pts = [p]
    for _ in range(steps):
        t = _tangent_point(caustic, p)
        p = _second_intersection(outer, p, t - p)
        pts.append(p)
    return np.array(pts)


def chain_gap(outer: Ellipse, caustic, start_t: float = 0.3, steps: int = 3) -> float:
    pts = poncelet_chain(outer, caustic, start_t, steps)
    return float(np.linalg.norm(pts[-1] - pts[0]))


# ---------------------------------------------------------------------------
# Iso-radius curves
# ---------------------------------------------------------------------------


def concentric_radius(outer: Ellipse) -> float:
    return outer.a * outer.b / (outer.a + outer.b)


def iso_radius_curve(outer: Ellipse, r: float, n: int = 256, tol: float = 1e-12) -> list[Point2]:
    """Caustic centres whose circular caustic has radius ``r``, by ray shooting."""
    outer.require_canonical("iso_radius_curve")
    if n < 8:
        raise ValueError("need at least 8 rays")
    if outer.a == outer.b:
        raise CircularOuter("iso-radius curves need a > b")
    a, b = outer.a, outer.b
    r_max = concentric_radius(outer)
    if r <= 0 or r > r_max * (1 + 1e-12):
        raise EmptyCurve(f"radius {r} is not attained inside the ellipse (max {r_max})")
    if abs(r - r_max) <= tol * max(1.0, r_max):
        return [ORIGIN]
    out = []
    for phi in np.linspace(0.0, 2 * math.pi, n, endpoint=False):
        ux, uy = math.cos(phi), math.sin(phi)
        s_max = 1.0 / math.hypot(ux / a, uy / b)

        def excess(s, ux=ux, uy=uy):
            return _circle_radius_closed(a, b, s * ux, s * uy)[0] - r

        s = brentq(excess, 0.0, s_max, xtol=1e-15, rtol=1e-15, maxiter=200)
        out.append(Point2(s * ux, s * uy))
    return out
