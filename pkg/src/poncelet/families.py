"""Named triangle families and the quantities they conserve.

Circle-caustic families (focal-X1, iso-X2, focal-X4, iso-X7) are placed by
their closed-form centre and radius and must pass the closure check on
construction.  The concentric ellipse-caustic families (confocal,
homothetic, dual) are located by root-finding on the closure residual
along a one-parameter family.  MacBeath families live in a circle and are
given directly by their unit-frame foci.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .blaschke import (
    DEFAULT_SAMPLES,
    BlaschkeSeed,
    PorismFamily,
    blaschke_caustic,
    phases,
)
from .cayley import cayley_residual, radius_for_center
from .centers import (
    adams_radius,
    angle_sums,
    center_position,
    metrics,
    polar_radius_sq,
)
from .conic import AffineMap, Ellipse, Point2, Triangle, apply_affine, as_ellipse, as_point
from .errors import NotNested, NumericalFailure, OutOfDomain

DEFAULT_OUTER = Ellipse(1.5, 1.0)
MACBEATH_G = complex(0.6, 0.3)


class FamilyKind(str, enum.Enum):
    FOCAL_X1 = "focal-x1"
    ISO_X2 = "iso-x2"
    FOCAL_X4 = "focal-x4"
    ISO_X7 = "iso-x7"
    MACBEATH = "macbeath"
    DUAL = "dual"
    CHAPPLE = "chapple"
    CONFOCAL = "confocal"
    HOMOTHETIC = "homothetic"


def _kind(kind) -> FamilyKind:
    return kind if isinstance(kind, FamilyKind) else FamilyKind(str(kind).lower())


# ---------------------------------------------------------------------------
# Closed-form placements
# ---------------------------------------------------------------------------


def k7(outer: Ellipse) -> float:
    a, b = outer.a, outer.b
    return math.sqrt(4 * a**4 - 5 * a * a * b * b + b**4)


def circle_parameters(kind, outer: Ellipse, sign: int = 1) -> tuple[Point2, float]:
    """Caustic centre and radius for the four circle-caustic special families."""
    kind = _kind(kind)
    a, b, c = outer.a, outer.b, outer.c
    if kind is FamilyKind.FOCAL_X1:
        return Point2(sign * c, 0.0), b * b / (c * c) * (math.sqrt(a * a + c * c) - a)
    if kind is FamilyKind.ISO_X2:
        return Point2(0.0, sign * c * b / (2 * a)), b / 2
    if kind is FamilyKind.FOCAL_X4:
        den = 2 * a * a - c * c
        return Point2(sign * a * a * c / den, 0.0), a * (a * a - c * c) / den
    if kind is FamilyKind.ISO_X7:
        return Point2(sign * k7(outer) / (2 * a), 0.0), b * b / (2 * a)
    raise ValueError(f"{kind.value} is not a circle-caustic special family")


# ---------------------------------------------------------------------------
# Concentric ellipse caustics by root-finding
# ---------------------------------------------------------------------------


def _concentric_curve(kind: FamilyKind, outer: Ellipse):
    a, b, c = outer.a, outer.b, outer.c
    if kind is FamilyKind.HOMOTHETIC:
        return (lambda k: Ellipse(k * a, k * b)), (1e-6, 1 - 1e-6)
    if kind is FamilyKind.DUAL:
        # semi-axis k b along x, k a along y
        return (lambda k: Ellipse(k * a, k * b, tilt=math.pi / 2)), (1e-6, b / a * (1 - 1e-9))
    if kind is FamilyKind.CONFOCAL:
        return (lambda bc: Ellipse(math.sqrt(bc * bc + c * c), bc)), (1e-6 * b, b * (1 - 1e-9))
    raise ValueError(kind)


def concentric_caustic(kind, outer: Ellipse, xtol: float = 1e-15) -> Ellipse:
    """Closing caustic of the homothetic, dual or confocal shape, by Brent's method."""
    kind = _kind(kind)
    outer.require_canonical("concentric_caustic")
    if outer.is_circle:
        raise OutOfDomain(f"{kind.value} family needs a > b")
    make, (lo, hi) = _concentric_curve(kind, outer)

    def res(p):
        return cayley_residual(outer, make(p), relative=True, check_nested=False)

    p = brentq(res, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)
    return make(p)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def macbeath(g: complex = MACBEATH_G, R: float = 1.0) -> PorismFamily:
    """Circle of radius ``R`` about the origin; inconic foci at the origin (X3) and ``R g`` (X4)."""
    seed = BlaschkeSeed(0.0, complex(g))
    outer = Ellipse(R, R)
    caustic = as_ellipse(apply_affine(AffineMap.scaling(R, R), blaschke_caustic(seed)))
    return PorismFamily(outer, caustic, seed, name="macbeath")


def macbeath_affine_x2(outer: Ellipse, oc) -> PorismFamily:
    """Family in ``outer`` whose caustic is centred at ``oc`` and whose centroid is stationary."""
    outer.require_canonical("macbeath_affine_x2")
    oc = as_point(oc)
    u = complex(oc.x / outer.a, oc.y / outer.b)
    if not abs(u) < 0.5:
        raise OutOfDomain("caustic centre must lie inside the half-size concentric ellipse")
    seed = BlaschkeSeed(0.0, 2 * u)
    m = AffineMap.scaling(outer.a, outer.b)
    caustic = as_ellipse(apply_affine(m, blaschke_caustic(seed)))
    return PorismFamily(outer, caustic, seed, name="affine-macbeath")


def build(kind, outer: Ellipse | None = None, *, sign: int = 1, g: complex = MACBEATH_G,
          R: float = 1.0, d: float = 0.3) -> PorismFamily:
    kind = _kind(kind)
    if kind is FamilyKind.CHAPPLE:
        return PorismFamily.chapple(R, d)
    if kind is FamilyKind.MACBEATH:
        return macbeath(g, R)
    outer = outer or DEFAULT_OUTER
    outer.require_canonical("build")
    if outer.is_circle:
        raise OutOfDomain(f"{kind.value} family needs a > b")
    if kind in (FamilyKind.HOMOTHETIC, FamilyKind.DUAL, FamilyKind.CONFOCAL):
        return PorismFamily.from_caustic(outer, concentric_caustic(kind, outer), name=kind.value)
    center, r = circle_parameters(kind, outer, sign)
    try:
        return PorismFamily.from_circle(outer, center, r, name=kind.value)
    except NotNested as exc:
        raise OutOfDomain(f"{kind.value} caustic is not nested in the outer ellipse") from exc


def random_circle_family(rng: np.random.Generator, ratio: tuple[float, float] = (1.0, 3.0),
                         margin: float = 0.05, max_tries: int = 1000) -> PorismFamily:
    """Outer (a, 1) with a/b drawn from ``ratio`` and a circle caustic whose radius is at least ``margin``.

    The centre is drawn uniformly from the outer ellipse and rejected until
    the caustic radius clears the margin.
    """
    a = float(rng.uniform(*ratio))
    a = max(a, ratio[0] + 1e-3)
    outer = Ellipse(a, 1.0)
    for _ in range(max_tries):
        th = rng.uniform(0.0, 2 * math.pi)
        rr = math.sqrt(rng.uniform(0.0, 1.0))
        c = (rr * a * math.cos(th), rr * math.sin(th))
        try:
            r = radius_for_center(outer, c).r
        except (OutOfDomain, NumericalFailure):
            continue
        if r >= margin:
            return PorismFamily.from_circle(outer, c, r, name="random")
    raise OutOfDomain("no admissible caustic centre found")


# ---------------------------------------------------------------------------
# Stationary centers
# ---------------------------------------------------------------------------


def stationary_centers(kind, outer: Ellipse | None = None, *, sign: int = 1,
                       g: complex = MACBEATH_G, R: float = 1.0, d: float = 0.3) -> list[tuple[int, Point2]]:
    """Predicted positions of the centers that do not move over the family."""
    kind = _kind(kind)
    outer = outer or DEFAULT_OUTER
    a, b, c = outer.a, outer.b, outer.c
    if kind is FamilyKind.CHAPPLE:
        return [(1, Point2(d, 0.0)), (3, Point2(0.0, 0.0))]
    if kind is FamilyKind.MACBEATH:
        x4 = complex(g) * R
        return [(3, Point2(0.0, 0.0)), (4, Point2(x4.real, x4.imag)), (2, Point2(x4.real / 3, x4.imag / 3))]
    if kind in (FamilyKind.HOMOTHETIC, FamilyKind.CONFOCAL):
        return []
    if kind is FamilyKind.DUAL:
        return [(4, Point2(0.0, 0.0))]
    center, _ = circle_parameters(kind, outer, sign)
    out = [(1, center)]
    if kind is FamilyKind.ISO_X2:
        out += [(2, Point2(0.0, sign * c * b / (3 * a))), (8, Point2(0.0, 0.0)),
                (10, Point2(0.0, sign * c * b / (4 * a)))]
    elif kind is FamilyKind.FOCAL_X4:
        out.append((4, Point2(sign * c, 0.0)))
    elif kind is FamilyKind.ISO_X7:
        out.append((7, Point2(sign * 2 * a * k7(outer) / (4 * a * a - b * b), 0.0)))
    return out


# ---------------------------------------------------------------------------
# Conserved quantities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantReport:
    name: str
    value: float
    mean: float
    max_deviation: float
    tol: float = 1e-9

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol * max(abs(self.value), 1.0)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "mean": self.mean,
            "max_deviation": self.max_deviation,
            "pass": self.passed,
        }


def report(name: str, value: float, samples, tol: float = 1e-9) -> InvariantReport:
    s = np.asarray(samples, dtype=float)
    return InvariantReport(name, float(value), float(s.mean()), float(np.max(np.abs(s - value))), tol)


def triangles(family: PorismFamily, n: int = DEFAULT_SAMPLES) -> list[Triangle]:
    return [family.triangle(p) for p in phases(n) + np.pi / n]


def _x1x2_sq(t: Triangle) -> float:
    l1, l2, l3 = t.sides()
    num = (
        l1**3 + l2**3 + l3**3
        + 9 * l1 * l2 * l3
        - 2 * (l2 * l1 * l1 + l3 * l1 * l1 + l2 * l2 * l1 + l3 * l3 * l1 + l2 * l3 * l3 + l2 * l2 * l3)
    )
    return -num / (9 * (l1 + l2 + l3))


def _x1x7_sq(t: Triangle) -> float:
    m = metrics(t)
    return m.r**2 * (1 - 3 * m.s**2 / (m.r + 4 * m.R) ** 2)


def _contact_points(t: Triangle, center: Point2) -> np.ndarray:
    pts = []
    v = t.vertices
    for i in range(3):
        p, q = v[(i + 1) % 3], v[(i + 2) % 3]
        d = q - p
        s = float((np.asarray(center) - p) @ d / (d @ d))
        pts.append(p + s * d)
    return np.array(pts)


def conserved(kind, outer: Ellipse | None = None, n: int = DEFAULT_SAMPLES, tol: float = 1e-9,
              **build_kw) -> list[InvariantReport]:
    kind = _kind(kind)
    outer = outer or DEFAULT_OUTER
    fam = build(kind, outer, **build_kw)
    tris = triangles(fam, n)
    a, b, c = outer.a, outer.b, outer.c
    out: list[InvariantReport] = []
    if kind is FamilyKind.FOCAL_X1:
        value = (c * c - a * a + a * math.sqrt(a * a + c * c)) / (c * c)
        out.append(report("sum sin(theta/2)", value, [angle_sums(t).half_sines for t in tris], tol))
        ctr = fam.caustic.center
        contact = [Triangle.from_array(_contact_points(t, ctr)) for t in tris]
        r_in = [metrics(t).r for t in contact]
        out.append(report("contact-triangle inradius", float(np.mean(r_in)), r_in, tol))
        x3 = [math.dist(center_position(3, t), ctr) for t in contact]
        out.append(report("contact-triangle circumcenter offset", 0.0, x3, tol))
    elif kind is FamilyKind.ISO_X2:
        value = c * b / (6 * a)
        out.append(report("|X1X2|", value, [math.sqrt(_x1x2_sq(t)) for t in tris], tol))
    elif kind is FamilyKind.FOCAL_X4:
        out.append(report("r_pol^2", -(b**4) / (a * a + b * b), [polar_radius_sq(t) for t in tris], tol))
    elif kind is FamilyKind.ISO_X7:
        out.append(report("sum tan(theta/2)", math.sqrt(4 * a * a - b * b) / a,
                          [angle_sums(t).half_tangents for t in tris], tol))
        x1x7 = math.sqrt(b**4 * c * c / (4 * a * a * (4 * a * a - b * b)))
        out.append(report("|X1X7|", x1x7, [math.sqrt(_x1x7_sq(t)) for t in tris], tol))
        out.append(report("|X1X7| from positions", x1x7,
                          [math.dist(center_position(1, t), center_position(7, t)) for t in tris], tol))
        r_a = b * b / (2 * a) * math.sqrt((5 * a * a - b * b) / (4 * a * a - b * b))
        out.append(report("R_A", r_a, [adams_radius(t) for t in tris], tol))
    elif kind is FamilyKind.MACBEATH:
        R = fam.outer.a
        am = 0.5 * R
        cm = 0.5 * R * abs(fam.seed.g)
        bm2 = am * am - cm * cm
        sums = [angle_sums(t) for t in tris]
        out.append(report("sum l^2", 32 * am * am + 4 * bm2, [s.squared_sides for s in sums], tol))
        out.append(report("sum cos(2 theta)", (cm * cm - 3 * am * am) / (2 * am * am),
                          [s.double_cosines for s in sums], tol))
        out.append(report("prod cos(theta)", bm2 / (8 * am * am), [s.cosine_product for s in sums], tol))
        out.append(report("r_pol^2", -2 * bm2, [polar_radius_sq(t) for t in tris], tol))
    elif kind is FamilyKind.DUAL:
        out.append(report("r_pol^2", -(a * a * b * b) / (a * a + b * b), [polar_radius_sq(t) for t in tris], tol))
    for k, p in stationary_centers(kind, outer, **build_kw):
        offsets = [math.dist(center_position(k, t), p) for t in tris]
        out.append(report(f"X{k} offset", 0.0, offsets, tol))
    return out


def locus_reports(kind, outer: Ellipse | None = None, n: int = DEFAULT_SAMPLES, tol: float = 1e-8) -> list[InvariantReport]:
    """Fitted-locus facts: dual L3 homothety factor, focal-X4 L20 = 2 L3 and their foci."""
    from .locus import fit_locus

    kind = _kind(kind)
    outer = outer or DEFAULT_OUTER
    a, b, c = outer.a, outer.b, outer.c
    fam = build(kind, outer)
    out = []
    if kind is FamilyKind.DUAL:
        _, f3 = fit_locus(fam, 3, n)
        factor = c * c / (2 * (a * a + b * b))
        out.append(report("L3 factor (major)", factor, [f3.semi_axes[0] / a], tol))
        out.append(report("L3 factor (minor)", factor, [f3.semi_axes[1] / b], tol))
        out.append(report("L3 center offset", 0.0, [math.hypot(*f3.center)], tol))
    elif kind is FamilyKind.FOCAL_X4:
        _, f3 = fit_locus(fam, 3, n)
        _, f20 = fit_locus(fam, 20, n)
        out.append(report("L20/L3 major", 2.0, [f20.semi_axes[0] / f3.semi_axes[0]], tol))
        out.append(report("L20/L3 minor", 2.0, [f20.semi_axes[1] / f3.semi_axes[1]], tol))
        out.append(report("L3 focus at center", 0.0, [min(math.hypot(*f) for f in f3.foci)], tol))
        far = Point2(-c, 0.0)
        out.append(report("L20 focus at far focus", 0.0, [min(math.dist(f, far) for f in f20.foci)], tol))
    return out


def explore_x4_spread(outer: Ellipse | None = None, n: int = 64) -> dict[str, float]:
    """Numeric evidence only: spread of X4 over each family kind."""
    outer = outer or DEFAULT_OUTER
    out = {}
    for kind in FamilyKind:
        fam = build(kind, outer)
        pts = np.array([center_position(4, t) for t in triangles(fam, n)])
        out[kind.value] = float(np.max(np.linalg.norm(pts - pts.mean(axis=0), axis=1)))
    return out
