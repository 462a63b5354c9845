"""Families whose caustic centre lies on the ellipse of equilateral centroids.

For an outer ellipse (a, b) the centroids of inscribed equilateral triangles
fill a concentric ellipse with semi-axes ``a c^2 / (a^2 + 3 b^2)`` and
``b c^2 / (3 a^2 + b^2)``.  Putting the incircle centre there makes the
family contain one equilateral member, and several loci degenerate:
``degeneracy_suite`` checks each of them numerically against its closed
form.

Where a printed closed form was found not to match the geometry, the value
used here is the one confirmed by sweeps; the printed variant is carried
along in the report details so the discrepancy stays visible.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .blaschke import DEFAULT_SAMPLES, PorismFamily
from .centers import center_position, isogonal_conjugate, metrics
from .conic import Ellipse, GeneralConic, Point2, Triangle, as_point, line_point_distance
from .errors import (
    CenterUndefined,
    ConjugateUndefined,
    DegeneratesToLine,
    NotOnETriangle,
    OutOfDomain,
)
from .locus import (
    ConicFitResult,
    LocusKind,
    closed_form,
    e_triangle_excess,
    fit_conic,
    fit_locus,
    l36_line,
    sweep,
)

log = logging.getLogger(__name__)

SUITE_TOL = 1e-7


@dataclass(frozen=True)
class EquilateralLocus:
    a_tri: float
    b_tri: float
    outer: Ellipse

    def point(self, t: float) -> Point2:
        return Point2(self.a_tri * math.cos(t), self.b_tri * math.sin(t))

    def ellipse(self) -> Ellipse:
        return Ellipse(self.a_tri, self.b_tri)


def e_triangle(outer: Ellipse) -> EquilateralLocus:
    outer.require_canonical("e_triangle")
    a, b = outer.a, outer.b
    c2 = a * a - b * b
    return EquilateralLocus(a * c2 / (a * a + 3 * b * b), b * c2 / (3 * a * a + b * b), outer)


def family_on_e(outer: Ellipse, t: float) -> PorismFamily:
    c = e_triangle(outer).point(t)
    return PorismFamily.from_circle(outer, c, name=f"e-triangle(t={t:.6g})")


def _vertex_param(outer: Ellipse, v) -> float:
    return math.atan2(v[1] / outer.b, v[0] / outer.a) % (2 * math.pi)


def _wrap_pi(x: float) -> float:
    return (x + math.pi) % (2 * math.pi) - math.pi


def _sign_roots(fn, lo: float, hi: float, n: int, max_jump: float | None = None, xtol: float = 1e-15) -> list[float]:
    """Roots of ``fn`` on [lo, hi) located by scanning for sign changes, refined by Brent."""
    xs = np.linspace(lo, hi, n + 1)
    ys = [fn(x) for x in xs]
    roots = []
    for x0, x1, y0, y1 in zip(xs[:-1], xs[1:], ys[:-1], ys[1:]):
        if y0 == 0.0:
            roots.append(float(x0))
            continue
        if y0 * y1 < 0 and (max_jump is None or abs(y1 - y0) < max_jump):
            roots.append(float(brentq(fn, x0, x1, xtol=xtol, rtol=4 * np.finfo(float).eps)))
    return roots


# ---------------------------------------------------------------------------
# Locating the equilateral member
# ---------------------------------------------------------------------------


def trig_equation(outer: Ellipse, t: float, s: float) -> float:
    """Vertex-parameter equation for the equilateral member, normalized by its leading factor."""
    a, b = outer.a, outer.b
    u, v = 3 * a * a + b * b, a * a + 3 * b * b
    val = v * (u * math.cos(s) ** 2 - 2 * b * b * math.sin(t) ** 2 - 2 * b * b * math.sin(t) * math.sin(s)) + u * (
        -2 * a * a * math.cos(t) * math.cos(s) + (a * a - 3 * b * b) * math.cos(t) ** 2
    )
    return val / (u * v)


@dataclass
class EquilateralSolution:
    phase: float
    triangle: Triangle
    side_spread: float
    vertex_params: tuple[float, ...]
    trig_roots: tuple[float, ...]
    spurious_root: float
    trig_residual: float


def equilateral_lambda(family: PorismFamily, t: float | None = None, n_scan: int = DEFAULT_SAMPLES,
                       tol: float = 1e-10) -> EquilateralSolution:
    """Phase of the equilateral member, plus the vertex parameters solving the trig equation."""
    outer = family.outer
    c = as_point(family.caustic.center)
    if outer.is_circle:
        if c.norm() > tol * outer.a:
            raise NotOnETriangle("in a circle only the concentric family contains an equilateral")
        tri = family.triangle(0.0)
        params = tuple(sorted(_vertex_param(outer, v) for v in tri.vertices))
        return EquilateralSolution(0.0, tri, _side_spread(tri), params, (), float("nan"), 0.0)
    if abs(e_triangle_excess(outer, c)) > tol:
        raise NotOnETriangle("caustic centre is not on the equilateral-centroid ellipse")
    e = e_triangle(outer)
    if t is None:
        t = math.atan2(c.y / e.b_tri, c.x / e.a_tri)

    # X2 sweeps an ellipse centred at 2C/3 through C; the equilateral is where it passes C
    c2 = np.asarray(c) * 2 / 3
    ref = math.atan2(c.y - c2[1], c.x - c2[0])

    def angle_gap(p):
        x2 = family.vertices(p).mean(axis=0) - c2
        return _wrap_pi(math.atan2(x2[1], x2[0]) - ref)

    roots = _sign_roots(angle_gap, 0.0, 2 * math.pi, n_scan, max_jump=math.pi)
    if not roots:
        raise NotOnETriangle("no equilateral member found")
    best = min(roots, key=lambda p: _side_spread(family.triangle(p)))
    tri = family.triangle(best)
    spread = _side_spread(tri)
    if spread > 1e-8:
        raise NotOnETriangle(f"closest member has relative side spread {spread:.3g}")

    params = tuple(sorted(_vertex_param(outer, v) for v in tri.vertices))
    trig_fn = lambda s: trig_equation(outer, t, s)  # noqa: E731
    trig_roots = tuple(_sign_roots(trig_fn, 0.0, 2 * math.pi, 720))
    residual = max(abs(trig_fn(s)) for s in params)
    return EquilateralSolution(best, tri, spread, params, trig_roots, (-t) % (2 * math.pi), residual)


def _side_spread(t: Triangle) -> float:
    l = np.array(t.sides())
    return float((l.max() - l.min()) / l.mean())


# ---------------------------------------------------------------------------
# Closed forms on the equilateral-centroid ellipse
# ---------------------------------------------------------------------------


def a3_b3_ratio(outer: Ellipse) -> float:
    a, b = outer.a, outer.b
    c2 = a * a - b * b
    return (3 * a * a + b * b) * (a * a + 3 * b * b) * (a**4 - b**4) / (
        c2 * (6 * a**5 * b + 20 * a**3 * b**3 + 6 * a * b**5)
    )


def a7_b7_ratio(outer: Ellipse) -> float:
    a, b = outer.a, outer.b
    return (2 * a * a + b * b) / math.sqrt(2 * a**4 + 5 * a * a * b * b + 2 * b**4)


def f5_far(outer: Ellipse, t: float) -> Point2:
    a, b = outer.a, outer.b
    return Point2(
        (a**4 - b**4) * math.cos(t) / (2 * (a**3 + 3 * a * b * b)),
        (a**4 - b**4) * math.sin(t) / (2 * (3 * a * a * b + b**3)),
    )


def l5_squared_printed(outer: Ellipse, t: float) -> float:
    a, b = outer.a, outer.b
    c2 = a * a - b * b
    return c2**4 * (a**6 + 15 * a**4 * b * b + 15 * a * a * b**4 + b**6 - c2**3 * math.cos(2 * t)) / (
        16 * (3 * a**5 * b + 10 * a**3 * b**3 + 3 * a * b**5) ** 2
    )


def l5_squared(outer: Ellipse, t: float) -> float:
    """Squared length of the segment swept by X5 (twice the printed expression)."""
    return 2 * l5_squared_printed(outer, t)


def x11_stationary(outer: Ellipse, t: float) -> Point2:
    e = e_triangle(outer)
    k = (outer.a**2 + outer.b**2) / outer.c**2
    return Point2(k * e.a_tri * math.cos(t), -k * e.b_tri * math.sin(t))


def x80_stationary(outer: Ellipse, t: float) -> Point2:
    return Point2(outer.a * math.cos(t), -outer.b * math.sin(t))


def x36_foot(outer: Ellipse, c) -> Point2:
    a, b = outer.a, outer.b
    x, y = as_point(c)
    c4 = (a * a - b * b) ** 2
    return Point2(x * (a**4 + 2 * a * a * b * b + 5 * b**4) / c4, y * (b**4 + 2 * a * a * b * b + 5 * a**4) / c4)


def x1x36_min(outer: Ellipse, c) -> float:
    a, b = outer.a, outer.b
    x, y = as_point(c)
    return 4 * (a * a + b * b) * math.sqrt(a**4 * y * y + b**4 * x * x) / (a * a - b * b) ** 2


def r_min(outer: Ellipse, c) -> float:
    a, b = outer.a, outer.b
    x, y = as_point(c)
    c2 = a * a - b * b
    return 2 * (b * math.sqrt(a**4 - c2 * x * x) - a * math.sqrt(b**4 + c2 * y * y)) / c2


def r_max(outer: Ellipse, c) -> float:
    a, b = outer.a, outer.b
    x, y = as_point(c)
    return (a * a + b * b) ** 2 * math.sqrt(a**4 * y * y + b**4 * x * x) / (a * a * b * b * (a * a - b * b))


def r_max_printed(outer: Ellipse, c) -> float:
    a, b = outer.a, outer.b
    x, y = as_point(c)
    return (a * a + b * b) * math.sqrt(a**4 + 6 * a * a * b * b + b**4) * math.sqrt(a**4 * y * y + b**4 * x * x) / (
        2 * a * a * b * b * (a * a - b * b)
    )


def isosceles_apex(outer: Ellipse, t: float) -> Point2:
    a, b = outer.a, outer.b
    u, v = 3 * a * a + b * b, 3 * b * b + a * a
    ct, st = math.cos(t), math.sin(t)
    den = b**4 * u * u * ct * ct + a**4 * v * v * st * st
    x = (a * a * v * (a**4 - 3 * a * a * b * b - 2 * b**4) * st * st - b**4 * u * u * ct * ct) * a * ct / den
    y = (b * b * u * (2 * a**4 + 3 * a * a * b * b - b**4) * ct * ct + a**4 * v * v * st * st) * b * st / den
    return Point2(x, y)


def x59_chapple(R: float, d: float) -> tuple[float, float]:
    if not (R > 0 and 0 <= d < R):
        raise OutOfDomain("need 0 <= d < R")
    return R, R * math.sqrt(R * R - d * d) / math.sqrt(9 * R * R - d * d)


def x59_chapple_fit(R: float = 1.0, d: float = 0.3, n: int = DEFAULT_SAMPLES) -> ConicFitResult:
    fam = PorismFamily.chapple(R, d)
    _, fit = fit_locus(fam, 59, n, adaptive=False)
    return fit


# ---------------------------------------------------------------------------
# Isogonal loci and the X36 envelope
# ---------------------------------------------------------------------------


@dataclass
class IsogonalLocus:
    fit: ConicFitResult
    tangency_gap: float | None


def isogonal_locus(family: PorismFamily, p, n: int = DEFAULT_SAMPLES) -> IsogonalLocus:
    p = as_point(p)

    def conj(t):
        try:
            return isogonal_conjugate(p, t)
        except ConjugateUndefined as exc:
            raise CenterUndefined(str(exc)) from exc

    conj.__name__ = "isogonal"
    s = sweep(family, conj, n)
    pts = s.valid_points
    # far samples near the line at infinity carry no information
    keep = np.linalg.norm(pts, axis=1) <= 1e3 * family.outer.a
    fit = fit_conic(pts[keep])
    gap = None
    if fit.kind in (LocusKind.ELLIPSE, LocusKind.CIRCLE):
        e = fit.ellipse()

        def level(th):
            x, y = e.point(th)
            return (x / family.outer.a) ** 2 + (y / family.outer.b) ** 2 - 1.0

        _, (_, top) = _extrema(level, 1024)
        gap = abs(top)
    return IsogonalLocus(fit, gap)


def l36_line_family(outer: Ellipse, t: float) -> tuple[float, float, float, float, float, float]:
    """Line ``u x + v y = w`` at parameter ``t`` and its t-derivative ``(u', v', w')``."""
    a, b = outer.a, outer.b
    e = e_triangle(outer)
    c4 = (a * a - b * b) ** 2
    k1 = a**4 + 2 * a * a * b * b + 5 * b**4
    k2 = 5 * a**4 + 2 * a * a * b * b + b**4
    x, y = e.a_tri * math.cos(t), e.b_tri * math.sin(t)
    dx, dy = -e.a_tri * math.sin(t), e.b_tri * math.cos(t)
    u, v = b * b * x, a * a * y
    w = (b * b * k1 * x * x + a * a * k2 * y * y) / c4
    du, dv = b * b * dx, a * a * dy
    dw = 2 * (b * b * k1 * x * dx + a * a * k2 * y * dy) / c4
    return u, v, w, du, dv, dw


def l36_envelope(outer: Ellipse, n_t: int = 256) -> list[Point2]:
    """Envelope of the X36 lines over the equilateral-centroid ellipse."""
    outer.require_canonical("l36_envelope")
    if outer.is_circle:
        raise OutOfDomain("envelope needs a > b")
    if n_t < 64:
        raise ValueError("need n_t >= 64")
    pts = []
    for t in np.linspace(0.0, 2 * math.pi, n_t, endpoint=False):
        u, v, w, du, dv, dw = l36_line_family(outer, t)
        M = np.array([[u, v], [du, dv]])
        if abs(np.linalg.det(M)) < 1e-14 * max(1.0, np.abs(M).max() ** 2):
            log.warning("singular envelope system at t=%g; skipped", t)
            continue
        x, y = np.linalg.solve(M, [w, dw])
        pts.append(Point2(float(x), float(y)))
    return pts


def _monomials(deg: int) -> list[tuple[int, int]]:
    return [(i, d - i) for d in range(deg + 1) for i in range(d, -1, -1)]


def implicit_fit_residual(points, degree: int) -> float:
    """RMS Sampson residual of the best implicit polynomial curve of ``degree`` (normalized units)."""
    P = np.asarray(points, dtype=float)
    m = P.mean(axis=0)
    s = math.sqrt(np.mean(np.sum((P - m) ** 2, axis=1)))
    X, Y = ((P - m) / s).T
    exps = _monomials(degree)
    V = np.column_stack([X**i * Y**j for i, j in exps])
    _, _, vt = np.linalg.svd(V, full_matrices=False)
    coef = vt[-1]
    gx = sum(cf * i * X ** max(i - 1, 0) * Y**j for cf, (i, j) in zip(coef, exps) if i > 0)
    gy = sum(cf * j * X**i * Y ** max(j - 1, 0) for cf, (i, j) in zip(coef, exps) if j > 0)
    val = V @ coef
    g2 = np.maximum(gx * gx + gy * gy, np.finfo(float).tiny)
    return float(np.sqrt(np.mean(val * val / g2)))


def l36_relation(outer: Ellipse, c) -> str:
    """'line' on the equilateral-centroid ellipse, else whether the X36 circle contains or misses ``outer``."""
    try:
        cf = closed_form(36, outer, c)
    except DegeneratesToLine:
        return "line"
    pts = outer.sample(720)
    d = np.linalg.norm(pts - np.asarray(cf.center), axis=1)
    r36 = cf.semi_axes[0]
    if np.all(d < r36):
        return "contains"
    if np.all(d > r36):
        return "disjoint"
    return "crosses"


# ---------------------------------------------------------------------------
# The degeneracy suite
# ---------------------------------------------------------------------------


@dataclass
class SuiteItem:
    name: str
    residual: float
    tol: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tol)

    def as_dict(self) -> dict:
        return {"name": self.name, "residual": self.residual, "pass": self.passed, **self.detail}


@dataclass
class DegeneracyReport:
    outer: Ellipse
    t: float
    items: list[SuiteItem]

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    def failures(self) -> list[SuiteItem]:
        return [i for i in self.items if not i.passed]

    def as_dict(self) -> dict:
        return {
            "a": self.outer.a,
            "b": self.outer.b,
            "t": self.t,
            "pass": self.passed,
            "items": [i.as_dict() for i in self.items],
        }


def _stationary_spread(family: PorismFamily, k: int, n: int, target: Point2) -> float:
    s = sweep(family, k, n)
    pts = s.valid_points
    return float(np.max(np.linalg.norm(pts - np.asarray(target), axis=1)))


def _extrema(fn, n: int = 256, maximum: bool = True):
    """(argmin, min) and (argmax, max) of a 2 pi-periodic function, polished by Brent.

    With ``maximum=False`` the second entry is None (for functions with a pole).
    """
    xs = 2 * np.pi * (np.arange(n) + 0.5) / n
    ys = np.array([fn(x) for x in xs])
    h = 2 * np.pi / n
    out = [None, None]
    todo = [(0, 1.0, int(np.argmin(ys)))]
    if maximum:
        todo.append((1, -1.0, int(np.argmax(ys))))
    for slot, sign, i in todo:
        res = minimize_scalar(lambda x: sign * fn(x), bounds=(xs[i] - h, xs[i] + h),
                              method="bounded", options={"xatol": 1e-12})
        out[slot] = (float(res.x), float(sign * res.fun))
    return out[0], out[1]


def degeneracy_suite(outer: Ellipse, t: float, n: int = DEFAULT_SAMPLES, tol: float = SUITE_TOL) -> DegeneracyReport:
    outer.require_canonical("degeneracy_suite")
    if outer.is_circle:
        raise OutOfDomain("the suite needs a > b")
    a = outer.a
    fam = family_on_e(outer, t)
    c = fam.caustic.center
    r = fam.caustic.r
    items: list[SuiteItem] = []

    def add(name, residual, **detail):
        items.append(SuiteItem(name, float(residual) / a, tol, detail))

    equi = equilateral_lambda(fam, t)

    # 1. C is a major vertex of L3
    _, f3 = fit_locus(fam, 3, n, adaptive=False)
    u3 = np.array([math.cos(f3.tilt), math.sin(f3.tilt)])
    vertices = [np.asarray(f3.center) + s * f3.semi_axes[0] * u3 for s in (1, -1)]
    far_vertex = max(vertices, key=lambda v: math.dist(v, c))
    add("C is a major vertex of L3", min(math.dist(v, c) for v in vertices))

    # 2-3. invariant aspect ratios
    ratio3 = f3.semi_axes[0] / f3.semi_axes[1]
    items.append(SuiteItem("a3/b3 invariant", abs(ratio3 - a3_b3_ratio(outer)) / a3_b3_ratio(outer), tol,
                           {"fitted": ratio3, "closed_form": a3_b3_ratio(outer)}))
    _, f7 = fit_locus(fam, 7, n, adaptive=False)
    ratio7 = f7.semi_axes[0] / f7.semi_axes[1]
    items.append(SuiteItem("a7/b7 invariant", abs(ratio7 - a7_b7_ratio(outer)) / a7_b7_ratio(outer), tol,
                           {"fitted": ratio7, "closed_form": a7_b7_ratio(outer)}))

    # 4. L5 is the segment from C to F5'
    _, f5 = fit_locus(fam, 5, n, adaptive=False)
    far5 = f5_far(outer, t)
    if f5.kind is LocusKind.LINE:
        ends = f5.endpoints
        end_err = min(max(math.dist(ends[0], c), math.dist(ends[1], far5)),
                      max(math.dist(ends[1], c), math.dist(ends[0], far5)))
        sweep5 = sweep(fam, 5, n).valid_points
        len_err = abs(math.dist(c, far5) ** 2 - l5_squared(outer, t))
        on_line = max(_point_line_distance(p, c, far5) for p in sweep5)
        # the sweep only samples the segment; its extreme points approach the ends to O(h^2)
        ext = _extent_error(sweep5, c, far5, fam, 5)
        add("L5 is a segment C..F5'", max(ext, on_line, len_err),
            length_sq=l5_squared(outer, t), printed_length_sq=l5_squared_printed(outer, t),
            sampled_endpoint_error=end_err)
    else:
        items.append(SuiteItem("L5 is a segment C..F5'", math.inf, tol, {"class": f5.kind.value}))

    # 5. L12 is a segment with an endpoint at C
    _, f12 = fit_locus(fam, 12, n, adaptive=False)
    if f12.kind is LocusKind.LINE:
        pts12 = sweep(fam, 12, n).valid_points
        e0, e1 = f12.endpoints
        d_line = max(_point_line_distance(p, e0, e1) for p in pts12)
        d = (np.asarray(e1) - np.asarray(e0)) / math.dist(e0, e1)
        s12 = (pts12 - np.asarray(c)) @ d
        side = 1.0 if np.median(s12) > 0 else -1.0
        overshoot = max(0.0, float(np.max(-side * s12)))
        at_c = math.dist(center_position(12, equi.triangle), c)
        add("L12 is a segment ending at C", max(d_line, overshoot, at_c))
    else:
        items.append(SuiteItem("L12 is a segment ending at C", math.inf, tol, {"class": f12.kind.value}))

    # 6. stationary X11, X80
    x11, x80 = x11_stationary(outer, t), x80_stationary(outer, t)
    add("X11 and X80 stationary", max(_stationary_spread(fam, 11, n, x11), _stationary_spread(fam, 80, n, x80)))

    # 7. L36 is the closed-form line
    line = l36_line(outer, c)
    s36 = sweep(fam, 36, n)
    pts36 = s36.valid_points
    dist36 = max(line_point_distance(line, p) / max(1.0, math.hypot(*p) / a) for p in pts36)
    add("L36 is the predicted line", dist36)

    # 8. L3 major axis perpendicular to L36, meeting at the foot point
    _, _, _, lu, lv, lw = line.coeffs
    nrm = np.array([lu, lv]) / math.hypot(lu, lv)
    foot = x36_foot(outer, c)
    perp = abs(u3[0] * nrm[1] - u3[1] * nrm[0]) * a
    on_l36 = line_point_distance(line, foot)
    on_axis = _point_line_distance(foot, f3.center, np.asarray(f3.center) + u3)
    add("L3 major axis meets L36 at right angles", max(perp, on_l36, on_axis))

    # 9. extremes of R and |X1X36|
    def circumradius(p):
        return metrics(fam.triangle(p)).R

    def x1x36(p):
        try:
            return math.dist(center_position(36, fam.triangle(p)), c)
        except CenterUndefined:
            return math.inf

    (_, rmin_num), (_, rmax_num) = _extrema(circumradius)
    x3_gap = lambda p: _signed_offset(center_position(3, fam.triangle(p)), far_vertex, u3)  # noqa: E731
    far_phase = _far_vertex_phase(fam, far_vertex, u3, n)
    (_, d36_min_num), _ = _extrema(x1x36, maximum=False)
    errs = [
        abs(rmin_num - r_min(outer, c)),
        abs(rmin_num - 2 * r),
        abs(circumradius(equi.phase) - 2 * r),
        abs(rmax_num - r_max(outer, c)),
        abs(circumradius(far_phase) - rmax_num),
        abs(d36_min_num - x1x36_min(outer, c)),
        abs(x1x36(far_phase) - d36_min_num),
        abs(x3_gap(far_phase)),
    ]
    add("extremes of R and |X1X36|", max(errs), r_max=r_max(outer, c), r_max_printed=r_max_printed(outer, c),
        r_max_numeric=rmax_num, x1x36_min=x1x36_min(outer, c))

    # 10. L59 is an ellipse touching the outer at the isosceles apex; undefined at the equilateral
    _, f59 = fit_locus(fam, 59, n, adaptive=False, skip_near=equi.phase, skip_window=1e-6)
    apex = isosceles_apex(outer, t)
    undefined = False
    try:
        center_position(59, equi.triangle)
    except CenterUndefined:
        undefined = True
    if f59.kind is LocusKind.ELLIPSE:
        e59 = f59.ellipse()
        pts = e59.sample(8192)
        inside = float(np.max((pts[:, 0] / outer.a) ** 2 + (pts[:, 1] / outer.b) ** 2 - 1.0))
        add("L59 ellipse tangent to outer at apex", max(abs(e59.implicit(apex)) * a, max(inside, 0.0) * a,
                                                         0.0 if undefined else math.inf),
            undefined_at_equilateral=undefined, rms=f59.rms_residual)
    else:
        items.append(SuiteItem("L59 ellipse tangent to outer at apex", math.inf, tol, {"class": f59.kind.value}))

    # 11. the isosceles member
    iso_phase = _isosceles_phase(fam, c, far5, equi.phase, n)
    tri = fam.triangle(iso_phase)
    v = tri.vertices
    i = int(np.argmin(np.linalg.norm(v - np.asarray(apex), axis=1)))
    legs = (math.dist(v[i], v[(i + 1) % 3]), math.dist(v[i], v[(i + 2) % 3]))
    base = GeneralConic.line_through(v[(i + 1) % 3], v[(i + 2) % 3])
    apex_on_outer = abs(outer.implicit(apex)) * a
    add("isosceles member with apex on the outer", max(math.dist(v[i], apex), abs(legs[0] - legs[1]),
                                                       line_point_distance(base, x11), apex_on_outer))

    # 12. L106 is a circle through X80
    _, f106 = fit_locus(fam, 106, n, adaptive=False)
    if f106.kind is LocusKind.CIRCLE:
        add("L106 circle through X80", abs(math.dist(f106.center, x80) - f106.semi_axes[0]))
    else:
        items.append(SuiteItem("L106 circle through X80", math.inf, tol, {"class": f106.kind.value}))

    return DegeneracyReport(outer, t, items)


def _point_line_distance(p, q0, q1) -> float:
    p, q0, q1 = (np.asarray(x, dtype=float) for x in (p, q0, q1))
    d = q1 - q0
    return float(abs(d[0] * (p - q0)[1] - d[1] * (p - q0)[0]) / math.hypot(*d))


def _signed_offset(p, origin, u) -> float:
    w = np.asarray(p) - np.asarray(origin)
    return float(u[0] * w[1] - u[1] * w[0])


def _far_vertex_phase(fam: PorismFamily, vertex, u, n: int) -> float:
    """Phase at which X3 passes the major vertex of its locus away from C."""
    def gap(p):
        return _signed_offset(center_position(3, fam.triangle(p)), vertex, u)

    # half-step offset keeps a crossing at phase 0 off the scan boundary
    h = math.pi / n
    roots = _sign_roots(gap, -h, 2 * math.pi - h, n)
    return min(roots, key=lambda p: math.dist(center_position(3, fam.triangle(p)), vertex))


def _extent_error(pts, c, far, fam: PorismFamily, k: int) -> float:
    """How far the swept points fall short of (or overshoot) the predicted segment ends."""
    c, far = np.asarray(c), np.asarray(far)
    d = far - c
    L = float(np.linalg.norm(d))
    s = (np.asarray(pts) - c) @ d / L
    over = max(0.0, -float(s.min()), float(s.max()) - L)
    # the far end is reached at an interior extremum; locate it precisely
    def proj(p):
        return float((np.asarray(center_position(k, fam.triangle(p))) - c) @ d / L)

    (_, lo), (_, hi) = _extrema(proj)
    return max(over, abs(lo), abs(hi - L))


def _isosceles_phase(fam: PorismFamily, c, far5, equi_phase: float, n: int) -> float:
    c, far5 = np.asarray(c), np.asarray(far5)
    d = far5 - c
    d = d / np.linalg.norm(d)

    def side(p):
        w = fam.vertices(p).mean(axis=0) - c
        return float(d[0] * w[1] - d[1] * w[0])

    roots = _sign_roots(side, 0.0, 2 * math.pi, n)
    others = [p for p in roots if abs(_wrap_pi(p - equi_phase)) > 1e-6]
    if not others:
        raise NotOnETriangle("no isosceles member found besides the equilateral")
    return max(others, key=lambda p: abs(_wrap_pi(p - equi_phase)))
