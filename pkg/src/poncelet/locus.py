"""Loci of triangle centers over a family: sweeping, conic fitting, closed forms.

A sweep evaluates one center at evenly spaced phases of the family
parameter.  ``fit_conic`` then decides between point, line, conic and
"non-conic" by an algebraic least-squares fit in normalized coordinates
(data centred and scaled to unit RMS radius), with the Sampson distance as
the residual.  ``closed_form`` evaluates the known formulas for circular
caustics so that fit and formula can be compared term by term.
"""

from __future__ import annotations

import enum
import functools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .blaschke import DEFAULT_SAMPLES, PorismFamily
from .centers import center_position, get_center
from .config import Tolerances, default_tolerances
from .conic import (
    AffineMap,
    ConicKind,
    Ellipse,
    GeneralConic,
    Point2,
    Triangle,
    apply_affine,
    as_point,
    conic_classify,
)
from .errors import (
    AmbiguousFit,
    CenterUndefined,
    DegenerateTriangle,
    DegeneratesToLine,
    IndeterminateConic,
    LocusUnreliable,
    OutOfDomain,
)

log = logging.getLogger(__name__)

MIN_FIT_SAMPLES = 32
SEGMENT_RATIO = 1e-7
MAX_ADAPTIVE_SAMPLES = 1024


class LocusKind(str, enum.Enum):
    POINT = "point"
    LINE = "line"
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    LINE_PAIR = "line-pair"
    NONCONIC = "nonconic"

    @property
    def symbol(self) -> str:
        return {"point": "P", "circle": "C", "ellipse": "E", "nonconic": "-"}.get(self.value, "?")


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


@dataclass
class LocusSample:
    family: str
    k: int | str
    phases: np.ndarray
    points: np.ndarray
    defined: np.ndarray
    skipped: list[tuple[float, str]] = field(default_factory=list)

    @property
    def valid_points(self) -> np.ndarray:
        return self.points[self.defined]

    @property
    def valid_phases(self) -> np.ndarray:
        return self.phases[self.defined]


def sample_phases(n: int, offset: float = 0.5) -> np.ndarray:
    """``n`` increasing phases in [0, 2 pi); ``offset`` is a fraction of one step."""
    return 2 * np.pi * (np.arange(n) + offset) / n


@functools.lru_cache(maxsize=32)
def family_triangles(family: PorismFamily, n: int, offset: float) -> tuple:
    """Triangles at ``sample_phases(n, offset)``; a degenerate member is stored as its error."""
    out = []
    for p in sample_phases(n, offset):
        try:
            out.append(family.triangle(p))
        except DegenerateTriangle as exc:
            out.append(exc)
    return tuple(out)


def sweep(
    family: PorismFamily,
    k: int | Callable[[Triangle], Point2],
    n: int = DEFAULT_SAMPLES,
    *,
    offset: float = 0.5,
    max_skip: float = 0.1,
    skip_window: float = 0.0,
    skip_near: float | None = None,
) -> LocusSample:
    """Evaluate center ``k`` (or any ``triangle -> point`` callable) at ``n`` phases.

    Undefined samples are kept with ``defined=False``.  ``skip_near`` excludes a
    window of half-width ``skip_window`` around one phase.
    """
    if callable(k):
        fn, label = k, getattr(k, "__name__", "custom")
    else:
        spec = get_center(k)
        fn, label = (lambda t: center_position(spec, t)), spec.k
    ph = sample_phases(n, offset)
    tris = family_triangles(family, n, offset)
    pts = np.full((n, 2), np.nan)
    ok = np.zeros(n, dtype=bool)
    skipped = []
    for i, p in enumerate(ph):
        if skip_near is not None and abs(_angle_diff(p, skip_near)) <= skip_window:
            skipped.append((float(p), "excluded window"))
            continue
        try:
            t = tris[i]
            if isinstance(t, Exception):
                raise t
            pts[i] = center_or_raise(fn, t)
            ok[i] = True
        except (CenterUndefined, DegenerateTriangle) as exc:
            skipped.append((float(p), str(exc)))
    undefined = sum(1 for _, why in skipped if why != "excluded window")
    if undefined > max_skip * n:
        raise LocusUnreliable(f"X{label}: {undefined} of {n} samples undefined")
    if skipped:
        log.debug("X%s on %s: skipped %d samples", label, family.name, len(skipped))
    return LocusSample(family.name, label, ph, pts, ok, skipped)


def center_or_raise(fn, t: Triangle) -> np.ndarray:
    p = fn(t)
    arr = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise CenterUndefined("center is not finite")
    return arr


def _angle_diff(p: float, q: float) -> float:
    return (p - q + math.pi) % (2 * math.pi) - math.pi


# ---------------------------------------------------------------------------
# Fitting
# ---------------------------------------------------------------------------


@dataclass
class ConicFitResult:
    kind: LocusKind
    center: Point2 | None
    semi_axes: tuple[float, float] | None
    tilt: float | None
    foci: tuple[Point2, Point2] | None
    rms_residual: float
    conic: GeneralConic | None = None
    line: GeneralConic | None = None
    endpoints: tuple[Point2, Point2] | None = None
    singular_values: tuple[float, ...] = ()
    n: int = 0
    spread: float = 0.0

    @property
    def symbol(self) -> str:
        return self.kind.symbol

    def ellipse(self) -> Ellipse:
        if self.kind not in (LocusKind.ELLIPSE, LocusKind.CIRCLE):
            raise ValueError(f"{self.kind.value} locus has no ellipse")
        return Ellipse(self.semi_axes[0], self.semi_axes[1], self.center, self.tilt)


def _sampson_rms(design: np.ndarray, X: np.ndarray, Y: np.ndarray, v: np.ndarray) -> float:
    A, B, C, D, E, _ = v
    val = design @ v
    gx = 2 * A * X + B * Y + D
    gy = B * X + 2 * C * Y + E
    g2 = gx * gx + gy * gy
    g2 = np.where(g2 > 0, g2, np.finfo(float).tiny)
    return float(np.sqrt(np.mean(val * val / g2)))


def fit_conic(data, tol: Tolerances | None = None, min_samples: int = MIN_FIT_SAMPLES) -> ConicFitResult:
    tol = tol or default_tolerances()
    P = data.valid_points if isinstance(data, LocusSample) else np.asarray(data, dtype=float)
    n = len(P)
    if n < min_samples:
        raise LocusUnreliable(f"only {n} samples; need {min_samples}")
    m = P.mean(axis=0)
    d = P - m
    spread = float(np.sqrt(np.mean(np.sum(d * d, axis=1))))
    scale = max(1.0, float(np.hypot(*m)), spread)
    if spread <= tol.point * scale:
        c = Point2(float(m[0]), float(m[1]))
        return ConicFitResult(LocusKind.POINT, c, (0.0, 0.0), 0.0, (c, c), spread, n=n, spread=spread)

    Q = d / spread
    evals, evecs = np.linalg.eigh(Q.T @ Q / n)
    minor, major = math.sqrt(max(evals[0], 0.0)), math.sqrt(evals[1])
    if minor <= SEGMENT_RATIO * major:
        return _line_result(P, m, evecs, minor, n, spread)

    X, Y = Q.T
    design = np.column_stack([X * X, X * Y, Y * Y, X, Y, np.ones_like(X)])
    _, S, Vt = np.linalg.svd(design, full_matrices=False)
    v = Vt[-1]
    rms = _sampson_rms(design, X, Y, v)
    to_data = AffineMap(((spread, 0.0), (0.0, spread)), (float(m[0]), float(m[1])))
    q_norm = GeneralConic.from_coefficients(*v)
    conic = apply_affine(to_data, q_norm)
    sv = tuple(float(s) for s in S[-3:])
    if rms > tol.conic:
        return ConicFitResult(LocusKind.NONCONIC, None, None, None, None, rms, conic, singular_values=sv, n=n, spread=spread)
    if S[-2] <= 10 * S[-1]:
        alt = apply_affine(to_data, GeneralConic.from_coefficients(*Vt[-2]))
        raise AmbiguousFit("two conics fit the samples about equally well", (conic, alt))
    if q_norm.quadratic_norm <= tol.line:
        return _line_result(P, m, evecs, minor, n, spread)

    try:
        cls = conic_classify(q_norm, tol=1e-9)
    except IndeterminateConic:
        return ConicFitResult(LocusKind.NONCONIC, None, None, None, None, rms, conic, singular_values=sv, n=n, spread=spread)
    kind_map = {
        ConicKind.PARABOLA: LocusKind.PARABOLA,
        ConicKind.HYPERBOLA: LocusKind.HYPERBOLA,
        ConicKind.LINE_PAIR: LocusKind.LINE_PAIR,
        ConicKind.LINE: LocusKind.LINE,
    }
    if cls.kind not in (ConicKind.ELLIPSE, ConicKind.CIRCLE):
        kind = kind_map.get(cls.kind, LocusKind.NONCONIC)
        ctr = None if cls.center is None else Point2(*(m + spread * np.asarray(cls.center)))
        return ConicFitResult(kind, ctr, None, None, None, rms, conic, singular_values=sv, n=n, spread=spread)

    a_l, b_l = cls.semi_axes[0] * spread, cls.semi_axes[1] * spread
    ctr = Point2(*(float(x) for x in m + spread * np.asarray(cls.center)))
    tilt = cls.tilt
    if a_l - b_l <= tol.conic * a_l:
        r_l = 0.5 * (a_l + b_l)
        return ConicFitResult(LocusKind.CIRCLE, ctr, (r_l, r_l), 0.0, (ctr, ctr), rms, conic, singular_values=sv, n=n, spread=spread)
    foci = Ellipse(a_l, b_l, ctr, tilt).foci()
    return ConicFitResult(LocusKind.ELLIPSE, ctr, (a_l, b_l), tilt, foci, rms, conic, singular_values=sv, n=n, spread=spread)


def _line_result(P, m, evecs, minor, n, spread) -> ConicFitResult:
    direction, normal = evecs[:, 1], evecs[:, 0]
    line = GeneralConic.line(float(normal[0]), float(normal[1]), float(-normal @ m))
    t = (P - m) @ direction
    ends = (Point2(*(m + t.min() * direction)), Point2(*(m + t.max() * direction)))
    ctr = Point2(float(m[0]), float(m[1]))
    return ConicFitResult(
        LocusKind.LINE, ctr, None, None, None, minor, line=line, endpoints=ends, n=n, spread=spread
    )


def fit_locus(
    family: PorismFamily,
    k,
    n: int = DEFAULT_SAMPLES,
    tol: Tolerances | None = None,
    adaptive: bool = True,
    **sweep_kw,
) -> tuple[LocusSample, ConicFitResult]:
    """Sweep and fit; the sample count doubles while the fit is non-conic (up to 1024)."""
    tol = tol or default_tolerances()
    while True:
        s = sweep(family, k, n, **sweep_kw)
        fit = fit_conic(s, tol)
        if not adaptive or fit.kind is not LocusKind.NONCONIC or 2 * n > MAX_ADAPTIVE_SAMPLES:
            return s, fit
        n *= 2


# ---------------------------------------------------------------------------
# Closed forms for circular caustics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedFormLocus:
    k: int
    kind: LocusKind
    center: Point2 | None = None
    semi_axes: tuple[float, float] | None = None
    tilt: float | None = None
    foci: tuple[Point2, Point2] | None = None
    aspect: float | None = None
    line: GeneralConic | None = None
    endpoints: tuple[Point2, Point2] | None = None
    source: str = ""


def _wrap(t: float) -> float:
    return (t + math.pi / 2) % math.pi - math.pi / 2


def _from_foci(k, f1: Point2, f2: Point2, a_l: float, source: str) -> ClosedFormLocus:
    ctr = Point2(0.5 * (f1.x + f2.x), 0.5 * (f1.y + f2.y))
    half = 0.5 * math.hypot(f2.x - f1.x, f2.y - f1.y)
    b_l = math.sqrt(max(a_l * a_l - half * half, 0.0))
    tilt = _wrap(math.atan2(f2.y - f1.y, f2.x - f1.x)) if half > 0 else 0.0
    kind = LocusKind.CIRCLE if half == 0 else LocusKind.ELLIPSE
    return ClosedFormLocus(k, kind, ctr, (a_l, b_l), tilt, (f1, f2), source=source)


def e_triangle_excess(outer: Ellipse, c) -> float:
    """Zero exactly when ``c`` lies on the ellipse of equilateral centroids (relative units)."""
    a, b = outer.a, outer.b
    x, y = as_point(c)
    c2 = a * a - b * b
    den = a * a * b * b * c2 * c2
    return (den - b * b * (a * a + 3 * b * b) ** 2 * x * x - a * a * (3 * a * a + b * b) ** 2 * y * y) / den


def l36_line(outer: Ellipse, c) -> GeneralConic:
    """The line swept by X36 when the caustic centre lies on the equilateral-centroid ellipse."""
    a, b = outer.a, outer.b
    x, y = as_point(c)
    c4 = (a * a - b * b) ** 2
    rhs = (
        b * b * (a**4 + 2 * a * a * b * b + 5 * b**4) * x * x
        + a * a * (5 * a**4 + 2 * a * a * b * b + b**4) * y * y
    ) / c4
    return GeneralConic.line(b * b * x, a * a * y, -rhs)


def closed_form(k: int, outer: Ellipse, c, r: float | None = None) -> ClosedFormLocus:
    """Predicted locus of ``X_k`` for the circular caustic centred at ``c``."""
    outer.require_canonical("closed_form")
    a, b = outer.a, outer.b
    if a <= b:
        raise OutOfDomain("closed forms need a > b")
    xc, yc = as_point(c)
    if not outer.contains((xc, yc)):
        raise OutOfDomain("caustic centre outside the outer ellipse")
    if r is not None:
        from .cayley import radius_for_center

        r0 = radius_for_center(outer, (xc, yc)).r
        if abs(r - r0) > 1e-9 * max(1.0, a):
            raise OutOfDomain(f"radius {r} does not close; expected {r0}")
    c2 = a * a - b * b
    c4 = c2 * c2
    d3 = math.sqrt(b**4 + c2 * yc * yc) / (2 * b)
    d3p = math.sqrt(a**4 - c2 * xc * xc) / (2 * a)
    delta = 4 * a * b * d3 * d3p  # sqrt((b^4 + c^2 yc^2)(a^4 - c^2 xc^2))

    if k == 2:
        a2sq = (
            -4 * a * b * (a * a + b * b) * delta
            - 4 * b**4 * c2 * xc * xc
            + 4 * a**4 * c2 * yc * yc
            + a * a * b * b * (a**4 + 6 * a * a * b * b + b**4)
        ) / (9 * b * b * c4)
        a2 = math.sqrt(a2sq)
        ctr = Point2(2 * xc / 3, 2 * yc / 3)
        e = Ellipse(a2, a2 * b / a, ctr, 0.0)
        return ClosedFormLocus(2, LocusKind.ELLIPSE, ctr, (e.a, e.b), 0.0, e.foci(), source="centroid locus")
    if k == 3:
        f1 = Point2(xc * (1 - (b / a) ** 2), 0.0)
        f2 = Point2(0.0, yc * (1 - (a / b) ** 2))
        return _from_foci(3, f1, f2, d3 * a / b - d3p * b / a, "circumcenter locus")
    if k == 4:
        z4p = xc * xc + yc * yc
        z4 = (
            (a * a + b * b) * (a**8 * yc * yc + b**8 * xc * xc - 4 * a**3 * b**3 * delta)
            + a**8 * b**4
            + a**6 * b**4 * (6 * b * b - z4p)
            + a**4 * b**6 * (b * b - z4p)
        )
        a4 = math.sqrt(z4 / (a * a * b**4 * c4))
        b4 = math.sqrt(z4 / (b * b * a**4 * c4))
        ctr = Point2((a * a + b * b) / (a * a) * xc, (a * a + b * b) / (b * b) * yc)
        e = Ellipse(a4, b4, ctr, math.pi / 2)
        return ClosedFormLocus(4, LocusKind.ELLIPSE, ctr, (a4, b4), math.pi / 2, e.foci(), source="orthocenter locus")
    if k == 5:
        f1 = Point2(xc, yc)
        f2 = Point2(xc * (1 + (b / a) ** 2) / 2, yc * (1 + (a / b) ** 2) / 2)
        a5 = (
            (a**5 + 3 * a**3 * b * b) * d3 / (2 * a) - (b**5 + 3 * a * a * b**3) * d3p / (2 * b)
        ) / (a * b * c2)
        return _from_foci(5, f1, f2, a5, "nine-point-center locus")
    if k == 7:
        num_x = 4 * a * xc * (
            4 * a**5 + a**3 * b * b + a * b**4 - a * (4 * a * a - 3 * b * b) * xc * xc - a * b * b * yc * yc - 3 * b * delta
        )
        den_x = a * a * (4 * a * a - b * b) ** 2 - (4 * a * a - 3 * b * b) ** 2 * xc * xc - a * a * b * b * yc * yc
        num_y = 4 * b * yc * (
            4 * b**5 + a * a * b**3 + a**4 * b - b * (4 * b * b - 3 * a * a) * yc * yc - a * a * b * xc * xc - 3 * a * delta
        )
        den_y = b * b * (4 * b * b - a * a) ** 2 - (3 * a * a - 4 * b * b) ** 2 * yc * yc - a * a * b * b * xc * xc
        x7, y7 = num_x / den_x, num_y / den_y
        aspect = None
        if abs(xc) > 1e-12 and abs(yc) > 1e-12:
            aspect = math.sqrt((y7 * xc) / (x7 * yc))
        return ClosedFormLocus(
            7, LocusKind.ELLIPSE, Point2(x7, y7), None, math.pi / 2, None, aspect, source="Gergonne locus"
        )
    if k == 8:
        d8 = (a**3 * b + a * b**3 - 2 * delta) ** 2 + 4 * c4 * xc * xc * yc * yc
        e = Ellipse(math.sqrt(d8) / (b * c2), math.sqrt(d8) / (a * c2))
        return ClosedFormLocus(8, LocusKind.ELLIPSE, e.center, (e.a, e.b), 0.0, e.foci(), source="Nagel locus")
    if k == 36:
        if abs(e_triangle_excess(outer, (xc, yc))) <= 1e-12:
            line = l36_line(outer, (xc, yc))
            raise DegeneratesToLine("caustic centre on the equilateral-centroid ellipse", line)
        z2 = a**6 * b * b - 9 * a**6 * yc * yc - a**4 * b * b * xc * xc
        z1 = (
            z2
            - 2 * a**4 * b**4
            - 6 * a**4 * b * b * yc * yc
            + a * a * b**6
            - 6 * a * a * b**4 * xc * xc
            - a * a * b**4 * yc * yc
            - 9 * b**6 * xc * xc
        )
        x36 = xc * (
            z2
            - 6 * a**4 * b**4
            + 6 * a**4 * b * b * yc * yc
            - 3 * a * a * b**6
            - 2 * a * a * b**4 * xc * xc
            + 3 * a * a * b**4 * yc * yc
            - 8 * a * b**3 * delta
            + 3 * b**6 * xc * xc
        )
        y36 = yc * (
            3 * a**6 * (yc * yc - b * b)
            - a**4 * (6 * b**4 + b * b * (2 * yc * yc - 3 * xc * xc))
            - 8 * a**3 * b * delta
            + a * a * b**4 * (b * b + 6 * xc * xc - yc * yc)
            - 9 * b**6 * xc * xc
        )
        d4, d4p = 2 * a * d3p, 2 * b * d3
        z36 = 5 * b * a**4 * yc * yc - b**3 * a * a * (a * a + yc * yc - xc * xc) + b**5 * (a * a + 3 * xc * xc)
        z36p = 5 * a * b**4 * xc * xc - a**3 * b * b * (b * b + xc * xc - yc * yc) + a**5 * (b * b + 3 * yc * yc)
        den = a * a * b * b * c4 - b * b * (a * a + 3 * b * b) ** 2 * xc * xc - a * a * (3 * a * a + b * b) ** 2 * yc * yc
        r36 = abs(2 * (d4 * z36 - d4p * z36p) / den)
        ctr = Point2(x36 / z1, y36 / z1)
        return ClosedFormLocus(36, LocusKind.CIRCLE, ctr, (r36, r36), 0.0, (ctr, ctr), source="X36 circle")
    raise KeyError(f"no closed form for X{k}; available: 2, 3, 4, 5, 7, 8, 36")


CLOSED_FORM_KS = (2, 3, 4, 5, 7, 8, 36)


# ---------------------------------------------------------------------------
# Comparison
# ---------------------------------------------------------------------------


@dataclass
class CompareReport:
    k: int
    passed: bool
    errors: dict[str, float]
    failures: list[str]

    def as_dict(self) -> dict:
        return {"k": self.k, "pass": self.passed, "errors": self.errors, "failures": self.failures}


def _rel_ok(err: float, ref: float, rel: float, abs_tol: float) -> bool:
    return err <= abs_tol or err <= rel * abs(ref)


def _line_key(line: GeneralConic) -> np.ndarray:
    _, _, _, u, v, w = line.coeffs
    h = math.hypot(u, v)
    vec = np.array([u, v, w]) / h
    i = int(np.argmax(np.abs(vec[:2])))
    return vec if vec[i] > 0 else -vec


def compare(fit: ConicFitResult, cf: ClosedFormLocus, rel: float = 1e-6, abs_tol: float = 1e-8) -> CompareReport:
    errors: dict[str, float] = {}
    failures: list[str] = []

    def check(name, got, want):
        err = abs(got - want)
        errors[name] = err
        if not _rel_ok(err, want, rel, abs_tol):
            failures.append(name)

    conic_kinds = {LocusKind.ELLIPSE, LocusKind.CIRCLE}
    if cf.kind is LocusKind.LINE:
        if fit.kind is not LocusKind.LINE:
            return CompareReport(cf.k, False, errors, [f"class {fit.kind.value} != line"])
        if cf.line is not None:
            err = float(np.max(np.abs(_line_key(fit.line) - _line_key(cf.line))))
            errors["line"] = err
            if err > max(abs_tol, rel):
                failures.append("line")
        if cf.endpoints is not None:
            got = sorted(fit.endpoints)
            want = sorted(cf.endpoints)
            err = min(
                max(math.dist(got[0], want[0]), math.dist(got[1], want[1])),
                max(math.dist(got[0], want[1]), math.dist(got[1], want[0])),
            )
            errors["endpoints"] = err
            if err > max(abs_tol, rel * max(1.0, math.dist(*want))):
                failures.append("endpoints")
        return CompareReport(cf.k, not failures, errors, failures)

    if fit.kind not in conic_kinds or (cf.kind is LocusKind.CIRCLE and fit.kind is not LocusKind.CIRCLE):
        return CompareReport(cf.k, False, errors, [f"class {fit.kind.value} != {cf.kind.value}"])

    check("center.x", fit.center.x, cf.center.x)
    check("center.y", fit.center.y, cf.center.y)
    if cf.semi_axes is not None:
        check("semi_axis.major", fit.semi_axes[0], cf.semi_axes[0])
        check("semi_axis.minor", fit.semi_axes[1], cf.semi_axes[1])
    if cf.aspect is not None:
        check("aspect", fit.semi_axes[0] / fit.semi_axes[1], cf.aspect)
    major = fit.semi_axes[0]
    roundish = (fit.semi_axes[0] - fit.semi_axes[1]) <= 1e-4 * major
    if cf.tilt is not None and fit.kind is LocusKind.ELLIPSE and not roundish:
        err = abs(_wrap(fit.tilt - cf.tilt))
        errors["tilt"] = err
        if err > max(abs_tol, rel):
            failures.append("tilt")
    if cf.foci is not None and fit.foci is not None and not roundish:
        f, g = fit.foci
        p, q = cf.foci
        err = min(max(math.dist(f, p), math.dist(g, q)), max(math.dist(f, q), math.dist(g, p)))
        errors["foci"] = err
        if err > max(abs_tol, rel * max(1.0, major)):
            failures.append("foci")
    return CompareReport(cf.k, not failures, errors, failures)


# ---------------------------------------------------------------------------
# Behavior taxonomy
# ---------------------------------------------------------------------------

BEHAVIORS = ("E-homothety", "concentric", "axis-aligned", "C-focus", "C-major", "C-minor", "circle", "stationary")


def behavior_tags(fit: ConicFitResult, outer: Ellipse, c, tol: float = 1e-6) -> set[str]:
    c = as_point(c)
    if fit.kind is LocusKind.POINT:
        return {"stationary"}
    if fit.kind is LocusKind.CIRCLE:
        return {"circle"}
    if fit.kind is not LocusKind.ELLIPSE:
        return set()
    tags = set()
    a_l, b_l = fit.semi_axes
    scale = max(1.0, a_l)
    along_x = abs(_wrap(fit.tilt)) <= tol
    along_y = abs(abs(_wrap(fit.tilt)) - math.pi / 2) <= tol
    homothetic = (along_x or along_y) and abs(a_l / b_l - outer.a / outer.b) <= tol * outer.a / outer.b
    if homothetic:
        tags.add("E-homothety")
        if math.hypot(*fit.center) <= tol * scale:
            tags.add("concentric")
    elif along_x or along_y:
        tags.add("axis-aligned")
    if any(math.dist(f, c) <= tol * scale for f in fit.foci):
        tags.add("C-focus")
    else:
        u = np.array([math.cos(fit.tilt), math.sin(fit.tilt)])
        w = np.asarray(c) - np.asarray(fit.center)
        if abs(u[0] * w[1] - u[1] * w[0]) <= tol * scale:
            tags.add("C-major")
        elif abs(u @ w) <= tol * scale:
            tags.add("C-minor")
    return tags


def behavior_check(family: PorismFamily, k: int, n: int = DEFAULT_SAMPLES, tol: float = 1e-6) -> set[str]:
    _, fit = fit_locus(family, k, n)
    c = getattr(family.caustic, "center", None)
    return behavior_tags(fit, family.outer, c if c is not None else (0.0, 0.0), tol)


# ---------------------------------------------------------------------------
# Table of locus classes for k = 1, 7, 8
# ---------------------------------------------------------------------------

TABLE1_EXPECTED = {
    "Confocal": ("E", "E", "E"),
    "Chapple": ("P", "C", "C"),
    "Incircle": ("P", "E", "E"),
    "Circ-caustic": ("P", "E", "E"),
    "Homothetic": ("-", "-", "-"),
    "Dual": ("-", "-", "-"),
    "MacBeath": ("-", "-", "-"),
}
TABLE1_CENTERS = (1, 7, 8)
TABLE1_EXCLUDED = ("Conf. Excentrals", "Inellipse", "Brocard")


@dataclass
class Table1Row:
    family: str
    expected: tuple[str, str, str]
    got: tuple[str, str, str]
    residuals: tuple[float, float, float]

    @property
    def passed(self) -> bool:
        return self.got == self.expected


@dataclass
class Table1Result:
    rows: list[Table1Row]
    excluded: tuple[str, ...] = TABLE1_EXCLUDED

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def nonconic_margin(self, conic_tol: float) -> float:
        """Smallest residual among the non-conic cells, in units of ``conic_tol``."""
        vals = [res for r in self.rows for g, res in zip(r.got, r.residuals) if g == "-"]
        return min(vals) / conic_tol if vals else math.inf


def table1_families() -> dict[str, PorismFamily]:
    from .families import FamilyKind, build

    outer = Ellipse(1.5, 1.0)
    return {
        "Confocal": build(FamilyKind.CONFOCAL, outer),
        "Chapple": build(FamilyKind.CHAPPLE),
        "Incircle": PorismFamily.from_circle(outer, (0.0, 0.0), name="incircle"),
        "Circ-caustic": PorismFamily.from_circle(outer, (0.3, 0.2), name="circ-caustic"),
        "Homothetic": build(FamilyKind.HOMOTHETIC, outer),
        "Dual": build(FamilyKind.DUAL, outer),
        "MacBeath": build(FamilyKind.MACBEATH),
    }


def table1_reproduce(n: int = DEFAULT_SAMPLES, tol: Tolerances | None = None) -> Table1Result:
    tol = tol or default_tolerances()
    rows = []
    for name, fam in table1_families().items():
        got, res = [], []
        for k in TABLE1_CENTERS:
            _, fit = fit_locus(fam, k, n, tol, adaptive=False)
            got.append(fit.symbol)
            res.append(fit.rms_residual)
        rows.append(Table1Row(name, TABLE1_EXPECTED[name], tuple(got), tuple(res)))
    return Table1Result(rows)
