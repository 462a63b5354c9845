"""Triangle families from the degree-3 Blaschke parametrization.

In the unit-disk frame a family is fixed by two points ``f, g`` of the open
disk (the foci of the inner caustic).  For each ``lam`` on the unit circle the
three vertices are the roots of ``z^3 - s1 z^2 + s2 z - s3`` with

    s1 = f + g + lam conj(f) conj(g),  s2 = f g + lam (conj(f) + conj(g)),  s3 = lam,

and the affine stretch ``(x, y) -> (a x, b y)`` carries them onto the outer
ellipse.  The caustic itself is recovered by fitting a dual conic to sampled
side lines; ``blaschke_caustic`` gives the focal ("string") form used as a
cross-check.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .cayley import cayley_residual, euler_chapple, radius_for_center
from .conic import (
    AffineMap,
    Circle,
    Ellipse,
    Point2,
    Triangle,
    apply_affine,
    as_ellipse,
    as_point,
)
from .errors import (
    NotAConicCaustic,
    NotAPorism,
    NumericalFailure,
    SeedInvalid,
    SeedOutOfDisk,
)

DEFAULT_SAMPLES = 256
UNIT_ROOT_TOL = 1e-9


@dataclass(frozen=True)
class BlaschkeSeed:
    f: complex
    g: complex

    def __post_init__(self):
        f, g = complex(self.f), complex(self.g)
        for name, z in (("f", f), ("g", g)):
            if not abs(z) < 1.0:
                raise SeedOutOfDisk(f"|{name}| = {abs(z):.17g} is not inside the unit disk")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)


@dataclass(frozen=True)
class LambdaPoint:
    phase: float

    @property
    def value(self) -> complex:
        return cmath.exp(1j * self.phase)


def as_lambda(lam) -> complex:
    """Accept a phase (float), a unit complex number or a ``LambdaPoint``."""
    if isinstance(lam, LambdaPoint):
        return lam.value
    if isinstance(lam, complex):
        if abs(abs(lam) - 1.0) > 1e-12:
            raise ValueError(f"|lambda| = {abs(lam)} is not 1")
        return lam
    return cmath.exp(1j * float(lam))


def phases(n: int = DEFAULT_SAMPLES) -> np.ndarray:
    return 2 * np.pi * np.arange(n) / n


def sigma_polynomials(seed: BlaschkeSeed, lam) -> tuple[complex, complex, complex]:
    lam = as_lambda(lam)
    f, g = seed.f, seed.g
    fc, gc = f.conjugate(), g.conjugate()
    return f + g + lam * fc * gc, f * g + lam * (fc + gc), lam


def cubic_roots(s1: complex, s2: complex, s3: complex) -> np.ndarray:
    """Roots of ``z^3 - s1 z^2 + s2 z - s3`` (companion eigenvalues, one Newton step)."""
    comp = np.array([[s1, -s2, s3], [1, 0, 0], [0, 1, 0]], dtype=complex)
    z = np.linalg.eigvals(comp)
    if not np.all(np.isfinite(z)):
        raise NumericalFailure("companion eigenvalues did not converge")
    p = ((z - s1) * z + s2) * z - s3
    dp = (3 * z - 2 * s1) * z + s2
    ok = np.abs(dp) > 1e-12
    z[ok] -= p[ok] / dp[ok]
    return z


def unit_roots(seed: BlaschkeSeed, lam, tol: float = UNIT_ROOT_TOL) -> np.ndarray:
    """The three unit-circle roots, ordered by ascending principal argument."""
    z = cubic_roots(*sigma_polynomials(seed, lam))
    off = np.max(np.abs(np.abs(z) - 1.0))
    if off > tol:
        raise SeedInvalid(f"cubic root off the unit circle by {off:.3g}")
    return z[np.argsort(np.angle(z))]


def track_roots(seed: BlaschkeSeed, lams, tol: float = UNIT_ROOT_TOL) -> np.ndarray:
    """Roots for consecutive ``lams`` with each column following one vertex."""
    out = []
    prev = None
    for lam in lams:
        z = unit_roots(seed, lam, tol)
        if prev is not None:
            best = min(
                itertools.permutations(range(3)),
                key=lambda p: sum(abs(z[p[i]] - prev[i]) for i in range(3)),
            )
            z = z[list(best)]
        out.append(z)
        prev = z
    return np.array(out)


def string_length(seed: BlaschkeSeed) -> float:
    return abs(1 - seed.f.conjugate() * seed.g)


def blaschke_caustic(seed: BlaschkeSeed) -> Ellipse:
    """Unit-frame caustic: points whose distances to ``f`` and ``g`` sum to ``|1 - conj(f) g|``."""
    f, g = seed.f, seed.g
    major = 0.5 * string_length(seed)
    half_focal = 0.5 * abs(g - f)
    minor = math.sqrt(max(major * major - half_focal * half_focal, 0.0))
    mid = 0.5 * (f + g)
    tilt = math.atan2((g - f).imag, (g - f).real) if half_focal > 0 else 0.0
    tilt = (tilt + math.pi / 2) % math.pi - math.pi / 2
    return Ellipse(major, minor, Point2(mid.real, mid.imag), tilt)


def seed_from_circular_caustic(outer: Ellipse, c, r: float, tol: float = 1e-9) -> BlaschkeSeed:
    outer.require_canonical("seed_from_circular_caustic")
    c = as_point(c)
    a, b = outer.a, outer.b
    if outer.is_circle:
        if abs(r - euler_chapple(a, c.norm())) > tol * max(1.0, a):
            raise NotAPorism(f"radius {r} does not close a triangle family in this circle")
    else:
        res = cayley_residual(outer, Circle(c, r), relative=True)
        if abs(res) > tol:
            raise NotAPorism(f"closure residual {res:.3g} exceeds {tol:.1g}")
    base = complex(c.x / a, c.y / b)
    off = r * outer.c / (a * b)
    return BlaschkeSeed(base + 1j * off, base - 1j * off)


def seed_from_caustic(outer: Ellipse, caustic, tol: float = 1e-9) -> BlaschkeSeed:
    """Seed of an arbitrary elliptic caustic: the foci of its unit-frame pre-image.

    The pre-image only closes when its major axis equals half the string
    length ``|1 - conj(f) g|``; anything else is rejected.
    """
    outer.require_canonical("seed_from_caustic")
    m = AffineMap.scaling(outer.a, outer.b).inverse()
    pre = as_ellipse(apply_affine(m, as_ellipse(caustic)))
    p, q = pre.foci()
    seed = BlaschkeSeed(complex(p.x, p.y), complex(q.x, q.y))
    gap = pre.a - 0.5 * string_length(seed)
    if abs(gap) > tol:
        raise NotAPorism(f"pre-image major axis misses the closing length by {gap:.3g}")
    return seed


def _dual_fit(lines: np.ndarray) -> np.ndarray:
    """Symmetric 3x3 dual conic ``D`` minimising sum (l^T D l)^2 over unit-normal lines."""
    u, v, w = lines.T
    design = np.column_stack([u * u, 2 * u * v, v * v, 2 * u * w, 2 * v * w, w * w])
    _, _, vt = np.linalg.svd(design)
    d = vt[-1]
    return np.array([[d[0], d[1], d[3]], [d[1], d[2], d[4]], [d[3], d[4], d[5]]])


def _ellipse_from_dual(D: np.ndarray) -> Ellipse:
    from .conic import GeneralConic, conic_classify

    M = np.linalg.inv(D)
    return conic_classify(GeneralConic.from_matrix(M)).to_ellipse()


def tangency_residual(e, lines: np.ndarray) -> float:
    """Largest |signed offset - support value| over lines ``u x + v y + w = 0`` with unit normal."""
    e = as_ellipse(e)
    ct, st = math.cos(e.tilt), math.sin(e.tilt)
    u, v, w = lines.T
    n1 = u * ct + v * st
    n2 = -u * st + v * ct
    support = np.sqrt((e.a * n1) ** 2 + (e.b * n2) ** 2)
    offset = -(w + u * e.center.x + v * e.center.y)
    return float(np.max(np.abs(np.abs(offset) - support)))


def _unit_lines(tri_pts: np.ndarray) -> np.ndarray:
    rows = []
    for v in tri_pts:
        for i in range(3):
            p, q = v[(i + 1) % 3], v[(i + 2) % 3]
            nx, ny = q[1] - p[1], p[0] - q[0]
            h = math.hypot(nx, ny)
            rows.append((nx / h, ny / h, -(nx * p[0] + ny * p[1]) / h))
    return np.array(rows)


def caustic_from_seed(outer: Ellipse, seed: BlaschkeSeed, n: int = 64, tol: float = 1e-8):
    """Caustic in outer coordinates, fitted to ``3 n`` sampled side lines."""
    outer.require_canonical("caustic_from_seed")
    m = AffineMap.scaling(outer.a, outer.b)
    tris = np.array([m.apply_points(_as_xy(unit_roots(seed, lam))) for lam in phases(n)])
    lines = _unit_lines(tris)
    try:
        e = _ellipse_from_dual(_dual_fit(lines))
    except (ValueError, np.linalg.LinAlgError) as exc:
        raise NotAConicCaustic(f"dual fit is not an ellipse: {exc}") from exc
    res = tangency_residual(e, lines)
    if res > tol * max(1.0, outer.a):
        raise NotAConicCaustic(f"fitted caustic misses a side line by {res:.3g}")
    if e.a - e.b <= tol * max(1.0, e.a):
        return Circle(e.center, 0.5 * (e.a + e.b))
    return e


def _as_xy(z: np.ndarray) -> np.ndarray:
    return np.column_stack([z.real, z.imag])


@dataclass(frozen=True)
class PorismFamily:
    """An outer ellipse, its caustic and the seed that generates the triangles."""

    outer: Ellipse
    caustic: Ellipse | Circle
    seed: BlaschkeSeed
    map: AffineMap = field(repr=False, default=None)  # type: ignore[assignment]
    name: str = "generic"

    def __post_init__(self):
        self.outer.require_canonical("PorismFamily")
        if self.map is None:
            object.__setattr__(self, "map", AffineMap.scaling(self.outer.a, self.outer.b))

    @classmethod
    def from_circle(cls, outer: Ellipse, c, r: float | None = None, name: str = "circle") -> "PorismFamily":
        c = as_point(c)
        if r is None:
            r = euler_chapple(outer.a, c.norm()) if outer.is_circle else radius_for_center(outer, c).r
        seed = seed_from_circular_caustic(outer, c, r)
        return cls(outer, Circle(c, r), seed, name=name)

    @classmethod
    def from_seed(cls, outer: Ellipse, seed: BlaschkeSeed, name: str = "seed") -> "PorismFamily":
        caustic = caustic_from_seed(outer, seed)
        return cls(outer, caustic, seed, name=name)

    @classmethod
    def from_caustic(cls, outer: Ellipse, caustic, name: str = "caustic") -> "PorismFamily":
        return cls(outer, caustic, seed_from_caustic(outer, caustic), name=name)

    @classmethod
    def chapple(cls, R: float = 1.0, d: float = 0.3) -> "PorismFamily":
        return cls.from_circle(Ellipse(R, R), (d, 0.0), name="chapple")

    def roots(self, lam) -> np.ndarray:
        return unit_roots(self.seed, lam)

    def vertices(self, lam) -> np.ndarray:
        return self.map.apply_points(_as_xy(self.roots(lam)))

    def triangle(self, lam) -> Triangle:
        return Triangle.from_array(self.vertices(lam))

    def tracked_vertices(self, n: int = DEFAULT_SAMPLES) -> np.ndarray:
        """Shape ``(n, 3, 2)``; each vertex index follows one continuous branch."""
        z = track_roots(self.seed, phases(n))
        xy = np.stack([z.real, z.imag], axis=-1)
        return xy * np.array([self.outer.a, self.outer.b])

    def unit_caustic(self) -> Ellipse:
        return blaschke_caustic(self.seed)

    def caustic_closed_form(self) -> Ellipse:
        return as_ellipse(apply_affine(self.map, blaschke_caustic(self.seed)))


def triangle_at(family: PorismFamily, lam) -> Triangle:
    return family.triangle(lam)


def closure_error(family: PorismFamily, n: int = DEFAULT_SAMPLES) -> float:
    """Largest miss of any side line of ``n`` family triangles against the caustic."""
    tris = np.array([family.vertices(lam) for lam in phases(n)])
    return tangency_residual(family.caustic, _unit_lines(tris))
