"""Static figure builders.

Each builder turns a small parameter set into an ``svg.Scene``.  Everything
is computed from the library, so the pictures double as visual smoke tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import equilateral as eq
from . import families
from .blaschke import PorismFamily
from .cayley import iso_radius_curve
from .centers import center_position
from .conic import Ellipse, as_ellipse
from .errors import CenterUndefined, EmptyCurve
from .locus import l36_line, sweep
from .svg import PALETTE, Scene, arc_gap_split, clip


@dataclass(frozen=True)
class FigureSpec:
    name: str
    a: float = 1.5
    b: float = 1.0
    params: dict = field(default_factory=dict)


def _draw_family(scene: Scene, fam: PorismFamily, phase: float = 0.4) -> None:
    scene.ellipse(fam.outer, PALETTE[0], width=1.5)
    scene.ellipse(as_ellipse(fam.caustic), PALETTE[3], width=1.2)
    scene.polyline(fam.vertices(phase), PALETTE[6], closed=True)


def _draw_locus(scene: Scene, fam: PorismFamily, k: int, color: str, n: int = 360, **kw) -> None:
    pts = clip(sweep(fam, k, n, **kw).points, fam.outer)
    for part in arc_gap_split(pts, 0.25 * fam.outer.a):
        scene.polyline(part, color, width=1.2)


def foliation(spec: FigureSpec) -> Scene:
    outer = Ellipse(spec.a, spec.b)
    scene = Scene(outer, "iso-radius curves of circular caustics")
    scene.ellipse(outer, PALETTE[0], width=1.5)
    for i, r in enumerate(spec.params.get("radii", (0.15, 0.25, 0.35, 0.45, 0.55))):
        try:
            pts = np.asarray(iso_radius_curve(outer, r))
        except EmptyCurve:
            continue
        if len(pts) == 1:
            scene.point(pts[0], PALETTE[1 + i % 5])
        else:
            scene.polyline(pts, PALETTE[1 + i % 5], closed=True)
    return scene


def loci(spec: FigureSpec) -> Scene:
    outer = Ellipse(spec.a, spec.b)
    c = spec.params.get("center", (0.3, 0.2))
    fam = PorismFamily.from_circle(outer, c)
    scene = Scene(outer, "loci of X3, X5, X8 for a circular caustic")
    _draw_family(scene, fam)
    for k, color in zip((3, 5, 8), PALETTE[1:]):
        _draw_locus(scene, fam, k, color)
    scene.point(c, PALETTE[3])
    return scene


def concentric(spec: FigureSpec) -> Scene:
    outer = Ellipse(spec.a, spec.b)
    kind = spec.params.get("kind", "homothetic")
    fam = families.build(kind, outer)
    scene = Scene(outer, f"{kind} family with loci of X1, X2, X3")
    _draw_family(scene, fam)
    for k, color in zip((1, 2, 3), PALETTE[1:]):
        _draw_locus(scene, fam, k, color)
    return scene


def special(spec: FigureSpec) -> Scene:
    kind = families.FamilyKind(spec.params.get("kind", "iso-x7"))
    fam = families.build(kind, Ellipse(spec.a, spec.b))
    scene = Scene(fam.outer, f"{kind.value} family")
    _draw_family(scene, fam)
    for k, p in families.stationary_centers(kind, fam.outer if kind is not families.FamilyKind.MACBEATH else None):
        scene.point(p, PALETTE[1])
        scene.label(p, f"X{k}")
    return scene


def r36(spec: FigureSpec) -> Scene:
    outer = Ellipse(spec.params.get("a", 3.5), spec.params.get("b", 1.0))
    fam = PorismFamily.from_circle(outer, (0.0, 0.0))
    scene = Scene(outer, "X36 locus for the concentric incircle family")
    _draw_family(scene, fam)
    _draw_locus(scene, fam, 36, PALETTE[4])
    return scene


def degeneracy(spec: FigureSpec) -> Scene:
    outer = Ellipse(spec.a, spec.b)
    t = spec.params.get("t", math.pi / 4)
    fam = eq.family_on_e(outer, t)
    c = fam.caustic.center
    scene = Scene(outer, "caustic centre on the equilateral-centroid ellipse")
    _draw_family(scene, fam)
    scene.ellipse(eq.e_triangle(outer).ellipse(), PALETTE[2], dash=True)
    scene.segment(c, eq.f5_far(outer, t), PALETTE[1], width=2.0)
    for k, p in ((11, eq.x11_stationary(outer, t)), (80, eq.x80_stationary(outer, t))):
        scene.point(p, PALETTE[4])
        scene.label(p, f"X{k}")
    _draw_locus(scene, fam, 3, PALETTE[5])
    _draw_line(scene, outer, l36_line(outer, c), PALETTE[4])
    return scene


def _draw_line(scene: Scene, outer: Ellipse, line, color: str) -> None:
    _, _, _, u, v, w = line.coeffs
    n = np.array([u, v]) / math.hypot(u, v)
    p0 = -w / math.hypot(u, v) * n
    d = np.array([-n[1], n[0]])
    span = 2 * max(outer.a, outer.b)
    scene.segment(p0 - span * d, p0 + span * d, color)


def envelope(spec: FigureSpec) -> Scene:
    outer = Ellipse(spec.a, spec.b)
    scene = Scene(outer, "envelope of the X36 lines", margin=spec.params.get("margin", 2.2))
    scene.ellipse(outer, PALETTE[0], width=1.5)
    scene.ellipse(eq.e_triangle(outer).ellipse(), PALETTE[2], dash=True)
    for t in np.linspace(0, 2 * math.pi, 24, endpoint=False):
        c = eq.e_triangle(outer).point(t)
        _draw_line(scene, outer, l36_line(outer, c), "#d5d8dc")
    scene.polyline(eq.l36_envelope(outer, 360), PALETTE[1], closed=True, width=1.5)
    return scene


def x59(spec: FigureSpec) -> Scene:
    outer = Ellipse(spec.a, spec.b)
    t = spec.params.get("t", math.pi / 4)
    fam = eq.family_on_e(outer, t)
    phase = eq.equilateral_lambda(fam, t).phase
    scene = Scene(outer, "X59 locus touching the outer ellipse")
    _draw_family(scene, fam)
    _draw_locus(scene, fam, 59, PALETTE[4], skip_near=phase, skip_window=1e-6)
    scene.point(eq.isosceles_apex(outer, t), PALETTE[1])
    return scene


def chapple(spec: FigureSpec) -> Scene:
    R, d = spec.params.get("R", 1.0), spec.params.get("d", 0.3)
    fam = PorismFamily.chapple(R, d)
    scene = Scene(fam.outer, "X59 locus in the bicentric family")
    _draw_family(scene, fam)
    _draw_locus(scene, fam, 59, PALETTE[4])
    for k in (1, 3):
        try:
            p = center_position(k, fam.triangle(0.3))
        except CenterUndefined:
            continue
        scene.point(p, PALETTE[1])
        scene.label(p, f"X{k}")
    return scene


FIGURES: dict[str, tuple[Callable[[FigureSpec], Scene], str]] = {
    "foliation": (foliation, "iso-radius curves r in {0.15..0.55}"),
    "loci": (loci, "X3/X5/X8 loci for a generic circular caustic"),
    "concentric": (concentric, "homothetic, dual or confocal family (--kind)"),
    "special": (special, "special family with its stationary centers (--kind)"),
    "r36": (r36, "X36 circle for the concentric incircle family, outer (3.5, 1)"),
    "degeneracy": (degeneracy, "E-triangle family: L5 segment, X11/X80, L3 and L36"),
    "envelope": (envelope, "envelope of the L36 lines"),
    "x59": (x59, "elliptic L59 touching the outer"),
    "chapple": (chapple, "L59 in the bicentric family"),
}


def build_figure(spec: FigureSpec) -> Scene:
    try:
        fn, _ = FIGURES[spec.name]
    except KeyError:
        raise KeyError(f"unknown figure {spec.name!r}; known: {sorted(FIGURES)}") from None
    return fn(spec)

