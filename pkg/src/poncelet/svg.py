"""Minimal deterministic SVG writer.

Coordinates are emitted with fixed precision and elements in insertion
order, so the same scene always produces the same bytes.  The y axis is
flipped with a group transform so scenes are described in math orientation.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .conic import Ellipse

PALETTE = ("#1f4e9c", "#c0392b", "#1e8449", "#b9770e", "#6c3483", "#117a65", "#7f8c8d")


def _f(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass
class Scene:
    outer: Ellipse
    title: str = ""
    items: list[str] = field(default_factory=list)
    margin: float = 1.4

    @property
    def stroke(self) -> float:
        return 0.004 * max(self.outer.a, self.outer.b) * self.margin

    def polyline(self, pts, color: str = PALETTE[0], closed: bool = False, width: float = 1.0, dash: bool = False) -> None:
        pts = np.asarray(pts, dtype=float)
        if len(pts) < 2:
            return
        d = "M" + " L".join(f"{_f(x)},{_f(y)}" for x, y in pts) + (" Z" if closed else "")
        extra = f' stroke-dasharray="{_f(4 * self.stroke)},{_f(3 * self.stroke)}"' if dash else ""
        self.items.append(f'<path d="{d}" fill="none" stroke="{color}" stroke-width="{_f(width * self.stroke)}"{extra}/>')

    def ellipse(self, e: Ellipse, color: str = PALETTE[0], width: float = 1.0, dash: bool = False, n: int = 256) -> None:
        self.polyline(e.sample(n), color, closed=True, width=width, dash=dash)

    def segment(self, p, q, color: str = PALETTE[6], width: float = 1.0) -> None:
        self.polyline([p, q], color, width=width)

    def point(self, p, color: str = PALETTE[1], radius: float = 2.5) -> None:
        x, y = p
        self.items.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(radius * self.stroke)}" fill="{color}"/>')

    def points(self, pts, color: str = PALETTE[1], radius: float = 1.2) -> None:
        for p in np.asarray(pts, dtype=float):
            if np.all(np.isfinite(p)):
                self.point(p, color, radius)

    def label(self, p, text: str, color: str = "#000000") -> None:
        x, y = p
        size = 6 * self.stroke
        esc = text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        # text is drawn unflipped
        self.items.append(
            f'<text x="{_f(x)}" y="{_f(-y)}" transform="scale(1,-1)" font-size="{_f(size)}" '
            f'font-family="sans-serif" fill="{color}">{esc}</text>'
        )

    def viewbox(self) -> tuple[float, float, float, float]:
        x0, y0, x1, y1 = self.outer.bbox()
        cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
        w, h = (x1 - x0) * self.margin, (y1 - y0) * self.margin
        return cx - w / 2, -(cy + h / 2), w, h

    def render(self) -> str:
        x, y, w, h = self.viewbox()
        px_w = 800
        px_h = int(round(px_w * h / w))
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{px_w}" height="{px_h}" '
            f'viewBox="{_f(x)} {_f(y)} {_f(w)} {_f(h)}">\n'
        )
        title = f"<title>{self.title}</title>\n" if self.title else ""
        body = "\n".join(self.items)
        return head + title + '<rect x="{}" y="{}" width="{}" height="{}" fill="#ffffff"/>\n'.format(
            _f(x), _f(y), _f(w), _f(h)
        ) + f'<g transform="scale(1,-1)">\n{body}\n</g>\n</svg>\n'


def atomic_write(path: str | os.PathLike, text: str) -> Path:
    """Write via a temporary file in the target directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def emit_svg(scene: Scene, path: str | os.PathLike) -> Path:
    return atomic_write(path, scene.render())


def finite(pts) -> np.ndarray:
    pts = np.asarray(pts, dtype=float)
    return pts[np.all(np.isfinite(pts), axis=1)]


def clip(pts, outer: Ellipse, factor: float = 1.4) -> np.ndarray:
    """Drop points far outside the drawing area (centers that run off to infinity)."""
    pts = finite(pts)
    lim = factor * max(outer.a, outer.b) * 2
    return pts[np.hypot(pts[:, 0], pts[:, 1]) <= lim]


def arc_gap_split(pts, jump: float) -> list[np.ndarray]:
    """Split a sampled curve wherever consecutive points are more than ``jump`` apart."""
    pts = np.asarray(pts, dtype=float)
    if len(pts) == 0:
        return []
    cuts = np.nonzero(np.hypot(*np.diff(pts, axis=0).T) > jump)[0] + 1
    return [p for p in np.split(pts, cuts) if len(p) > 1]


def unit(theta: float) -> tuple[float, float]:
    return math.cos(theta), math.sin(theta)
