"""Command-line interface.

Every subcommand builds a ``RunConfig`` (defaults < ``--config`` file <
flags), runs, and writes one JSON, CSV or SVG artifact.  Exit status is 0
when every requested check passes, 1 when a check fails and 2 for bad
input.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import equilateral as eq
from . import families
from .blaschke import PorismFamily, closure_error, phases
from .cayley import cayley_residual, chain_gap, concentric_radius, iso_radius_curve, radius_for_center
from .centers import CENTERS, center_position, center_via_triple, metrics
from .config import DEFAULT_GEOM_TOL, Tolerances, default_tolerances
from .conic import Circle, Ellipse, Triangle, as_ellipse
from .errors import PonceletError
from .figures import FIGURES, FigureSpec, build_figure
from .locus import (
    CLOSED_FORM_KS,
    ConicFitResult,
    LocusKind,
    closed_form,
    compare,
    fit_conic,
    fit_locus,
    sweep,
    table1_reproduce,
)
from .svg import PALETTE, Scene, atomic_write, clip

log = logging.getLogger("poncelet")

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("json", "csv", "svg")
OUTPUTS = {
    "csv": {"cayley", "family", "locus"},
    "svg": {"cayley", "family", "locus", "special", "equi", "figure"},
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass
class RunConfig:
    subcommand: str
    a: float = 1.5
    b: float = 1.0
    cx: float = 0.0
    cy: float = 0.0
    r: float | None = None
    kind: str | None = None
    centers: list[int] = field(default_factory=lambda: [2])
    phase: float = 0.0
    samples: int = 256
    tol: float = DEFAULT_GEOM_TOL
    seed: int = 0
    out: str = "json"
    output: str | None = None
    t: float = math.pi / 4
    mode: str = "suite"
    R: float = 1.0
    d: float = 0.3
    name: str | None = None
    quick: bool = False
    triangle: list[float] | None = None

    def outer(self) -> Ellipse:
        return Ellipse(self.a, self.b)

    def tolerances(self) -> Tolerances:
        return default_tolerances().with_geom(self.tol)

    def validate(self) -> "RunConfig":
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a >= self.b > 0):
            raise UsageError("need a >= b > 0")
        if self.samples < 8:
            raise UsageError("--samples must be at least 8")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.out not in FORMATS:
            raise UsageError(f"--out must be one of {FORMATS}")
        for k in self.centers:
            if k not in CENTERS:
                raise UsageError(f"X{k} is not registered; known: {sorted(CENTERS)}")
        if self.kind is not None and self.kind not in {k.value for k in families.FamilyKind}:
            raise UsageError(f"unknown --kind {self.kind!r}")
        return self


_CONFIG_TYPES = {
    "a": float, "b": float, "cx": float, "cy": float, "r": float, "kind": str, "centers": None,
    "phase": float, "samples": int, "tol": float, "seed": int, "out": str, "output": str,
    "t": float, "mode": str, "R": float, "d": float, "name": str, "quick": None, "triangle": None,
}


def _parse_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {raw!r}")


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "center":
            key = "centers"
        if key not in _CONFIG_TYPES:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            if key == "centers":
                out[key] = [int(x) for x in raw.replace(",", " ").split()]
            elif key == "triangle":
                out[key] = [float(x) for x in raw.replace(",", " ").split()]
                if len(out[key]) != 6:
                    raise ValueError(raw)
            elif key == "quick":
                out[key] = _parse_bool(raw)
            else:
                out[key] = _CONFIG_TYPES[key](raw)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {raw!r}") from exc
    return out


def make_config(ns: argparse.Namespace) -> RunConfig:
    values: dict = {}
    try:
        values["tol"] = default_tolerances().geom
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if ns.config:
        values.update(read_config_file(ns.config))
    for key in _CONFIG_TYPES:
        v = getattr(ns, key, None)
        if v is not None and v is not False:
            values[key] = v
    return RunConfig(subcommand=ns.command, **values).validate()


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _plain(obj):
    if hasattr(obj, "as_dict"):
        return _plain(obj.as_dict())
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats at 17 significant digits; non-finite numbers become null."""
    obj = _plain(obj)
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format(obj, ".17g") if math.isfinite(obj) else "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(f"{inner}{json.dumps(k)}: {to_json(v, indent, _level + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        body = ",\n".join(inner + to_json(v, indent, _level + 1) for v in obj)
        return "[\n" + body + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def fit_dict(fit: ConicFitResult) -> dict:
    d = {
        "class": fit.kind.value,
        "rms_residual": fit.rms_residual,
        "samples": fit.n,
    }
    if fit.center is not None:
        d["center"] = list(fit.center)
    if fit.semi_axes is not None:
        d["semi_axes"] = list(fit.semi_axes)
    if fit.tilt is not None:
        d["tilt"] = fit.tilt
    if fit.foci is not None:
        d["foci"] = [list(f) for f in fit.foci]
    if fit.endpoints is not None:
        d["endpoints"] = [list(p) for p in fit.endpoints]
    if fit.line is not None:
        d["line"] = list(fit.line.coeffs[3:])
    return d


def closed_form_dict(cf) -> dict:
    d = {"class": cf.kind.value, "source": cf.source}
    for key in ("center", "semi_axes", "foci", "endpoints"):
        v = getattr(cf, key)
        if v is not None:
            d[key] = _plain([list(x) if isinstance(x, tuple) else x for x in v]) if key in ("foci", "endpoints") else list(v)
    for key in ("tilt", "aspect"):
        v = getattr(cf, key)
        if v is not None:
            d[key] = v
    if cf.line is not None:
        d["line"] = list(cf.line.coeffs[3:])
    return d


def envelope_payload(cfg: RunConfig, results, passed: bool) -> dict:
    conf = asdict(cfg)
    # where the file lands is not part of the result
    for key in ("subcommand", "output"):
        conf.pop(key)
    return {"schema": SCHEMA, "command": cfg.subcommand, "config": conf, "pass": bool(passed), "results": results}


def write_text(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        atomic_write(cfg.output, text)
    else:
        sys.stdout.write(text)


def write_csv(cfg: RunConfig, header: str, rows) -> None:
    lines = [header]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    write_text(cfg, "\n".join(lines) + "\n")


def _csv_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g") if math.isfinite(v) else ""
    return str(v)


# ---------------------------------------------------------------------------
# Family helpers
# ---------------------------------------------------------------------------


def family_from_config(cfg: RunConfig) -> PorismFamily:
    if cfg.kind:
        return families.build(cfg.kind, cfg.outer(), R=cfg.R, d=cfg.d)
    return PorismFamily.from_circle(cfg.outer(), (cfg.cx, cfg.cy), cfg.r)


def caustic_dict(caustic) -> dict:
    if isinstance(caustic, Circle):
        return {"type": "circle", "center": list(caustic.center), "r": caustic.r}
    e = as_ellipse(caustic)
    return {"type": "ellipse", "center": list(e.center), "semi_axes": [e.a, e.b], "tilt": e.tilt}


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_cayley(cfg: RunConfig):
    outer = cfg.outer()
    if cfg.out == "csv":
        if cfg.r is None:
            raise UsageError("iso-radius CSV needs --r")
        pts = iso_radius_curve(outer, cfg.r, cfg.samples)
        rows = [[math.atan2(y, x) % (2 * math.pi), x, y] for x, y in pts]
        ok = all(abs(radius_for_center(outer, p).r - cfg.r) <= 1e-8 for p in pts if math.hypot(*p) > 0)
        return ("csv", "t,x,y", rows), ok
    if cfg.out == "svg":
        params = {"radii": (cfg.r,)} if cfg.r is not None else {}
        return ("svg", build_figure(FigureSpec("foliation", cfg.a, cfg.b, params))), True
    c = (cfg.cx, cfg.cy)
    if outer.is_circle:
        fam = PorismFamily.from_circle(outer, c, cfg.r)
        r = fam.caustic.r
        res = {"r": r, "closure_error": closure_error(fam, cfg.samples)}
    else:
        pair = radius_for_center(outer, c)
        r = pair.r if cfg.r is None else cfg.r
        caustic = Circle(c, r)
        res = {
            "r": r,
            "r_closed_form": pair.r,
            "r_plus": pair.r_plus,
            "residual_relative": cayley_residual(outer, caustic, relative=True),
            "chain_gap": chain_gap(outer, caustic),
        }
        if cfg.r is None:
            res["closure_error"] = closure_error(PorismFamily.from_circle(outer, c, r), cfg.samples)
    scale = max(cfg.a, 1.0)
    checks = [v for k, v in res.items() if k in ("closure_error", "chain_gap")]
    if "residual_relative" in res:
        checks.append(abs(res["residual_relative"]))
    passed = all(abs(v) <= cfg.tol * scale for v in checks)
    return res, passed


def cmd_family(cfg: RunConfig):
    fam = family_from_config(cfg)
    err = closure_error(fam, cfg.samples)
    if cfg.out == "csv":
        rows = []
        for p, v in zip(phases(cfg.samples), (fam.vertices(p) for p in phases(cfg.samples))):
            rows.append([p, *v.ravel()])
        return ("csv", "lambda_phase,x1,y1,x2,y2,x3,y3", rows), err <= cfg.tol * max(cfg.a, 1.0)
    if cfg.out == "svg":
        scene = Scene(fam.outer, fam.name)
        scene.ellipse(fam.outer, PALETTE[0], width=1.5)
        scene.ellipse(as_ellipse(fam.caustic), PALETTE[3])
        for p in phases(12):
            scene.polyline(fam.vertices(p), PALETTE[6], closed=True, width=0.6)
        return ("svg", scene), err <= cfg.tol * max(cfg.a, 1.0)
    tri = fam.triangle(cfg.phase)
    res = {
        "name": fam.name,
        "outer": [fam.outer.a, fam.outer.b],
        "caustic": caustic_dict(fam.caustic),
        "seed": {"f": fam.seed.f, "g": fam.seed.g},
        "closure_error": err,
        "triangle": {"phase": cfg.phase, "vertices": tri.vertices.tolist()},
    }
    return res, err <= cfg.tol * max(cfg.a, 1.0)


def cmd_center(cfg: RunConfig):
    if cfg.triangle is not None:
        tri = Triangle.from_array(np.reshape(cfg.triangle, (3, 2)))
    else:
        tri = family_from_config(cfg).triangle(cfg.phase)
    out = []
    for k in cfg.centers:
        item = {"k": k, "name": CENTERS[k].name}
        try:
            x, y = center_position(k, tri)
            item.update(x=x, y=y, defined=True)
            if CENTERS[k].triple is not None:
                q = center_via_triple(k, tri)
                item["triple_position"] = list(q)
                item["agree"] = math.dist((x, y), q) <= 1e-9 * max(1.0, math.hypot(*q))
        except PonceletError as exc:
            item.update(x=None, y=None, defined=False, reason=str(exc))
        out.append(item)
    m = metrics(tri)
    res = {"vertices": tri.vertices.tolist(), "r": m.r, "R": m.R, "centers": out}
    return res, all(i.get("agree", True) for i in out)


def cmd_locus(cfg: RunConfig):
    fam = family_from_config(cfg)
    tol = cfg.tolerances()
    if cfg.out == "csv":
        if len(cfg.centers) != 1:
            raise UsageError("CSV output takes exactly one --center")
        s = sweep(fam, cfg.centers[0], cfg.samples)
        rows = [[p, x, y, ok] for p, (x, y), ok in zip(s.phases, s.points, s.defined)]
        return ("csv", "lambda_phase,x,y,defined", rows), True
    results, passed = [], True
    scene = Scene(fam.outer, f"loci on {fam.name}") if cfg.out == "svg" else None
    if scene:
        scene.ellipse(fam.outer, PALETTE[0], width=1.5)
        scene.ellipse(as_ellipse(fam.caustic), PALETTE[3])
    for i, k in enumerate(cfg.centers):
        s, fit = fit_locus(fam, k, cfg.samples, tol)
        item = {"k": k, "fit": fit_dict(fit), "skipped": len(s.skipped)}
        circular = isinstance(fam.caustic, Circle) and not fam.outer.is_circle and cfg.kind is None
        if circular and k in CLOSED_FORM_KS:
            try:
                cf = closed_form(k, fam.outer, fam.caustic.center, fam.caustic.r)
                rep = compare(fit, cf, tol.rel, tol.abs_near_zero)
                item["closed_form"] = closed_form_dict(cf)
                item["compare"] = rep.as_dict()
                passed &= rep.passed
            except PonceletError as exc:
                item["closed_form"] = {"unavailable": str(exc)}
        if scene:
            scene.polyline(clip(s.valid_points, fam.outer), PALETTE[1 + i % 5], closed=fit.kind is not LocusKind.LINE)
        results.append(item)
    if scene:
        return ("svg", scene), passed
    return results, passed


def cmd_special(cfg: RunConfig):
    if not cfg.kind:
        raise UsageError("special needs --kind")
    kind = families.FamilyKind(cfg.kind)
    if cfg.out == "svg":
        return ("svg", build_figure(FigureSpec("special", cfg.a, cfg.b, {"kind": kind.value}))), True
    reports = families.conserved(kind, cfg.outer(), cfg.samples, max(cfg.tol, default_tolerances().invariant), R=cfg.R, d=cfg.d)
    if kind in (families.FamilyKind.DUAL, families.FamilyKind.FOCAL_X4):
        reports += families.locus_reports(kind, cfg.outer(), cfg.samples)
    return {"kind": kind.value, "reports": reports}, all(r.passed for r in reports)


def cmd_equi(cfg: RunConfig):
    outer = cfg.outer()
    if cfg.out == "svg":
        name = {"suite": "degeneracy", "envelope": "envelope", "x59": "x59"}[cfg.mode]
        return ("svg", build_figure(FigureSpec(name, cfg.a, cfg.b, {"t": cfg.t}))), True
    if cfg.mode == "suite":
        rep = eq.degeneracy_suite(outer, cfg.t, cfg.samples)
        fam = eq.family_on_e(outer, cfg.t)
        sol = eq.equilateral_lambda(fam, cfg.t)
        res = rep.as_dict()
        res["e_triangle"] = [eq.e_triangle(outer).a_tri, eq.e_triangle(outer).b_tri]
        res["equilateral"] = {
            "phase": sol.phase,
            "side_spread": sol.side_spread,
            "vertex_params": sol.vertex_params,
            "trig_roots": sol.trig_roots,
            "spurious_root": sol.spurious_root,
            "trig_residual": sol.trig_residual,
        }
        return res, rep.passed
    if cfg.mode == "envelope":
        pts = eq.l36_envelope(outer, max(cfg.samples, 64))
        arr = np.asarray(pts)
        on_line = max(
            abs(u * x + v * y - w) / math.hypot(u, v)
            for (x, y), t in zip(arr, np.linspace(0, 2 * math.pi, len(pts), endpoint=False))
            for u, v, w, *_ in [eq.l36_line_family(outer, t)]
        )
        conic = fit_conic(arr)
        deg6 = eq.implicit_fit_residual(arr, 6)
        res = {
            "points": arr.tolist(),
            "max_line_distance": on_line,
            "conic_fit": fit_dict(conic),
            "degree6_residual": deg6,
        }
        passed = on_line <= 1e-10 * cfg.a and deg6 <= 1e-8 and conic.kind is LocusKind.NONCONIC
        return res, passed
    if cfg.mode == "x59":
        a59, b59 = eq.x59_chapple(cfg.R, cfg.d)
        fit = eq.x59_chapple_fit(cfg.R, cfg.d, cfg.samples)
        err = max(abs(fit.semi_axes[0] - a59), abs(fit.semi_axes[1] - b59)) if fit.semi_axes else math.inf
        tilt_err = abs(math.sin(fit.tilt)) if fit.tilt is not None else math.inf
        res = {"a59": a59, "b59": b59, "fit": fit_dict(fit), "axis_error": err, "tilt_error": tilt_err}
        return res, err <= 1e-7 * cfg.R and tilt_err <= 1e-7
    raise UsageError(f"unknown equi mode {cfg.mode!r}")


def cmd_table1(cfg: RunConfig):
    tol = cfg.tolerances()
    t1 = table1_reproduce(cfg.samples, tol)
    rows = [
        {"family": r.family, "expected": list(r.expected), "got": list(r.got), "residuals": list(r.residuals), "pass": r.passed}
        for r in t1.rows
    ]
    margin = t1.nonconic_margin(tol.conic)
    res = {"centers": [1, 7, 8], "rows": rows, "excluded": list(t1.excluded), "nonconic_margin": margin}
    return res, t1.passed and margin >= 10


def cmd_figure(cfg: RunConfig):
    if not cfg.name:
        raise UsageError(f"figure needs --name; known: {sorted(FIGURES)}")
    if cfg.name not in FIGURES:
        raise UsageError(f"unknown figure {cfg.name!r}; known: {sorted(FIGURES)}")
    params = {"t": cfg.t, "R": cfg.R, "d": cfg.d, "center": (cfg.cx, cfg.cy)}
    if cfg.kind:
        params["kind"] = cfg.kind
    return ("svg", build_figure(FigureSpec(cfg.name, cfg.a, cfg.b, params))), True


def verify_all(cfg: RunConfig) -> list[dict]:
    """A fast pass over the main invariants of every module."""
    rng = np.random.default_rng(cfg.seed)
    n_random = 10 if cfg.quick else 40
    checks: list[dict] = []

    def check(name, value, tol, **extra):
        checks.append({"name": name, "value": value, "tol": tol, "pass": bool(value <= tol), **extra})

    worst = 0.0
    fams = [families.random_circle_family(rng) for _ in range(n_random)]
    for fam in fams:
        worst = max(worst, closure_error(fam, cfg.samples) / fam.outer.a)
    check("closure of random circle families", worst, cfg.tol)

    outer = Ellipse(1.5, 1.0)
    fam0 = PorismFamily.from_circle(outer, (0.0, 0.0))
    Rs = [metrics(t).R for t in (fam0.triangle(p) for p in phases(cfg.samples))]
    check("concentric circumradius", max(abs(R - (outer.a + outer.b) / 2) for R in Rs), 1e-10,
          r=fam0.caustic.r, r_expected=concentric_radius(outer))

    bad = 0
    for fam in fams[: max(5, n_random // 4)]:
        c, r = fam.caustic.center, fam.caustic.r
        for k in CLOSED_FORM_KS:
            _, fit = fit_locus(fam, k, cfg.samples)
            bad += not compare(fit, closed_form(k, fam.outer, c, r)).passed
    check("closed-form loci match fits", float(bad), 0.0)

    t1 = table1_reproduce(cfg.samples)
    check("locus class table", float(not t1.passed), 0.0, margin=t1.nonconic_margin(1e-7))

    worst_inv, failing = 0.0, []
    for kind in families.FamilyKind:
        for rep in families.conserved(kind, None, cfg.samples):
            worst_inv = max(worst_inv, rep.max_deviation / max(abs(rep.value), 1.0))
            if not rep.passed:
                failing.append(f"{kind.value}: {rep.name}")
    check("conserved quantities", worst_inv, 1e-9, failing=failing)

    worst_suite, failing = 0.0, []
    ts = np.linspace(0, 2 * math.pi, 4 if cfg.quick else 8, endpoint=False) + 0.1
    for ab in ((1.5, 1.0), (2.0, 1.0)):
        for t in ts:
            rep = eq.degeneracy_suite(Ellipse(*ab), float(t))
            worst_suite = max(worst_suite, max(i.residual for i in rep.items))
            failing += [f"{ab} t={t:.3f}: {i.name}" for i in rep.failures()]
    check("equilateral degeneracy suite", worst_suite, eq.SUITE_TOL, failing=failing)

    a59, b59 = eq.x59_chapple(1.0, 0.3)
    fit = eq.x59_chapple_fit(1.0, 0.3)
    check("X59 bicentric ellipse", max(abs(fit.semi_axes[0] - a59), abs(fit.semi_axes[1] - b59)), 1e-7)

    env = np.asarray(eq.l36_envelope(outer))
    check("envelope degree-6 fit", eq.implicit_fit_residual(env, 6), 1e-8,
          conic_residual=fit_conic(env).rms_residual)

    worst_tri = 0.0
    for _ in range(100 if cfg.quick else 400):
        try:
            tri = Triangle.from_array(rng.uniform(-1, 1, (3, 2)))
        except PonceletError:
            continue
        for spec in CENTERS.values():
            if spec.triple is None:
                continue
            try:
                p, q = center_position(spec, tri), center_via_triple(spec, tri)
            except PonceletError:
                continue
            worst_tri = max(worst_tri, math.dist(p, q) / max(1.0, math.hypot(*p)))
    check("barycentric vs affine triple", worst_tri, 1e-9)
    return checks


def cmd_verify_all(cfg: RunConfig):
    t0 = time.perf_counter()
    checks = verify_all(cfg)
    log.info("verify-all finished in %.1f s", time.perf_counter() - t0)
    return {"checks": checks}, all(c["pass"] for c in checks)


COMMANDS = {
    "cayley": (cmd_cayley, "closure residual and circular-caustic radius for a centre"),
    "family": (cmd_family, "construct a family and check side tangency"),
    "center": (cmd_center, "triangle centers of one family member"),
    "locus": (cmd_locus, "sweep, fit and compare loci against closed forms"),
    "special": (cmd_special, "conserved quantities of a named family"),
    "equi": (cmd_equi, "equilateral-centroid degeneracies, envelope and X59"),
    "table1": (cmd_table1, "classes of the X1, X7, X8 loci over the named families"),
    "figure": (cmd_figure, "write an SVG figure"),
    "verify-all": (cmd_verify_all, "run every module's invariant checks"),
}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common")
    g.add_argument("--config", help="flat key = value file; flags override it")
    g.add_argument("--a", type=float, help="outer semi-major axis (default 1.5)")
    g.add_argument("--b", type=float, help="outer semi-minor axis (default 1)")
    g.add_argument("--cx", type=float, help="caustic centre x (default 0)")
    g.add_argument("--cy", type=float, help="caustic centre y (default 0)")
    g.add_argument("--r", type=float, help="caustic radius (default: from the closure condition)")
    g.add_argument("--kind", help="named family: " + ", ".join(k.value for k in families.FamilyKind))
    g.add_argument("--samples", type=int, help="lambda samples (default 256)")
    g.add_argument("--tol", type=float, help="geometric tolerance (default 1e-9 or PONCELET_TOL)")
    g.add_argument("--seed", type=int, help="RNG seed for randomized checks (default 0)")
    g.add_argument("--out", choices=FORMATS, help="output format (default json)")
    g.add_argument("--output", "-o", help="output path (default stdout)")
    g.add_argument("--R", type=float, help="bicentric circumradius (default 1)")
    g.add_argument("--d", type=float, help="bicentric centre distance (default 0.3)")
    g.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="poncelet", description="Poncelet triangle families and their loci.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    parsers = {name: sub.add_parser(name, parents=[common], help=text) for name, (_, text) in COMMANDS.items()}
    for name in ("center", "locus"):
        parsers[name].add_argument("--center", dest="centers", type=int, action="append",
                                   help="center index k (repeatable; default 2)")
    parsers["center"].add_argument("--triangle", type=float, nargs=6, metavar=("X1", "Y1", "X2", "Y2", "X3", "Y3"),
                                   help="evaluate on this triangle instead of a family member")
    for name in ("family", "center"):
        parsers[name].add_argument("--phase", type=float, help="lambda phase in radians (default 0)")
    e = parsers["equi"]
    e.add_argument("--t", type=float, help="parameter of C on the equilateral-centroid ellipse (default pi/4)")
    m = e.add_mutually_exclusive_group()
    m.add_argument("--suite", dest="mode", action="store_const", const="suite")
    m.add_argument("--envelope", dest="mode", action="store_const", const="envelope")
    m.add_argument("--x59", dest="mode", action="store_const", const="x59")
    f = parsers["figure"]
    f.add_argument("--name", help="one of: " + ", ".join(sorted(FIGURES)))
    f.add_argument("--t", type=float, help="parameter on the equilateral-centroid ellipse")
    parsers["verify-all"].add_argument("--quick", action="store_true", help="fewer random cases")
    return p


def run(cfg: RunConfig) -> int:
    fn, _ = COMMANDS[cfg.subcommand]
    result, passed = fn(cfg)
    if isinstance(result, tuple) and result and result[0] == "csv":
        _, header, rows = result
        write_csv(cfg, header, rows)
    elif isinstance(result, tuple) and result and result[0] == "svg":
        write_text(cfg, result[1].render())
    else:
        write_text(cfg, to_json(envelope_payload(cfg, result, passed)) + "\n")
    if not passed:
        log.error("%s: verification failed", cfg.subcommand)
    return EXIT_OK if passed else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = make_config(ns)
    except UsageError as exc:
        print(f"poncelet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out != "json" and cfg.subcommand not in OUTPUTS[cfg.out]:
        print(f"poncelet: error: {cfg.subcommand} cannot write {cfg.out}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return run(cfg)
    except UsageError as exc:
        print(f"poncelet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PonceletError as exc:
        # the inputs do not describe a valid family or configuration
        failure = {"schema": SCHEMA, "command": cfg.subcommand, "pass": False,
                   "error": {"type": type(exc).__name__, "message": str(exc)}}
        print(to_json(failure), file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"poncelet: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
