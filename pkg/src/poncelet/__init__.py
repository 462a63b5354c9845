"""Poncelet triangle families: closure, Blaschke parametrization, centers and loci."""

from .blaschke import BlaschkeSeed, PorismFamily, closure_error, triangle_at
from .cayley import cayley_residual, circular_caustic, radius_for_center
from .centers import center_position, get_center, isogonal_conjugate, metrics
from .config import Tolerances, default_tolerances
from .conic import AffineMap, Circle, Ellipse, GeneralConic, Point2, Triangle
from .equilateral import degeneracy_suite, e_triangle, equilateral_lambda, l36_envelope, x59_chapple
from .errors import PonceletError
from .families import FamilyKind, build, conserved
from .locus import LocusKind, closed_form, compare, fit_conic, fit_locus, sweep, table1_reproduce

__all__ = [
    "AffineMap",
    "BlaschkeSeed",
    "Circle",
    "Ellipse",
    "FamilyKind",
    "GeneralConic",
    "LocusKind",
    "Point2",
    "PonceletError",
    "PorismFamily",
    "Tolerances",
    "Triangle",
    "build",
    "cayley_residual",
    "center_position",
    "circular_caustic",
    "closed_form",
    "closure_error",
    "compare",
    "conserved",
    "default_tolerances",
    "degeneracy_suite",
    "e_triangle",
    "equilateral_lambda",
    "fit_conic",
    "fit_locus",
    "get_center",
    "isogonal_conjugate",
    "l36_envelope",
    "metrics",
    "radius_for_center",
    "sweep",
    "table1_reproduce",
    "triangle_at",
    "x59_chapple",
]
