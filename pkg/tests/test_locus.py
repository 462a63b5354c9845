import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from poncelet.blaschke import PorismFamily
from poncelet.centers import center_position, metrics
from poncelet.conic import Ellipse
from poncelet.config import default_tolerances
from poncelet.errors import LocusUnreliable
from poncelet.families import FamilyKind, build
from poncelet.locus import (
    CLOSED_FORM_KS,
    LocusKind,
    behavior_check,
    closed_form,
    compare,
    fit_conic,
    fit_locus,
    sweep,
    table1_reproduce,
)

from conftest import interior_center

OUTER = Ellipse(1.5, 1.0)
CONCENTRIC = PorismFamily.from_circle(OUTER, (0, 0))
GENERIC = PorismFamily.from_circle(OUTER, (0.3, 0.2))


def random_family(rng, lo=1.1, hi=2.5):
    a = rng.uniform(lo, hi)
    u, v = rng.uniform(-1, 1, 2)
    x, y = interior_center(a, 1.0, u, v, 0.55)
    # the k = 7 aspect formula needs both coordinates away from zero
    x = math.copysign(max(abs(x), 0.03), x)
    y = math.copysign(max(abs(y), 0.03), y)
    return PorismFamily.from_circle(Ellipse(a, 1.0), (x, y))


class TestSweep:
    def test_incenter_fixed(self):
        s = sweep(CONCENTRIC, 1, 64)
        assert np.max(np.abs(s.valid_points)) < 1e-12

    def test_circumcenter_circle(self):
        s = sweep(CONCENTRIC, 3, 64)
        assert np.hypot(*s.valid_points.T) == pytest.approx(np.full(64, 0.25), abs=1e-12)

    def test_phases_increasing(self):
        s = sweep(GENERIC, 2, 64)
        assert np.all(np.diff(s.phases) > 0)

    def test_callable(self):
        s = sweep(GENERIC, lambda t: center_position(2, t), 40)
        assert s.defined.all()

    def test_unreliable(self):
        # X11 is undefined on every member of the Chapple-with-d=0 family (all equilateral)
        with pytest.raises(LocusUnreliable):
            sweep(PorismFamily.chapple(1.0, 0.0), 11, 32)


class TestFit:
    def test_synthetic_ellipse(self):
        rng = np.random.default_rng(1)
        t = np.linspace(0, 2 * math.pi, 64, endpoint=False)
        pts = np.column_stack([2 * np.cos(t), np.sin(t)]) + rng.normal(0, 1e-12, (64, 2))
        fit = fit_conic(pts)
        assert fit.kind is LocusKind.ELLIPSE
        assert fit.semi_axes == pytest.approx((2, 1), abs=1e-9)
        assert fit.rms_residual < 1e-10

    def test_chapple_x7_circle(self):
        _, fit = fit_locus(build(FamilyKind.CHAPPLE), 7)
        assert fit.kind is LocusKind.CIRCLE

    def test_homothetic_x1_nonconic(self):
        _, fit = fit_locus(build(FamilyKind.HOMOTHETIC, OUTER), 1)
        assert fit.kind is LocusKind.NONCONIC
        assert fit.rms_residual > default_tolerances().conic

    def test_too_few(self):
        with pytest.raises(LocusUnreliable):
            fit_conic(np.random.default_rng(0).normal(size=(10, 2)))

    def test_segment(self):
        s = np.linspace(-1, 2, 50)
        fit = fit_conic(np.column_stack([s, 0.5 * s + 0.1]))
        assert fit.kind is LocusKind.LINE
        ends = sorted(tuple(p) for p in fit.endpoints)
        assert ends[0] == pytest.approx((-1, -0.4)) and ends[1] == pytest.approx((2, 1.1))


class TestClosedForm:
    def test_x3_concentric(self):
        cf = closed_form(3, OUTER, (0, 0))
        assert cf.semi_axes == pytest.approx((0.25, 0.25), abs=1e-12)
        for f in cf.foci:
            assert tuple(f) == pytest.approx((0, 0), abs=1e-12)

    def test_x36_concentric(self):
        outer = Ellipse(3.5, 1.0)
        cf = closed_form(36, outer, (0, 0))
        assert cf.kind is LocusKind.CIRCLE
        assert cf.semi_axes[0] == pytest.approx(14 / 5, abs=1e-12)
        assert tuple(cf.center) == pytest.approx((0, 0), abs=1e-12)
        _, fit = fit_locus(PorismFamily.from_circle(outer, (0, 0)), 36)
        assert compare(fit, cf).passed

    def test_x2(self):
        cf = closed_form(2, OUTER, (0.3, 0.2))
        assert tuple(cf.center) == pytest.approx((0.2, 0.2 * 2 / 3))
        assert cf.semi_axes[0] / cf.semi_axes[1] == pytest.approx(1.5)
        _, fit = fit_locus(GENERIC, 2)
        assert compare(fit, cf).passed

    def test_focal_length_consistent(self):
        for k in (2, 3, 4, 5, 8):
            cf = closed_form(k, OUTER, (0.3, 0.2))
            a_l, b_l = cf.semi_axes
            f, g = cf.foci
            assert math.dist(f, g) / 2 == pytest.approx(math.sqrt(a_l * a_l - b_l * b_l), abs=1e-12)

    def test_fifty_random_families(self):
        rng = np.random.default_rng(7)
        failures = []
        for _ in range(50):
            fam = random_family(rng)
            c, r = fam.caustic.center, fam.caustic.r
            for k in CLOSED_FORM_KS:
                _, fit = fit_locus(fam, k)
                rep = compare(fit, closed_form(k, fam.outer, c, r))
                if not rep.passed:
                    failures.append((fam.outer.a, tuple(c), k, rep.failures))
        assert not failures


@pytest.fixture(scope="module")
def fits():
    return {k: fit_locus(GENERIC, k)[1] for k in (2, 3, 4, 5, 36)}


@pytest.fixture(scope="module")
def table():
    return table1_reproduce()


class TestStructure:
    def test_x2_homothetic(self, fits):
        f = fits[2]
        assert abs(math.sin(f.tilt)) < 1e-8
        assert f.semi_axes[0] / f.semi_axes[1] == pytest.approx(1.5, abs=1e-8)

    def test_x4_rotated(self, fits):
        f = fits[4]
        assert abs(math.cos(f.tilt)) < 1e-8
        assert f.semi_axes[0] / f.semi_axes[1] == pytest.approx(1.5, abs=1e-8)

    def test_x3_foci_on_axes(self, fits):
        f, g = fits[3].foci
        assert min(abs(f.y) + abs(g.x), abs(f.x) + abs(g.y)) < 1e-8

    def test_x5_focus_at_c(self, fits):
        assert min(math.dist(p, (0.3, 0.2)) for p in fits[5].foci) < 1e-8

    def test_c36_collinear(self, fits):
        f, g = fits[3].foci
        c36 = fits[36].center
        for p in ((0.3, 0.2), c36):
            cross = (g.x - f.x) * (p[1] - f.y) - (g.y - f.y) * (p[0] - f.x)
            assert abs(cross) < 1e-8


class TestBehavior:
    def test_x8(self):
        assert behavior_check(GENERIC, 8) == {"E-homothety", "concentric"}

    def test_x5(self):
        assert "C-focus" in behavior_check(GENERIC, 5)

    def test_x36(self):
        assert behavior_check(GENERIC, 36) == {"circle"}


class TestTable1:
    def test_all_rows(self, table):
        assert table.passed, [(r.family, r.got, r.expected) for r in table.rows if not r.passed]

    @pytest.mark.parametrize("family, expected", [("Chapple", "PCC"), ("Incircle", "PEE"), ("Homothetic", "---")])
    def test_rows(self, table, family, expected):
        row = next(r for r in table.rows if r.family == family)
        assert "".join(row.got) == expected

    def test_nonconic_margin(self, table):
        assert table.nonconic_margin(default_tolerances().conic) > 10

    def test_excluded(self, table):
        assert set(table.excluded) == {"Conf. Excentrals", "Inellipse", "Brocard"}


@pytest.mark.parametrize("c", [(0.3, 0.2), (-0.5, 0.1), (0.1, -0.45)])
def test_extremal_coupling(c):
    """R is smallest and |X1 X36| largest when X3 sits at the L3 major vertex nearest C."""
    fam = PorismFamily.from_circle(OUTER, c)
    n = 512
    s3 = sweep(fam, 3, n)
    fit = fit_conic(s3)
    u = np.array([math.cos(fit.tilt), math.sin(fit.tilt)])
    ends = [np.asarray(fit.center) + sgn * fit.semi_axes[0] * u for sgn in (1, -1)]
    vertex = min(ends, key=lambda p: math.dist(p, c))
    i_vertex = int(np.argmin(np.linalg.norm(s3.points - vertex, axis=1)))
    tris = [fam.triangle(p) for p in s3.phases]
    R = np.array([metrics(t).R for t in tris])
    d136 = np.array([math.dist(center_position(1, t), center_position(36, t)) for t in tris])

    def step_gap(i, j):
        d = abs(i - j) % n
        return min(d, n - d)

    assert step_gap(int(np.argmin(R)), i_vertex) <= 1
    assert step_gap(int(np.argmax(d136)), i_vertex) <= 1


@given(a=st.floats(1.1, 2.8), u=st.floats(-1, 1), v=st.floats(-1, 1))
def test_loci_structure_random(a, u, v):
    outer = Ellipse(a, 1.0)
    c = interior_center(a, 1.0, u, v, 0.5)
    fam = PorismFamily.from_circle(outer, c)
    _, f2 = fit_locus(fam, 2, 128)
    assert abs(math.sin(f2.tilt)) < 1e-8
    assert f2.semi_axes[0] / f2.semi_axes[1] == pytest.approx(a, rel=1e-8)
    _, f5 = fit_locus(fam, 5, 128)
    if f5.kind is LocusKind.ELLIPSE:
        assert min(math.dist(p, c) for p in f5.foci) < 1e-8 * max(1.0, f5.semi_axes[0])
