import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from poncelet.blaschke import closure_error
from poncelet.cayley import radius_for_center
from poncelet.centers import center_position
from poncelet.conic import Ellipse
from poncelet.errors import OutOfDomain
from poncelet.families import (
    FamilyKind,
    build,
    circle_parameters,
    conserved,
    explore_x4_spread,
    locus_reports,
    macbeath_affine_x2,
    random_circle_family,
    stationary_centers,
    triangles,
)
from poncelet.locus import LocusKind, fit_locus

OUTER = Ellipse(1.5, 1.0)
SQ125 = math.sqrt(1.25)
CIRCLE_KINDS = (FamilyKind.FOCAL_X1, FamilyKind.ISO_X2, FamilyKind.FOCAL_X4, FamilyKind.ISO_X7)


class TestBuild:
    def test_focal_x1(self):
        c, r = circle_parameters("focal-x1", OUTER)
        assert tuple(c) == pytest.approx((SQ125, 0))
        assert r == pytest.approx(radius_for_center(OUTER, c).r, abs=1e-12)
        assert r == pytest.approx(0.2966629, abs=1e-7)

    def test_iso_x2(self):
        c, r = circle_parameters("iso-x2", OUTER)
        assert tuple(c) == pytest.approx((0, 0.3726780), abs=1e-7)
        assert r == 0.5
        assert r == pytest.approx(radius_for_center(OUTER, c).r, abs=1e-12)

    def test_iso_x7(self):
        c, r = circle_parameters("iso-x7", OUTER)
        assert tuple(c) == pytest.approx((math.sqrt(10) / 3, 0), abs=1e-12)
        assert r == pytest.approx(1 / 3)
        assert r == pytest.approx(radius_for_center(OUTER, c).r, abs=1e-12)

    def test_focal_x4_closes(self):
        c, r = circle_parameters("focal-x4", OUTER)
        assert r == pytest.approx(radius_for_center(OUTER, c).r, abs=1e-12)

    @pytest.mark.parametrize("kind", list(FamilyKind))
    def test_every_kind_closes(self, kind):
        fam = build(kind, OUTER)
        assert closure_error(fam, 64) < 1e-9 * max(1, fam.outer.a)

    def test_circle_outer_rejected(self):
        with pytest.raises(OutOfDomain):
            build("homothetic", Ellipse(1, 1))


class TestStationary:
    def test_iso_x2(self):
        pts = dict(stationary_centers("iso-x2", OUTER))
        assert tuple(pts[2]) == pytest.approx((0, 0.2484520), abs=1e-7)
        assert tuple(pts[8]) == (0, 0)

    def test_focal_x4(self):
        assert tuple(dict(stationary_centers("focal-x4", OUTER))[4]) == pytest.approx((SQ125, 0))

    def test_iso_x7(self):
        assert tuple(dict(stationary_centers("iso-x7", OUTER))[7]) == pytest.approx((3 * math.sqrt(10) / 8, 0))

    @pytest.mark.parametrize("kind", list(FamilyKind))
    def test_spread(self, kind):
        fam = build(kind, OUTER)
        tris = triangles(fam, 256)
        for k, p in stationary_centers(kind, OUTER):
            spread = max(math.dist(center_position(k, t), p) for t in tris)
            assert spread <= 1e-9, (k, spread)


class TestConserved:
    @pytest.mark.parametrize("kind", list(FamilyKind))
    def test_worked_outer(self, kind):
        failed = [r.as_dict() for r in conserved(kind, OUTER) if not r.passed]
        assert not failed

    def test_values(self):
        vals = {r.name: r.value for k in CIRCLE_KINDS for r in conserved(k, OUTER)}
        assert vals["sum tan(theta/2)"] == pytest.approx(math.sqrt(8) / 1.5, abs=1e-15)
        assert vals["|X1X7|"] == pytest.approx(math.sqrt(1.25 / 72), abs=1e-15)
        assert vals["|X1X7|"] == pytest.approx(0.1317616, abs=1e-7)
        assert vals["r_pol^2"] == pytest.approx(-1 / 3.25, abs=1e-15)

    def test_x1x7_self_consistent(self):
        (_, c7), (_, x7) = stationary_centers("iso-x7", OUTER)
        d = next(r.value for r in conserved("iso-x7", OUTER) if r.name == "|X1X7|")
        assert math.dist(c7, x7) == pytest.approx(d, abs=1e-10)

    @pytest.mark.parametrize("kind", [FamilyKind.FOCAL_X1, FamilyKind.FOCAL_X4, FamilyKind.ISO_X7])
    def test_mirror_branch(self, kind):
        assert all(r.passed for r in conserved(kind, OUTER, sign=-1))

    @settings(max_examples=20)
    @given(ratio=st.floats(1.02, 2.98), kind=st.sampled_from(list(FamilyKind)))
    def test_random_outers(self, ratio, kind):
        outer = Ellipse(ratio, 1.0)
        try:
            reports = conserved(kind, outer, n=128)
        except OutOfDomain:
            return
        assert all(r.passed for r in reports), [r.as_dict() for r in reports if not r.passed]


class TestLocusFacts:
    def test_focal_x4(self):
        reps = locus_reports("focal-x4", OUTER)
        assert len(reps) == 4 and all(r.passed for r in reps)

    def test_dual(self):
        reps = locus_reports("dual", OUTER)
        assert all(r.passed for r in reps)

    def test_focal_x1_contact_concyclic(self):
        rep = {r.name: r for r in conserved("focal-x1", OUTER)}
        assert rep["contact-triangle circumcenter offset"].max_deviation < 1e-8


class TestAffineMacBeath:
    def test_origin(self):
        fam = macbeath_affine_x2(OUTER, (0, 0))
        pts = [center_position(2, t) for t in triangles(fam, 64)]
        assert np.max(np.abs(pts)) < 1e-12

    def test_circle_reduces_to_macbeath(self):
        fam = macbeath_affine_x2(Ellipse(1, 1), (0.3, 0.15))
        ref = build("macbeath", g=complex(0.6, 0.3))
        assert fam.seed == ref.seed

    def test_outside_half(self):
        with pytest.raises(OutOfDomain):
            macbeath_affine_x2(OUTER, (0.8, 0))

    def test_twenty_random(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            rr, th = 0.49 * math.sqrt(rng.uniform()), rng.uniform(0, 2 * math.pi)
            oc = (rr * 1.5 * math.cos(th), rr * math.sin(th))
            fam = macbeath_affine_x2(OUTER, oc)
            pts = np.array([center_position(2, t) for t in triangles(fam, 128)])
            assert np.max(np.linalg.norm(pts - pts[0], axis=1)) <= 1e-8
            x2 = pts.mean(axis=0)
            assert abs(x2[0] * oc[1] - x2[1] * oc[0]) <= 1e-8


def test_random_circle_family():
    fam = random_circle_family(np.random.default_rng(5))
    assert fam.caustic.r >= 0.05
    assert closure_error(fam, 64) < 1e-9


def test_explore_is_evidence_only():
    spread = explore_x4_spread(OUTER, 32)
    assert spread["focal-x4"] < 1e-9 and spread["dual"] < 1e-9
    assert spread["iso-x2"] > 1e-3


def test_chapple_x7_is_circle():
    _, fit = fit_locus(build("chapple"), 7)
    assert fit.kind is LocusKind.CIRCLE
