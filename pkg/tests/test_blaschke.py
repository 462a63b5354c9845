import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from poncelet.blaschke import (
    BlaschkeSeed,
    PorismFamily,
    caustic_from_seed,
    closure_error,
    cubic_roots,
    phases,
    seed_from_caustic,
    seed_from_circular_caustic,
    sigma_polynomials,
    track_roots,
    triangle_at,
    unit_roots,
)
from poncelet.cayley import radius_for_center
from poncelet.conic import Circle, Ellipse, line_point_distance
from poncelet.errors import NotAPorism, SeedOutOfDisk

from conftest import interior_center

OUTER = Ellipse(1.5, 1.0)
F0 = 0.4472135954999579j


class TestSeed:
    def test_concentric(self):
        s = seed_from_circular_caustic(OUTER, (0, 0), 0.6)
        assert s.f == pytest.approx(F0, abs=1e-7)
        assert s.g == pytest.approx(-F0, abs=1e-7)

    def test_offset(self):
        r = radius_for_center(OUTER, (0.3, 0.2)).r
        s = seed_from_circular_caustic(OUTER, (0.3, 0.2), r)
        off = r * math.sqrt(1.25) / 1.5
        assert s.f == pytest.approx(0.2 + 1j * (0.2 + off))
        assert s.g == pytest.approx(0.2 + 1j * (0.2 - off))

    def test_circle_limit(self):
        for eps in (1e-2, 1e-4, 1e-6):
            outer = Ellipse(1.0, 1.0 - eps)
            s = seed_from_circular_caustic(outer, (0, 0), radius_for_center(outer, (0, 0)).r)
            assert abs(s.f) < 2 * math.sqrt(eps) and abs(s.g) < 2 * math.sqrt(eps)

    def test_not_a_porism(self):
        with pytest.raises(NotAPorism):
            seed_from_circular_caustic(OUTER, (0, 0), 0.5)

    def test_out_of_disk(self):
        with pytest.raises(SeedOutOfDisk):
            BlaschkeSeed(1.0, 0)


class TestSigma:
    def test_concentric(self):
        s = sigma_polynomials(BlaschkeSeed(F0, -F0), 1 + 0j)
        assert s == pytest.approx((0.2, 0.2, 1.0))

    @given(phase=st.floats(0, 2 * math.pi))
    def test_zero_seed(self, phase):
        lam = cmath.exp(1j * phase)
        assert sigma_polynomials(BlaschkeSeed(0, 0), phase) == pytest.approx((0, 0, lam))

    @given(f=st.floats(-0.95, 0.95))
    def test_real_equal(self, f):
        assert sigma_polynomials(BlaschkeSeed(f, f), 0.0) == pytest.approx((2 * f + f * f, f * f + 2 * f, 1))


class TestTriangle:
    def test_concentric_lambda_one(self):
        fam = PorismFamily.from_circle(OUTER, (0, 0))
        v = fam.vertices(0.0)
        expected = {(1.5, 0.0), (-0.6, 0.9165151), (-0.6, -0.9165151)}
        for p in v:
            assert any(np.allclose(p, q, atol=1e-7) for q in expected)
        t = triangle_at(fam, 0.0)
        for line in t.side_lines():
            assert line_point_distance(line, (0, 0)) == pytest.approx(0.6, abs=1e-12)

    def test_cube_roots(self):
        z = unit_roots(BlaschkeSeed(0, 0), 0.0)
        assert sorted(np.angle(z)) == pytest.approx([-2 * math.pi / 3, 0, 2 * math.pi / 3])

    def test_periodic(self):
        fam = PorismFamily.from_circle(OUTER, (0.3, 0.2))
        assert np.allclose(fam.vertices(0.7), fam.vertices(0.7 + 2 * math.pi), atol=1e-13)

    def test_cubic_solver(self):
        z = cubic_roots(0.2, 0.2, 1.0)
        assert np.max(np.abs(((z - 0.2) * z + 0.2) * z - 1)) < 1e-14


class TestCaustic:
    def test_inverse_of_seed(self):
        c = caustic_from_seed(OUTER, BlaschkeSeed(F0, -F0))
        assert isinstance(c, Circle)
        assert c.r == pytest.approx(0.6, abs=1e-9)
        assert tuple(c.center) == pytest.approx((0, 0), abs=1e-9)

    def test_unit_foci(self):
        e = caustic_from_seed(Ellipse(1, 1), BlaschkeSeed(0, 0.5))
        foci = sorted(p.x for p in e.foci())
        assert foci == pytest.approx([0, 0.5], abs=1e-7)
        assert max(abs(p.y) for p in e.foci()) < 1e-7

    def test_zero_seed(self):
        c = caustic_from_seed(Ellipse(1, 1), BlaschkeSeed(0, 0))
        assert isinstance(c, Circle) and c.r == pytest.approx(0.5, abs=1e-9)

    def test_closed_form_matches_fit(self):
        seed = BlaschkeSeed(0.2 + 0.1j, -0.3 + 0.25j)
        fam = PorismFamily.from_seed(OUTER, seed)
        fit = fam.caustic
        cf = fam.caustic_closed_form()
        assert (fit.a, fit.b) == pytest.approx((cf.a, cf.b), abs=1e-8)
        assert tuple(fit.center) == pytest.approx(tuple(cf.center), abs=1e-8)

    def test_from_caustic_round_trip(self):
        fam = PorismFamily.from_seed(OUTER, BlaschkeSeed(0.2 + 0.1j, -0.3 + 0.25j))
        s = seed_from_caustic(OUTER, fam.caustic, tol=1e-7)
        assert {round(s.f.real, 6), round(s.g.real, 6)} == {0.2, -0.3}


@st.composite
def families(draw):
    a = draw(st.floats(1.05, 3.0))
    c = interior_center(a, 1.0, draw(st.floats(-1, 1)), draw(st.floats(-1, 1)))
    return PorismFamily.from_circle(Ellipse(a, 1.0), c)


class TestInvariants:
    @given(fam=families())
    def test_tangency(self, fam):
        tris = [fam.triangle(lam) for lam in phases(256)]
        c, r = fam.caustic.center, fam.caustic.r
        worst = max(abs(line_point_distance(l, c) - r) for t in tris for l in t.side_lines())
        assert worst <= 1e-9 * max(fam.outer.a, 1)
        assert closure_error(fam) <= 1e-9 * max(fam.outer.a, 1)

    @given(fam=families())
    def test_unit_roots_and_outer(self, fam):
        for lam in phases(64):
            z = fam.roots(lam)
            assert np.max(np.abs(np.abs(z) - 1)) <= 1e-9
            v = fam.vertices(lam)
            assert np.max(np.abs([fam.outer.implicit(p) for p in v])) <= 1e-10

    @given(fam=families())
    def test_monodromy(self, fam):
        # arg(lambda) is the sum of the root arguments, so one revolution of lambda moves
        # the roots by a total of 2 pi; after three revolutions every root has wound once
        n = 256
        lams = np.concatenate([phases(n) + 2 * math.pi * k for k in range(3)] + [[6 * math.pi]])
        z = track_roots(fam.seed, lams)
        total = np.unwrap(np.angle(z), axis=0)
        winding = (total[-1] - total[0]) / (2 * math.pi)
        assert winding == pytest.approx([1, 1, 1], abs=1e-9)
        one = np.unwrap(np.angle(z[: n + 1]), axis=0)
        assert np.sum(one[-1] - one[0]) == pytest.approx(2 * math.pi, abs=1e-9)


def test_generic_seed_closes():
    fam = PorismFamily.from_seed(OUTER, BlaschkeSeed(0.2 + 0.1j, -0.3 + 0.25j))
    assert closure_error(fam) < 1e-8
