import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import brentq

from poncelet.cayley import (
    biquadratic_coefficients,
    cayley_residual,
    cayley_terms,
    chain_gap,
    circular_caustic,
    concentric_radius,
    euler_chapple,
    iso_radius_curve,
    poncelet_chain,
    radius_for_center,
)
from poncelet.conic import Circle, Ellipse
from poncelet.errors import CircularOuter, EmptyCurve, NotNested, OutOfDomain

from conftest import interior_center

OUTER = Ellipse(1.5, 1.0)
unit = st.floats(-1, 1)


def chain_oracle_radius(outer, c, lo, hi, start=0.3):
    """Circle radius at which a three-step chain of tangents returns to its start."""

    def miss(r):
        end = poncelet_chain(outer, Circle(c, r), start, 3)[-1]
        t = math.atan2(end[1] / outer.b, end[0] / outer.a)
        return (t - start + math.pi) % (2 * math.pi) - math.pi

    return brentq(miss, lo, hi, xtol=1e-14)


def term_scale(outer, caustic):
    # the polynomial is homogeneous of degree eight; individual groups can all vanish
    return max(outer.a**8, max(abs(t) for t in cayley_terms(outer, caustic)))


class TestResidual:
    def test_concentric_closes(self):
        c = Circle((0, 0), 0.6)
        assert abs(cayley_residual(OUTER, c)) <= 1e-9 * term_scale(OUTER, c)

    def test_wrong_radius(self):
        c = Circle((0, 0), 0.5)
        assert abs(cayley_residual(OUTER, c)) > 1e-3 * term_scale(OUTER, c)

    def test_offset_center(self):
        c = circular_caustic(OUTER, (0.3, 0.2))
        assert abs(cayley_residual(OUTER, c)) <= 1e-9 * term_scale(OUTER, c)

    def test_not_nested(self):
        with pytest.raises(NotNested):
            cayley_residual(OUTER, Circle((1.2, 0), 0.5))

    def test_tilted_caustic_matches_chain(self):
        # a tilted closing caustic: the image of the offset circle under a symmetric shear is
        # not available in closed form, so use the chain instead of trusting the polynomial
        e = Ellipse(0.5, 0.3, (0.1, 0.05), 0.4)
        closes = chain_gap(OUTER, e) < 1e-9
        assert closes == (abs(cayley_residual(OUTER, e, relative=True)) < 1e-9)

    @pytest.mark.parametrize("tilt", [0.2, 0.7, 1.3])
    def test_tilted_zero_set_agrees_with_chain(self, tilt):
        # scale a tilted ellipse until the residual vanishes, then close the chain
        def res(s):
            return cayley_residual(OUTER, Ellipse(0.5 * s, 0.3 * s, (0.1, 0.05), tilt), relative=True)

        s = brentq(res, 0.5, 1.6, xtol=1e-15)
        e = Ellipse(0.5 * s, 0.3 * s, (0.1, 0.05), tilt)
        for start in (0.0, 1.0, 2.5):
            assert chain_gap(OUTER, e, start) < 1e-9


class TestRadius:
    def test_center(self):
        assert radius_for_center(OUTER, (0, 0)).r == pytest.approx(0.6, abs=1e-12)

    def test_focus(self):
        c = math.sqrt(1.25)
        closed = (1 / 1.25) * (math.sqrt(2.25 + 1.25) - 1.5)
        r = radius_for_center(OUTER, (c, 0)).r
        assert r == pytest.approx(closed, abs=1e-12)
        assert r == pytest.approx(0.2966629, abs=1e-7)

    def test_chain_oracle(self):
        r = radius_for_center(OUTER, (0.3, 0.2)).r
        assert chain_oracle_radius(OUTER, (0.3, 0.2), 0.2, 0.59) == pytest.approx(r, abs=1e-10)

    def test_biquadratic_roots(self):
        rp = radius_for_center(OUTER, (0.3, 0.2))
        A, B, C = biquadratic_coefficients(OUTER, (0.3, 0.2))
        for r in (rp.r, rp.r_plus):
            u = r * r
            assert abs(A * u * u + B * u + C) <= 1e-10 * (abs(A * u * u) + abs(B * u) + abs(C))

    def test_outside(self):
        with pytest.raises(OutOfDomain):
            radius_for_center(OUTER, (1.5, 0.1))

    def test_circle_outer(self):
        with pytest.raises(CircularOuter):
            radius_for_center(Ellipse(1, 1), (0.1, 0))

    @given(u=unit, v=unit, a=st.floats(1.05, 3.0))
    def test_closes_and_nested(self, u, v, a):
        outer = Ellipse(a, 1.0)
        c = interior_center(a, 1.0, u, v)
        rp = radius_for_center(outer, c)
        assert 0 < rp.r < rp.r_plus
        caustic = Circle(c, rp.r)
        assert abs(cayley_residual(outer, caustic)) <= 1e-8 * term_scale(outer, caustic)
        assert chain_gap(outer, caustic) < 1e-8 * a

    @given(u=unit, v=unit)
    def test_mirror_symmetry(self, u, v):
        x, y = interior_center(1.5, 1.0, u, v)
        r = radius_for_center(OUTER, (x, y)).r
        for sx, sy in ((-1, 1), (1, -1), (-1, -1)):
            assert radius_for_center(OUTER, (sx * x, sy * y)).r == pytest.approx(r, rel=1e-12)


class TestEulerChapple:
    @pytest.mark.parametrize("R, d, r", [(1, 0, 0.5), (1, 0.3, 0.455), (2, 1, 0.75)])
    def test_values(self, R, d, r):
        assert euler_chapple(R, d) == pytest.approx(r, abs=1e-15)

    @pytest.mark.parametrize("R, d", [(1, 0.3), (2, 1)])
    def test_chain_oracle(self, R, d):
        outer = Ellipse(R, R)
        assert chain_oracle_radius(outer, (d, 0), 0.05 * R, 0.5 * R - 1e-9 if d else 0.5 * R) == pytest.approx(
            euler_chapple(R, d), abs=1e-10
        )

    def test_outside(self):
        with pytest.raises(OutOfDomain):
            euler_chapple(1, 1)


class TestIsoCurve:
    def test_r035_closed(self):
        pts = iso_radius_curve(OUTER, 0.35, 128)
        assert len(pts) == 128
        for p in pts:
            assert radius_for_center(OUTER, p).r == pytest.approx(0.35, abs=1e-8)
        ang = np.unwrap([math.atan2(p.y, p.x) for p in pts])
        assert np.all(np.diff(ang) > 0)

    def test_maximum_is_a_point(self):
        assert concentric_radius(OUTER) == pytest.approx(0.6)
        pts = iso_radius_curve(OUTER, 0.6)
        assert len(pts) == 1 and tuple(pts[0]) == (0.0, 0.0)

    def test_empty(self):
        with pytest.raises(EmptyCurve):
            iso_radius_curve(OUTER, 0.9)

    @given(r=st.floats(0.02, 0.59), a=st.floats(1.1, 2.5))
    def test_maps_back(self, r, a):
        outer = Ellipse(a, 1.0)
        r = r * concentric_radius(outer) / 0.6
        for p in iso_radius_curve(outer, r, 16):
            assert radius_for_center(outer, p).r == pytest.approx(r, abs=1e-8)
