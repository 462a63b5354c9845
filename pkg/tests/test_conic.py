import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from poncelet.conic import (
    AffineMap,
    Circle,
    ConicKind,
    Ellipse,
    GeneralConic,
    Point2,
    Triangle,
    apply_affine,
    conic_classify,
    ellipse_point,
    line_point_distance,
    signed_area,
)
from poncelet.errors import DegenerateTriangle, IndeterminateConic, NotALine, SingularMap, TiltNotSupported

finite = st.floats(min_value=-5, max_value=5, allow_nan=False)


class TestEllipsePoint:
    @pytest.mark.parametrize(
        "t, expected",
        [(0.0, (1.5, 0.0)), (math.pi / 2, (0.0, 1.0)), (math.pi / 3, (0.75, 0.8660254037844386))],
    )
    def test_examples(self, outer, t, expected):
        assert ellipse_point(outer, t) == pytest.approx(expected, abs=1e-12)

    @given(
        a=st.floats(0.2, 5),
        ratio=st.floats(0.1, 1.0),
        cx=finite,
        cy=finite,
        tilt=st.floats(-math.pi, math.pi),
        t=st.floats(0, 2 * math.pi),
    )
    def test_on_curve(self, a, ratio, cx, cy, tilt, t):
        e = Ellipse(a, a * ratio, (cx, cy), tilt)
        assert abs(e.implicit(ellipse_point(e, t))) <= 1e-12 * 10


class TestLineDistance:
    def test_vertical_line(self):
        assert line_point_distance(GeneralConic.line(1, 0, 0.6), (0, 0)) == pytest.approx(0.6)

    def test_sloped_line(self):
        assert line_point_distance(GeneralConic.line(0.43644, 1, -0.654659), (0, 0)) == pytest.approx(0.6, abs=1e-5)

    def test_axis(self):
        assert line_point_distance(GeneralConic.line(0, 1, 0), (3, -2)) == pytest.approx(2.0)

    def test_rejects_conic(self):
        with pytest.raises(NotALine):
            line_point_distance(Ellipse(1.5, 1).to_conic(), (0, 0))


class TestClassify:
    def test_circle(self):
        c = conic_classify(GeneralConic.from_coefficients(1, 0, 1, 0, 0, -1))
        assert c.kind is ConicKind.CIRCLE
        assert c.semi_axes == pytest.approx((1, 1))
        assert c.center == pytest.approx((0, 0))

    def test_ellipse(self):
        c = conic_classify(GeneralConic.from_coefficients(1 / 2.25, 0, 1, 0, 0, -1))
        assert c.kind is ConicKind.ELLIPSE
        assert c.semi_axes == pytest.approx((1.5, 1.0))
        assert c.tilt == pytest.approx(0.0)

    def test_line(self):
        assert conic_classify(GeneralConic.from_coefficients(0, 0, 0, 1, 2, -3)).kind is ConicKind.LINE

    def test_hyperbola_and_parabola(self):
        assert conic_classify(GeneralConic.from_coefficients(1, 0, -1, 0, 0, -1)).kind is ConicKind.HYPERBOLA
        assert conic_classify(GeneralConic.from_coefficients(1, 0, 0, 0, -1, 0)).kind is ConicKind.PARABOLA

    def test_line_pair(self):
        assert conic_classify(GeneralConic.from_coefficients(1, 0, -1, 0, 0, 0)).kind is ConicKind.LINE_PAIR

    def test_all_zero(self):
        with pytest.raises(IndeterminateConic):
            GeneralConic.from_coefficients(0, 0, 0, 0, 0, 0)

    @given(
        a=st.floats(0.3, 4),
        ratio=st.floats(0.2, 0.95),
        cx=finite,
        cy=finite,
        tilt=st.floats(-1.5, 1.5),
    )
    def test_round_trip(self, a, ratio, cx, cy, tilt):
        e = Ellipse(a, a * ratio, (cx, cy), tilt)
        c = conic_classify(e.to_conic())
        assert c.kind is ConicKind.ELLIPSE
        assert c.semi_axes == pytest.approx((e.a, e.b), rel=1e-9)
        assert c.center == pytest.approx(tuple(e.center), abs=1e-9 * max(1, a))
        d = (c.tilt - e.tilt) % math.pi
        assert min(d, math.pi - d) <= 1e-8

    @given(k=st.floats(1e-3, 1e3), sign=st.sampled_from([-1.0, 1.0]))
    def test_rescaling_invariant(self, k, sign):
        base = (0.3, 0.1, 0.7, -0.2, 0.05, -1.0)
        q1 = GeneralConic(base)
        q2 = GeneralConic(tuple(sign * k * x for x in base))
        assert q1.coeffs == pytest.approx(q2.coeffs, abs=1e-15)
        c1, c2 = conic_classify(q1), conic_classify(q2)
        assert c1.kind is c2.kind
        assert c1.center == pytest.approx(tuple(c2.center), abs=1e-12)
        assert c1.semi_axes == pytest.approx(c2.semi_axes, rel=1e-12)


class TestAffine:
    A = AffineMap.scaling(1.5, 1.0)

    def test_point(self):
        assert apply_affine(self.A, (1, 0)) == pytest.approx((1.5, 0))

    def test_unit_circle_image(self):
        e = apply_affine(self.A, Circle((0, 0), 1.0))
        assert (e.a, e.b) == pytest.approx((1.5, 1.0))
        assert tuple(e.center) == pytest.approx((0, 0), abs=1e-12)

    def test_circle_preimage(self):
        e = apply_affine(self.A.inverse(), Circle((0.3, 0.2), 0.35))
        # axis along y is r / b, along x is r / a
        assert (e.a, e.b) == pytest.approx((0.35, 0.35 / 1.5))
        assert tuple(e.center) == pytest.approx((0.2, 0.2))
        assert abs(math.sin(e.tilt)) == pytest.approx(1.0)

    def test_singular(self):
        with pytest.raises(SingularMap):
            AffineMap(((1, 2), (2, 4)))

    @given(
        m=st.tuples(*[st.floats(-3, 3)] * 4).filter(lambda m: abs(m[0] * m[3] - m[1] * m[2]) > 0.1),
        t=st.tuples(finite, finite),
        p=st.tuples(finite, finite),
    )
    def test_inverse_round_trip(self, m, t, p):
        A = AffineMap(((m[0], m[1]), (m[2], m[3])), t)
        back = apply_affine(A.inverse(), apply_affine(A, p))
        assert back == pytest.approx(p, abs=1e-9)

    @given(cx=finite, cy=finite, sx=st.floats(0.2, 4), sy=st.floats(0.2, 4))
    def test_center_equivariance(self, cx, cy, sx, sy):
        A = AffineMap(((sx, 0.3), (0.0, sy)), (0.5, -0.25))
        e = Ellipse(1.0, 0.4, (cx, cy), 0.3)
        assert tuple(apply_affine(A, e).center) == pytest.approx(tuple(apply_affine(A, e.center)), abs=1e-8)


class TestTriangle:
    def test_ccw(self):
        t = Triangle((0, 0), (0, 1), (1, 0))
        assert signed_area(t.v1, t.v2, t.v3) > 0
        assert t.v1 == Point2(0, 0)

    def test_collinear(self):
        with pytest.raises(DegenerateTriangle):
            Triangle((0, 0), (1, 1), (2, 2))

    def test_sides_345(self):
        assert sorted(Triangle((0, 0), (4, 0), (0, 3)).sides()) == pytest.approx([3, 4, 5])


def test_tilted_outer_rejected():
    with pytest.raises(TiltNotSupported):
        Ellipse(1.5, 1.0, tilt=0.2).require_canonical("test")


def test_ellipse_foci():
    f1, f2 = Ellipse(1.5, 1.0).foci()
    assert sorted([f1.x, f2.x]) == pytest.approx([-math.sqrt(1.25), math.sqrt(1.25)])


def test_sample_on_curve():
    e = Ellipse(2.0, 0.5, (0.1, -0.3), 0.7)
    pts = e.sample(64)
    assert np.max(np.abs([e.implicit(p) for p in pts])) < 1e-12
