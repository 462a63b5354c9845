"""Closed-form constants for the outer (1.5, 1) next to independent numeric values.

Each closed form is printed with 10 decimals beside a per-triangle or fitted
oracle, so short decimal renderings can be checked against both.
"""

import math

import numpy as np

from poncelet import equilateral as eq
from poncelet.centers import adams_radius, angle_sums, center_position
from poncelet.conic import Ellipse
from poncelet.families import build, triangles
from poncelet.locus import fit_locus


def main():
    outer = Ellipse(1.5, 1.0)
    a, b, c = outer.a, outer.b, outer.c
    rows = []

    tris = triangles(build("focal-x1", outer))
    rows.append(("sum sin(theta/2), focal-x1", (c * c - a * a + a * math.sqrt(a * a + c * c)) / (c * c),
                 np.mean([angle_sums(t).half_sines for t in tris])))
    tris = triangles(build("iso-x7", outer))
    rows.append(("sum tan(theta/2), iso-x7", math.sqrt(4 * a * a - b * b) / a,
                 np.mean([angle_sums(t).half_tangents for t in tris])))
    rows.append(("R_A, iso-x7", b * b / (2 * a) * math.sqrt((5 * a * a - b * b) / (4 * a * a - b * b)),
                 np.mean([adams_radius(t) for t in tris])))
    rows.append(("|X1X7|, iso-x7", math.sqrt(b**4 * c * c / (4 * a * a * (4 * a * a - b * b))),
                 np.mean([math.dist(center_position(1, t), center_position(7, t)) for t in tris])))

    fam = eq.family_on_e(outer, math.pi / 4)
    for k, cf in ((3, eq.a3_b3_ratio(outer)), (7, eq.a7_b7_ratio(outer))):
        _, fit = fit_locus(fam, k)
        rows.append((f"a{k}/b{k} on the equilateral-centroid ellipse", cf, fit.semi_axes[0] / fit.semi_axes[1]))

    fit = eq.x59_chapple_fit(1.0, 0.3)
    rows.append(("b59, R = 1, d = 0.3", eq.x59_chapple(1.0, 0.3)[1], fit.semi_axes[1]))

    width = max(len(r[0]) for r in rows)
    print(f"{'quantity':<{width}}  {'closed form':>14}  {'numeric':>14}  {'gap':>9}")
    for name, cf, num in rows:
        print(f"{name:<{width}}  {cf:14.10f}  {num:14.10f}  {abs(cf - num):9.1e}")


if __name__ == "__main__":
    main()
