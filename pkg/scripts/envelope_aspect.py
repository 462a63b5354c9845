"""Implicit-fit residuals of the X36 line envelope against outer aspect ratio.

A degree-6 curve fits to rounding for every ratio; the best conic gets worse
as the outer flattens, so a fixed conic threshold only separates the two for
sufficiently eccentric outers.
"""

import argparse

from poncelet.conic import Ellipse
from poncelet.equilateral import implicit_fit_residual, l36_envelope


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ratios", type=float, nargs="+", default=[1.1, 1.2, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0])
    p.add_argument("--n", type=int, default=512)
    args = p.parse_args()
    print(f"{'a/b':>6} {'deg 2':>10} {'deg 4':>10} {'deg 6':>10}")
    for ratio in args.ratios:
        pts = l36_envelope(Ellipse(ratio, 1.0), args.n)
        res = [implicit_fit_residual(pts, d) for d in (2, 4, 6)]
        print(f"{ratio:6.2f} " + " ".join(f"{r:10.2e}" for r in res))


if __name__ == "__main__":
    main()
