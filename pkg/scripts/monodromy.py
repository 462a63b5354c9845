"""Winding of each tracked Blaschke root as lambda goes round the unit circle."""

import argparse
import math

import numpy as np

from poncelet.blaschke import PorismFamily, phases, track_roots
from poncelet.conic import Ellipse


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--a", type=float, default=1.5)
    p.add_argument("--cx", type=float, default=0.3)
    p.add_argument("--cy", type=float, default=0.2)
    p.add_argument("--n", type=int, default=256)
    args = p.parse_args()
    fam = PorismFamily.from_circle(Ellipse(args.a, 1.0), (args.cx, args.cy))
    for turns in (1, 2, 3):
        lams = np.concatenate([phases(args.n) + 2 * math.pi * k for k in range(turns)] + [[2 * math.pi * turns]])
        z = track_roots(fam.seed, lams)
        ang = np.unwrap(np.angle(z), axis=0)
        w = (ang[-1] - ang[0]) / (2 * math.pi)
        perm = [int(np.argmin(np.abs(z[0] - zi))) for zi in z[-1]]
        print(f"{turns} turn(s): windings {np.round(w, 6)}  total {w.sum():.6f}  end permutation {perm}")


if __name__ == "__main__":
    main()
