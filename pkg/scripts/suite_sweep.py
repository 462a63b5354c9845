"""Worst residual of each degeneracy-suite item over t, for a range of outer aspect ratios."""

import argparse
import math

import numpy as np

from poncelet.conic import Ellipse
from poncelet.equilateral import degeneracy_suite


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ratios", type=float, nargs="+", default=[1.2, 1.5, 2.0, 3.0])
    p.add_argument("--n-t", type=int, default=16)
    args = p.parse_args()
    ts = np.linspace(0, 2 * math.pi, args.n_t, endpoint=False)
    for ratio in args.ratios:
        outer = Ellipse(ratio, 1.0)
        worst: dict[str, float] = {}
        fails = 0
        for t in ts:
            rep = degeneracy_suite(outer, t)
            fails += len(rep.failures())
            for item in rep.items:
                worst[item.name] = max(worst.get(item.name, 0.0), item.residual)
        print(f"outer ({ratio:g}, 1): {fails} failures over {len(ts)} values of t")
        for name, res in worst.items():
            print(f"  {res:9.2e}  {name}")


if __name__ == "__main__":
    main()
