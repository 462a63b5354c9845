"""Locus classes of X1, X7, X8 over the in-scope families, with fit residuals."""

import argparse

from poncelet.config import default_tolerances
from poncelet.locus import TABLE1_CENTERS, table1_reproduce


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--samples", type=int, default=256)
    args = p.parse_args()
    tol = default_tolerances()
    t1 = table1_reproduce(args.samples, tol)
    head = "".join(f"{'X' + str(k):>14}" for k in TABLE1_CENTERS)
    print(f"{'family':<14}{head}  expected  ok")
    for r in t1.rows:
        cells = "".join(f"{g:>3} ({res:8.1e})" for g, res in zip(r.got, r.residuals))
        print(f"{r.family:<14}{cells}  {''.join(r.expected):>8}  {'yes' if r.passed else 'NO'}")
    print(f"non-conic margin: {t1.nonconic_margin(tol.conic):.1f} x conic_tol")
    print("not constructed:", ", ".join(t1.excluded))


if __name__ == "__main__":
    main()
