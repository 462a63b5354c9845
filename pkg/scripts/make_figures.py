"""Render every registered figure as SVG into a directory."""

import argparse
from pathlib import Path

from poncelet.figures import FIGURES, FigureSpec, build_figure
from poncelet.svg import emit_svg


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("outdir", nargs="?", default="figures")
    p.add_argument("--a", type=float, default=1.5)
    p.add_argument("--b", type=float, default=1.0)
    args = p.parse_args()
    out = Path(args.outdir)
    for name, (_, text) in sorted(FIGURES.items()):
        path = emit_svg(build_figure(FigureSpec(name, args.a, args.b)), out / f"{name}.svg")
        print(f"{path}  {text}")


if __name__ == "__main__":
    main()
