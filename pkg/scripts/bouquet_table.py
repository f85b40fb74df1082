"""Sticking numbers and coloring counts of the shipped knot diagrams over an affine structure."""

import argparse

from stuquandle.algebra import parse_affine_spec
from stuquandle.cli import batch_table, format_table
from stuquandle.diagram import fixtures


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--stuquandle", default="affine:12,11,10,11")
    ap.add_argument("--all", action="store_true", help="include every shipped fixture, not only the knots")
    args = ap.parse_args()
    X = parse_affine_spec(args.stuquandle)
    if X is None:
        ap.error("expected affine:n,a,b,e")
    shipped = fixtures()
    names = shipped if args.all else [k for k in shipped if k[1:3] in ("k+", "k-")]
    print(format_table(batch_table({k: shipped[k] for k in names}, X)).rstrip("\n"))


if __name__ == "__main__":
    main()
