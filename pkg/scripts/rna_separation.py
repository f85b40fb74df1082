"""Compare two foldings with equal sticking number across the affine structures of small order."""

import argparse
from pathlib import Path

from stuquandle import rna
from stuquandle.algebra import enumerate_affine
from stuquandle.diagram import signed_sticking_number

DATA = Path(__file__).resolve().parents[1] / "data"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("first", nargs="?", default=str(DATA / "fold1.arc"))
    ap.add_argument("second", nargs="?", default=str(DATA / "fold2.arc"))
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    a, b = (rna.load_arc_diagram(p) for p in (args.first, args.second))
    da, db = rna.to_stuck_diagram(a), rna.to_stuck_diagram(b)
    print(f"sticking: {signed_sticking_number(da)} vs {signed_sticking_number(db)}")
    separating = 0
    for n in range(2, args.max_n + 1):
        rows = [(p, rna.rna_invariant(a, X), rna.rna_invariant(b, X)) for p, X in enumerate_affine(n)]
        hits = [r for r in rows if r[1] != r[2]]
        separating += len(hits)
        print(f"n={n}: {len(hits)}/{len(rows)} structures separate")
        for p, ca, cb in hits[:3]:
            print(f"   a={p.a} b={p.b} e={p.e}: {ca} vs {cb}")
    print(f"total separating structures: {separating}")


if __name__ == "__main__":
    main()
