"""Regenerate src/stuquandle/data/{fixtures,stuquandles}.json.

Stuck knots come from KnotAtlas PD codes with one crossing made stuck;
the move pairs are braid closures differing by one generating move.
Run from the repository root after changing any construction below.
"""

import json
from pathlib import Path

from stuquandle.algebra import affine, parse_block_matrix
from stuquandle.diagram import braid_closure, from_ports, is_planar, renumber, validate
from stuquandle.rna import bonds_from_pairs, to_stuck_diagram

DATA = Path(__file__).resolve().parents[1] / "src" / "stuquandle" / "data"

# KnotAtlas PD codes: X[a,b,c,d], a = incoming under-strand, counterclockwise
PD = {
    "3_1": [(1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)],
    "4_1": [(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)],
    "5_1": [(1, 6, 2, 7), (3, 8, 4, 9), (5, 10, 6, 1), (7, 2, 8, 3), (9, 4, 10, 5)],
}


def pd_rows(pd):
    """PD crossings in the downward frame."""
    m = 2 * len(pd)
    rows = []
    for a, b, c, d in pd:
        if d == b % m + 1:  # over strand runs b -> d
            rows.append(["ClassicalB", b, a, c, d])
        else:  # over strand runs d -> b
            rows.append(["ClassicalA", a, d, b, c])
    return rows


def stuck_at(rows, i, kind):
    rows = [list(r) for r in rows]
    rows[i][0] = kind
    return from_ports(rows)


def catalog():
    out = {}

    def add(name, d, source):
        validate(d)
        assert is_planar(d), name
        out[name] = {"source": source, "diagram": d.to_dict()}

    for sign, kind in (("+", "StuckPositive"), ("-", "StuckNegative")):
        add(f"0k{sign}_1", from_ports([(kind, 0, 1, 0, 1)]),
            "2-bouquet 0^k_1: figure-eight curve whose only crossing is stuck")
        for name, knot in (("2k", "3_1"), ("3k", "4_1"), ("4k", "5_1")):
            add(f"{name}{sign}_1", renumber(stuck_at(pd_rows(PD[knot]), 0, kind)),
                f"KnotAtlas PD code of {knot} with its first crossing made stuck; "
                "checked against the reference Z_12 counting values")
        x, y, z, xp = 1, 3, 2, 0
        add(f"0l{sign}_1",
            from_ports([(kind, xp, y, z, x), ("ClassicalA", z, x, xp, y)],
                       labels={x: "x", y: "y", z: "z", xp: "x'"}),
            "stuck Hopf link: one stuck and one classical crossing")

    x, y, u, w = 0, 1, 2, 3
    names = {x: "x", y: "y", u: "u", w: "w"}
    add("S1", from_ports([("StuckNegative", x, y, u, w), ("ClassicalA", u, w, x, y)], labels=names),
        "stuck Hopf link, stuck crossing colored by R3/R4")
    add("S2", from_ports([("StuckPositive", x, y, u, w), ("ClassicalA", u, w, x, y)], labels=names),
        "stuck Hopf link, stuck crossing colored by R1/R2")
    out["hopf_stuck"] = dict(out["0l-_1"], source="stuck Hopf link with arcs x, y, z (alias of 0l-_1)")

    # two stuck curls in series, as drawn after removing the classical kinks
    d, a, b, c = 0, 1, 2, 3
    add("rna1_closed",
        from_ports([("StuckNegative", a, b, d, b), ("StuckNegative", d, c, a, c)],
                   labels={a: "a", b: "b", c: "c", d: "d"}),
        "self-closure of two hairpins (bonds 0:0-0:2, 0:3-0:5), both classical kinks removed")
    add("rna2_closed", renumber(to_stuck_diagram(bonds_from_pairs(6, [(1, 4), (2, 5)]))),
        "transformation T and self-closure of the H-type pseudoknot (bonds 0:1-0:4, 0:2-0:5)")

    for move, k, left, right in MOVES:
        for side, word in (("L", left), ("R", right)):
            strands = k + 1 if move.startswith("omega1") and side == "R" else k
            add(f"{move}_{side}", braid_closure(word, strands),
                f"closure of the {strands}-strand braid {word}")
    return out


# (name, strands, left word, right word); each pair differs by one move.
# Omega1 pairs are Markov stabilizations, so the right side has one more strand.
MOVES = [
    ("omega1a", 2, "N1", "N1 A2"),
    ("omega1b", 2, "N1", "N1 B2"),
    ("omega2a", 2, "P1", "P1 A1 B1"),
    ("omega3a", 3, "A1 A2 A1 N1", "A2 A1 A2 N1"),
    ("omega5a+", 3, "P1 A1 P1 A2", "A1 P1 P1 A2"),
    ("omega5a-", 3, "N1 B1 N1 A2", "B1 N1 N1 A2"),
    ("omega4a+", 3, "A1 A2 P1 N2", "P2 A1 A2 N2"),
    ("omega4a-", 3, "A1 A2 N1 N2", "N2 A1 A2 N2"),
    ("omega4e+", 3, "B1 B2 P1 N2", "P2 B1 B2 N2"),
    ("omega4e-", 3, "B1 B2 N1 N2", "N2 B1 B2 N2"),
]

BLOCK_AFFINE3 = """\
0 2 1 | 0 1 2 | 0 0 0 | 0 1 2 | 0 2 1
2 1 0 | 0 1 2 | 1 1 1 | 0 1 2 | 2 1 0
1 0 2 | 0 1 2 | 2 2 2 | 0 1 2 | 1 0 2
"""

BLOCK_HOPF_Z3 = """\
0 0 0 | 0 1 1 | 0 2 2 | 1 1 1 | 1 1 2
1 1 1 | 2 1 2 | 1 1 0 | 1 2 2 | 1 2 1
2 2 2 | 2 0 1 | 1 2 1 | 2 1 0 | 1 2 0
"""


def stuquandles():
    entries = {
        "affine3": (parse_block_matrix(BLOCK_AFFINE3, orientation="column"),
                    "reference block matrix of affine(3,2,1,0), tables stored column-wise"),
        "hopf_z3": (parse_block_matrix(BLOCK_HOPF_Z3),
                    "reference Z_3 structure separating S1 from S2"),
        "z12": (affine(12, 11, 10, 11), "affine(12,11,10,11)"),
        "z4": (affine(4, 1, 2, 1), "affine(4,1,2,1)"),
    }
    return {
        name: {"source": src, "tables": json.loads(X.to_json())}
        for name, (X, src) in entries.items()
    }


if __name__ == "__main__":
    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / "fixtures.json").write_text(json.dumps(catalog(), indent=1, sort_keys=True) + "\n")
    (DATA / "stuquandles.json").write_text(json.dumps(stuquandles(), indent=1, sort_keys=True) + "\n")
    print("wrote", DATA)
