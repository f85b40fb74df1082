"""Arc diagrams of RNA foldings and their stuck link diagrams.

Layout used by :func:`to_stuck_diagram`.  Strands sit side by side on the
x-axis, each oriented left to right, position ``p`` of a strand at
``offset + p``.  A bond between global positions P < Q is replaced by a
narrow U-shaped finger: the backbone leaves the axis just left of Q,
runs over to P at a height set by the bond span, dips below the axis
there, turns, and runs back to just right of Q.  The finger tip clasps the
backbone at P, giving two crossings: the one on the finger's returning
side is the stuck crossing, the other is classical with the finger over.
Fingers of interleaved bonds cross each other; at those crossings the
finger of the bond with the smaller first endpoint passes over.  Each
strand is closed by an arc running below everything else.

All segments are axis-parallel, so crossings are found exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable

from .algebra import FiniteStuquandle
from .coloring import count_colorings
from .diagram import Crossing, CrossingKind, StuckDiagram, validate

PARALLEL = "parallel"
ANTIPARALLEL = "antiparallel"

# bond orientation -> stuck crossing kind.  Antiparallel stems are colored
# by R3/R4, so two antiparallel hairpins have sticking number -2.
STUCK_KIND = {
    ANTIPARALLEL: CrossingKind.STUCK_NEGATIVE,
    PARALLEL: CrossingKind.STUCK_POSITIVE,
}


class ArcDiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Strand:
    id: str
    length: int


@dataclass(frozen=True)
class Bond:
    end1: tuple[str, int]
    end2: tuple[str, int]
    orientation: str = ANTIPARALLEL


@dataclass(frozen=True)
class ArcDiagram:
    strands: tuple[Strand, ...]
    bonds: tuple[Bond, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "strands", tuple(self.strands))
        object.__setattr__(self, "bonds", tuple(self.bonds))
        _check(self)

    def to_text(self) -> str:
        lines = [f"strand {s.id} {s.length}" for s in self.strands]
        lines += [
            f"bond {b.end1[0]}:{b.end1[1]} {b.end2[0]}:{b.end2[1]} {b.orientation}"
            for b in self.bonds
        ]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "strands": [{"id": s.id, "length": s.length} for s in self.strands],
            "bonds": [
                {"end1": [b.end1[0], b.end1[1]], "end2": [b.end2[0], b.end2[1]],
                 "orientation": b.orientation}
                for b in self.bonds
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ArcDiagram":
        try:
            strands = [Strand(str(s["id"]), int(s["length"])) for s in data["strands"]]
            bonds = [
                Bond((str(b["end1"][0]), int(b["end1"][1])), (str(b["end2"][0]), int(b["end2"][1])),
                     b.get("orientation", ANTIPARALLEL))
                for b in data.get("bonds", [])
            ]
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ArcDiagramError(f"malformed arc diagram JSON: {exc}") from exc
        return cls(tuple(strands), tuple(bonds))


def _check(a: ArcDiagram) -> None:
    lengths = {}
    for s in a.strands:
        if s.id in lengths:
            raise ArcDiagramError(f"duplicate strand id {s.id!r}")
        if s.length < 1:
            raise ArcDiagramError(f"strand {s.id!r} must have positive length")
        lengths[s.id] = s.length
    used = {}
    for i, b in enumerate(a.bonds):
        if b.orientation not in (PARALLEL, ANTIPARALLEL):
            raise ArcDiagramError(f"bond {i}: unknown orientation {b.orientation!r}")
        if b.end1 == b.end2:
            raise ArcDiagramError(f"bond {i}: both ends at {b.end1[0]}:{b.end1[1]}")
        for sid, pos in (b.end1, b.end2):
            if sid not in lengths:
                raise ArcDiagramError(f"bond {i}: unknown strand {sid!r}")
            if not 0 <= pos < lengths[sid]:
                raise ArcDiagramError(
                    f"bond {i}: position {pos} out of range for strand {sid!r} (length {lengths[sid]})"
                )
            if (sid, pos) in used:
                raise ArcDiagramError(f"position {sid}:{pos} used by bonds {used[(sid, pos)]} and {i}")
            used[(sid, pos)] = i


_END = re.compile(r"^([^:\s]+):(-?\d+)$")


def parse_arc_diagram(text: str) -> ArcDiagram:
    """Line format: ``strand <id> <length>`` / ``bond <s1>:<p1> <s2>:<p2> <parallel|antiparallel>``."""
    strands, bonds = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "strand" and len(tok) == 3:
            try:
                strands.append(Strand(tok[1], int(tok[2])))
            except ValueError:
                raise ArcDiagramError(f"line {lineno}: bad strand length {tok[2]!r}") from None
        elif tok[0] == "bond" and len(tok) in (3, 4):
            ends = []
            for t in tok[1:3]:
                m = _END.match(t)
                if not m:
                    raise ArcDiagramError(f"line {lineno}: bad bond end {t!r}")
                ends.append((m.group(1), int(m.group(2))))
            orient = tok[3] if len(tok) == 4 else ANTIPARALLEL
            if orient not in (PARALLEL, ANTIPARALLEL):
                raise ArcDiagramError(f"line {lineno}: unknown orientation {orient!r}")
            bonds.append(Bond(ends[0], ends[1], orient))
        else:
            raise ArcDiagramError(f"line {lineno}: cannot parse {raw!r}")
    return ArcDiagram(tuple(strands), tuple(bonds))


def parse_arc_json(text: str) -> ArcDiagram:
    return ArcDiagram.from_dict(json.loads(text))


def load_arc_diagram(path: str) -> ArcDiagram:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json"):
        return parse_arc_json(text)
    return parse_arc_diagram(text)


# --- transformation to a stuck diagram ----------------------------------------

_GAP = 2.0
_EPS = 0.25  # half-width of a finger at its base and tip


@dataclass
class _Seg:
    x0: float
    y0: float
    x1: float
    y1: float
    owner: tuple  # ("bb", strand) | ("finger", bond, side)
    comp: int
    start: float  # arc-length parameter at (x0, y0)

    @property
    def horizontal(self) -> bool:
        return self.y0 == self.y1

    def direction(self) -> tuple[float, float]:
        return (self.x1 - self.x0, self.y1 - self.y0)


def _polyline(points, owners, comp):
    segs = []
    t = 0.0
    for (p, q), owner in zip(zip(points, points[1:] + points[:1]), owners):
        segs.append(_Seg(p[0], p[1], q[0], q[1], owner, comp, t))
        t += abs(q[0] - p[0]) + abs(q[1] - p[1])
    return segs


def _meet(s: _Seg, u: _Seg):
    """Proper crossing point of a horizontal and a vertical segment, or None."""
    if s.horizontal == u.horizontal:
        return None
    h, v = (s, u) if s.horizontal else (u, s)
    x, y = v.x0, h.y0
    if min(h.x0, h.x1) < x < max(h.x0, h.x1) and min(v.y0, v.y1) < y < max(v.y0, v.y1):
        return x, y
    return None


def layout(a: ArcDiagram) -> list[list[_Seg]]:
    """Closed rectilinear curves, one per strand."""
    offsets, x = {}, 0.0
    for s in a.strands:
        offsets[s.id] = x
        x += s.length + _GAP

    def gx(end):
        return offsets[end[0]] + end[1]

    spans = []
    for k, b in enumerate(a.bonds):
        p, q = sorted((gx(b.end1), gx(b.end2)))
        spans.append((p, q, k))
    order = sorted(spans)  # routing order: by first endpoint
    rank = {k: r for r, (_, _, k) in enumerate(order)}
    m = max(len(order), 1)
    fingers = {}  # base x -> (tip x, bond, rank)
    for p, q, k in spans:
        fingers[q] = (p, k, rank[k])

    curves = []
    for ci, s in enumerate(a.strands):
        x0 = offsets[s.id] - 0.5
        x1 = offsets[s.id] + s.length - 0.5
        pts = [(x0, 0.0)]
        owners = []
        for base in sorted(b for b in fingers if x0 < b < x1):
            tip, k, r = fingers[base]
            level = (base - tip) + 0.5 * r / m
            h_in, h_out = level - 0.1 / m, level + 0.1 / m
            depth = -0.5 - 0.25 * r / m
            owners.append(("bb", ci))
            pts.append((base - _EPS, 0.0))
            inner = ("finger", k, "inner")
            outer = ("finger", k, "outer")
            path = [
                ((base - _EPS, h_in), inner),
                ((tip + _EPS, h_in), inner),
                ((tip + _EPS, depth), inner),
                ((tip - _EPS, depth), ("finger", k, "tip")),
                ((tip - _EPS, h_out), outer),
                ((base + _EPS, h_out), outer),
                ((base + _EPS, 0.0), outer),
            ]
            for pt, owner in path:
                owners.append(owner)
                pts.append(pt)
        owners.append(("bb", ci))
        pts.append((x1, 0.0))
        depth = -2.0
        owners += [("bb", ci), ("bb", ci), ("bb", ci)]
        pts += [(x1, depth), (x0, depth)]
        curves.append(_polyline(pts, owners, ci))
    return curves


def to_stuck_diagram(a: ArcDiagram) -> StuckDiagram:
    curves = layout(a)
    segs = [s for c in curves for s in c]
    bond_rank = {}
    for r, k in enumerate(sorted(range(len(a.bonds)), key=lambda k: _first_end(a, k))):
        bond_rank[k] = r

    events = []  # (crossing index, segment, parameter)
    found = []
    for i, s in enumerate(segs):
        for u in segs[i + 1:]:
            pt = _meet(s, u)
            if pt is None:
                continue
            ci = len(found)
            found.append((s, u))
            for seg in (s, u):
                events.append((seg.comp, seg.start + abs(pt[0] - seg.x0) + abs(pt[1] - seg.y0), ci, seg))

    # semiarcs: consecutive passages along each closed curve
    passages: dict[int, list] = {}
    for comp, t, ci, seg in sorted(events, key=lambda e: (e[0], e[1])):
        passages.setdefault(comp, []).append((ci, seg))
    incoming: dict[tuple[int, int], int] = {}
    outgoing: dict[tuple[int, int], int] = {}
    sid = 0
    for comp in sorted(passages):
        plist = passages[comp]
        first = sid
        for j, (ci, seg) in enumerate(plist):
            outgoing[(ci, id(seg))] = sid + j
            incoming[(ci, id(seg))] = first + (j - 1) % len(plist)
        sid += len(plist)

    crossings = []
    for ci, (s, u) in enumerate(found):
        ds, du = s.direction(), u.direction()
        cross = ds[0] * du[1] - ds[1] * du[0]
        nwse, nesw = (s, u) if cross < 0 else (u, s)
        kind = _kind(a, nwse, nesw, bond_rank)
        crossings.append(Crossing(
            kind,
            in_nw=incoming[(ci, id(nwse))],
            in_ne=incoming[(ci, id(nesw))],
            out_sw=outgoing[(ci, id(nesw))],
            out_se=outgoing[(ci, id(nwse))],
        ))
    free = sum(1 for c in range(len(curves)) if c not in passages)
    d = StuckDiagram(tuple(crossings), free)
    validate(d)
    return d


def _first_end(a: ArcDiagram, k: int):
    offsets, x = {}, 0.0
    for s in a.strands:
        offsets[s.id] = x
        x += s.length + _GAP
    b = a.bonds[k]
    return min(offsets[b.end1[0]] + b.end1[1], offsets[b.end2[0]] + b.end2[1])


def _kind(a: ArcDiagram, nwse: _Seg, nesw: _Seg, bond_rank) -> CrossingKind:
    o1, o2 = nwse.owner, nesw.owner
    if o1[0] == "bb" or o2[0] == "bb":
        finger_seg = nesw if o1[0] == "bb" else nwse
        bond = finger_seg.owner[1]
        if finger_seg.owner[2] == "outer":
            return STUCK_KIND[a.bonds[bond].orientation]
        over = finger_seg
    else:
        over = nwse if bond_rank[o1[1]] < bond_rank[o2[1]] else nesw
    return CrossingKind.CLASSICAL_A if over is nesw else CrossingKind.CLASSICAL_B


def rna_invariant(a: ArcDiagram, X: FiniteStuquandle, threads: int = 1) -> int:
    return count_colorings(to_stuck_diagram(a), X, threads=threads)


def stuck_crossing_count(d: StuckDiagram) -> int:
    return sum(c.kind.is_stuck for c in d.crossings)


def bonds_from_pairs(strand_length: int, pairs: Iterable[tuple[int, int]],
                     orientation: str = ANTIPARALLEL) -> ArcDiagram:
    """Single-strand arc diagram from position pairs."""
    return ArcDiagram(
        (Strand("0", strand_length),),
        tuple(Bond(("0", p), ("0", q), orientation) for p, q in pairs),
    )
