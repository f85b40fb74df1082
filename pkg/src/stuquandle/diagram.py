"""Combinatorial oriented stuck link diagrams.

Every crossing is recorded in a canonical frame in which both strands
point downward: one strand runs NW -> SE (``in_nw`` to ``out_se``), the
other NE -> SW (``in_ne`` to ``out_sw``).  Ports carry integer semiarc ids.

Crossing kinds in that frame:

* ``ClassicalA`` -- the NE -> SW strand passes over.
* ``ClassicalB`` -- the NW -> SE strand passes over.
* ``StuckPositive`` -- stuck, bar on the NE -> SW strand (colored by R1, R2).
* ``StuckNegative`` -- stuck, bar on the NW -> SE strand (colored by R3, R4).
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Iterable


class CrossingKind(str, Enum):
    CLASSICAL_A = "ClassicalA"
    CLASSICAL_B = "ClassicalB"
    STUCK_POSITIVE = "StuckPositive"
    STUCK_NEGATIVE = "StuckNegative"

    @property
    def is_stuck(self) -> bool:
        return self in (CrossingKind.STUCK_POSITIVE, CrossingKind.STUCK_NEGATIVE)

    def mirror(self) -> "CrossingKind":
        return _MIRROR[self]


_MIRROR = {
    CrossingKind.CLASSICAL_A: CrossingKind.CLASSICAL_B,
    CrossingKind.CLASSICAL_B: CrossingKind.CLASSICAL_A,
    CrossingKind.STUCK_POSITIVE: CrossingKind.STUCK_NEGATIVE,
    CrossingKind.STUCK_NEGATIVE: CrossingKind.STUCK_POSITIVE,
}


@dataclass(frozen=True)
class Crossing:
    kind: CrossingKind
    in_nw: int
    in_ne: int
    out_sw: int
    out_se: int

    def __post_init__(self):
        object.__setattr__(self, "kind", CrossingKind(self.kind))

    @property
    def ports(self) -> tuple[int, int, int, int]:
        return (self.in_nw, self.in_ne, self.out_sw, self.out_se)

    def relabel(self, mapping) -> "Crossing":
        return Crossing(self.kind, *(mapping[p] for p in self.ports))


class InvalidDiagramError(ValueError):
    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


class UnknownFixtureError(KeyError):
    pass


@dataclass(frozen=True)
class DiagramInfo:
    components: int
    semiarcs: int


@dataclass(frozen=True)
class StuckDiagram:
    crossings: tuple[Crossing, ...] = ()
    free_circles: int = 0
    # optional display names for semiarc ids (used by presentations)
    labels: tuple[tuple[int, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if isinstance(self.labels, dict):
            object.__setattr__(self, "labels", tuple(sorted(self.labels.items())))

    def semiarc_ids(self) -> list[int]:
        return sorted({p for c in self.crossings for p in c.ports})

    def label(self, sid: int) -> str:
        return dict(self.labels).get(sid, f"a{sid}")

    def relabel(self, mapping) -> "StuckDiagram":
        labels = tuple((mapping[k], v) for k, v in self.labels)
        return StuckDiagram(tuple(c.relabel(mapping) for c in self.crossings), self.free_circles, labels)

    def mirror(self) -> "StuckDiagram":
        """Swap over and under everywhere (and the stuck bars)."""
        return StuckDiagram(
            tuple(Crossing(c.kind.mirror(), *c.ports) for c in self.crossings),
            self.free_circles,
            self.labels,
        )

    def disjoint_union(self, other: "StuckDiagram") -> "StuckDiagram":
        shift = max(self.semiarc_ids(), default=-1) + 1
        moved = other.relabel({s: s + shift for s in other.semiarc_ids()})
        return StuckDiagram(
            self.crossings + moved.crossings,
            self.free_circles + other.free_circles,
            self.labels + moved.labels,
        )

    def to_dict(self) -> dict:
        return {
            "free_circles": self.free_circles,
            "crossings": [
                {"kind": c.kind.value, "in_nw": c.in_nw, "in_ne": c.in_ne,
                 "out_sw": c.out_sw, "out_se": c.out_se}
                for c in self.crossings
            ],
        } | ({"labels": {str(k): v for k, v in self.labels}} if self.labels else {})

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "StuckDiagram":
        try:
            crossings = tuple(
                Crossing(CrossingKind(c["kind"]), int(c["in_nw"]), int(c["in_ne"]),
                         int(c["out_sw"]), int(c["out_se"]))
                for c in data.get("crossings", [])
            )
            free = int(data.get("free_circles", 0))
        except (KeyError, ValueError, TypeError) as exc:
            raise InvalidDiagramError([f"malformed diagram JSON: {exc}"]) from exc
        labels = tuple(sorted((int(k), str(v)) for k, v in data.get("labels", {}).items()))
        return cls(crossings, free, labels)

    @classmethod
    def from_json(cls, text: str) -> "StuckDiagram":
        return cls.from_dict(json.loads(text))


def problems(d: StuckDiagram) -> list[str]:
    errors = []
    if d.free_circles < 0:
        errors.append(f"free_circles must be nonnegative, got {d.free_circles}")
    ins: dict[int, list] = {}
    outs: dict[int, list] = {}
    for i, c in enumerate(d.crossings):
        for p in c.ports:
            if not isinstance(p, int) or p < 0:
                errors.append(f"crossing {i}: semiarc id {p!r} is not a nonnegative integer")
        if c.in_nw == c.in_ne:
            errors.append(f"crossing {i}: duplicated input role for semiarc {c.in_nw}")
        if c.out_sw == c.out_se:
            errors.append(f"crossing {i}: duplicated output role for semiarc {c.out_sw}")
        ins.setdefault(c.in_nw, []).append((i, "in_nw"))
        ins.setdefault(c.in_ne, []).append((i, "in_ne"))
        outs.setdefault(c.out_sw, []).append((i, "out_sw"))
        outs.setdefault(c.out_se, []).append((i, "out_se"))
    for s in sorted(set(ins) | set(outs)):
        ni, no = len(ins.get(s, [])), len(outs.get(s, []))
        if ni == 0 or no == 0:
            errors.append(f"dangling semiarc {s}: {ni} input and {no} output occurrences")
        elif ni > 1 or no > 1:
            errors.append(f"semiarc {s} used {ni} times as input and {no} times as output")
    return errors


def validate(d: StuckDiagram) -> DiagramInfo:
    """Check port bookkeeping; return component and semiarc counts or raise."""
    errors = problems(d)
    if errors:
        raise InvalidDiagramError(errors)
    return DiagramInfo(components(d), semiarcs(d))


def successor(d: StuckDiagram) -> dict[int, int]:
    """Map each semiarc to the next semiarc along its strand."""
    nxt = {}
    for c in d.crossings:
        nxt[c.in_nw] = c.out_se
        nxt[c.in_ne] = c.out_sw
    return nxt


def component_cycles(d: StuckDiagram) -> list[list[int]]:
    nxt = successor(d)
    seen: set[int] = set()
    cycles = []
    for s in sorted(nxt):
        if s in seen:
            continue
        cyc = []
        while s not in seen:
            seen.add(s)
            cyc.append(s)
            s = nxt[s]
        cycles.append(cyc)
    return cycles


def components(d: StuckDiagram) -> int:
    return len(component_cycles(d)) + d.free_circles


def semiarcs(d: StuckDiagram) -> int:
    return len(d.semiarc_ids()) + d.free_circles


def signed_sticking_number(d: StuckDiagram) -> int:
    pos = sum(c.kind is CrossingKind.STUCK_POSITIVE for c in d.crossings)
    neg = sum(c.kind is CrossingKind.STUCK_NEGATIVE for c in d.crossings)
    return pos - neg


def sticking_number(d: StuckDiagram) -> int:
    return sum(c.kind.is_stuck for c in d.crossings)


def faces(d: StuckDiagram) -> int:
    """Number of faces of the 4-valent map given by the downward-frame rotation system.

    A connected diagram with V crossings is planar exactly when this is V + 2.
    """
    # clockwise port order around a crossing: NW, NE, SE, SW
    where: dict[tuple[int, str], tuple[int, int]] = {}
    for i, c in enumerate(d.crossings):
        where[(c.in_nw, "in")] = (i, 0)
        where[(c.in_ne, "in")] = (i, 1)
        where[(c.out_se, "out")] = (i, 2)
        where[(c.out_sw, "out")] = (i, 3)
    port_sid = {}
    for i, c in enumerate(d.crossings):
        port_sid[(i, 0)] = (c.in_nw, "in")
        port_sid[(i, 1)] = (c.in_ne, "in")
        port_sid[(i, 2)] = (c.out_se, "out")
        port_sid[(i, 3)] = (c.out_sw, "out")

    def other_end(port):
        sid, role = port_sid[port]
        return where[(sid, "out" if role == "in" else "in")]

    unseen = set(port_sid)
    count = 0
    while unseen:
        start = min(unseen)
        p = start
        while True:
            unseen.discard(p)
            q = other_end(p)
            p = (q[0], (q[1] + 1) % 4)
            if p == start:
                break
        count += 1
    return count


def is_planar(d: StuckDiagram) -> bool:
    """Euler-characteristic check on each connected piece of the crossing graph."""
    if not d.crossings:
        return True
    # union-find over crossings joined by semiarcs
    parent = list(range(len(d.crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner_in = {}
    for i, c in enumerate(d.crossings):
        owner_in[c.in_nw] = i
        owner_in[c.in_ne] = i
    for i, c in enumerate(d.crossings):
        for s in (c.out_sw, c.out_se):
            parent[find(i)] = find(owner_in[s])
    pieces = len({find(i) for i in range(len(d.crossings))})
    v = len(d.crossings)
    return v - 2 * v + faces(d) == 2 * pieces


def renumber(d: StuckDiagram) -> StuckDiagram:
    """Relabel semiarcs to 0..k-1 in order of first appearance."""
    mapping: dict[int, int] = {}
    for c in d.crossings:
        for p in c.ports:
            mapping.setdefault(p, len(mapping))
    return d.relabel(mapping)


def from_ports(rows: Iterable[tuple[str, int, int, int, int]], free_circles: int = 0,
               labels: dict[int, str] | None = None) -> StuckDiagram:
    return StuckDiagram(
        tuple(Crossing(CrossingKind(k), a, b, c, e) for k, a, b, c, e in rows),
        free_circles,
        tuple(sorted((labels or {}).items())),
    )


_BRAID_LETTERS = {
    "A": CrossingKind.CLASSICAL_A,
    "B": CrossingKind.CLASSICAL_B,
    "P": CrossingKind.STUCK_POSITIVE,
    "N": CrossingKind.STUCK_NEGATIVE,
}


def braid_closure(word: str | Iterable[tuple[str, int]], strands: int) -> StuckDiagram:
    """Closure of a braid with downward strands.

    ``word`` lists generators top to bottom, either as pairs ``(letter, i)``
    or as a string like ``"A1 B2 N1"``; letters are A, B (classical), P, N
    (stuck) and ``i`` joins positions i and i+1 (1-based).  Positions never
    touched close up into free circles.
    """
    if isinstance(word, str):
        word = [(tok[0], int(tok[1:])) for tok in word.split()]
    gens = [(_BRAID_LETTERS[letter], i - 1) for letter, i in word]
    for _, i in gens:
        if not 0 <= i < strands - 1:
            raise ValueError(f"generator index {i + 1} out of range for {strands} strands")
    last = {}
    for k, (_, i) in enumerate(gens):
        last[i] = last[i + 1] = k
    cur = list(range(strands))
    nxt = strands
    crossings = []
    for k, (kind, i) in enumerate(gens):
        outs = []
        for pos in (i, i + 1):
            if last[pos] == k:
                outs.append(pos)  # closes back to the top of this position
            else:
                outs.append(nxt)
                nxt += 1
        crossings.append(Crossing(kind, cur[i], cur[i + 1], outs[0], outs[1]))
        cur[i], cur[i + 1] = outs
    free = sum(1 for p in range(strands) if p not in last)
    return renumber(StuckDiagram(tuple(crossings), free))


@functools.lru_cache(maxsize=1)
def _catalog() -> dict:
    text = resources.files("stuquandle").joinpath("data/fixtures.json").read_text()
    return json.loads(text)


def fixtures() -> dict[str, StuckDiagram]:
    """Shipped diagrams by name (stuck knots, stuck Hopf variants, RNA closures, move pairs)."""
    return {name: StuckDiagram.from_dict(e["diagram"]) for name, e in sorted(_catalog().items())}


def fixture(name: str) -> StuckDiagram:
    try:
        entry = _catalog()[name]
    except KeyError:
        raise UnknownFixtureError(f"unknown fixture {name!r}") from None
    return StuckDiagram.from_dict(entry["diagram"])


def fixture_source(name: str) -> str:
    if name not in _catalog():
        raise UnknownFixtureError(f"unknown fixture {name!r}")
    return _catalog()[name]["source"]


def move_pairs() -> list[tuple[str, StuckDiagram, StuckDiagram]]:
    names = sorted(n[:-2] for n in _catalog() if n.endswith("_L"))
    return [(m, fixture(m + "_L"), fixture(m + "_R")) for m in names]
