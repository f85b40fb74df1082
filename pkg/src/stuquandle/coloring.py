"""Colorings of stuck diagrams by finite stuquandles.

Rules at a crossing (downward frame, x = color at NW, y = color at NE)::

    ClassicalA     SW = y            SE = x * y
    ClassicalB     SW = y *bar x     SE = x
    StuckPositive  SW = R1(x, y)     SE = R2(x, y)
    StuckNegative  SW = R3(y, x)     SE = R4(y, x)
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Union

from .algebra import FiniteStuquandle
from .diagram import CrossingKind, StuckDiagram, validate

# --- terms ----------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    sid: int


@dataclass(frozen=True)
class Op:
    name: str  # star, starinv, r1..r4
    left: "Term"
    right: "Term"


Term = Union[Var, Op]


def term_vars(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.sid}
    return term_vars(t.left) | term_vars(t.right)


def evaluate(t: Term, X: FiniteStuquandle, env) -> int:
    if isinstance(t, Var):
        return env[t.sid]
    return X.op(t.name, evaluate(t.left, X, env), evaluate(t.right, X, env))


def render(t: Term, name=lambda s: f"a{s}") -> str:
    if isinstance(t, Var):
        return name(t.sid)
    label = {"star": "star", "starinv": "starinv"}.get(t.name, t.name.upper())
    return f"{label}({render(t.left, name)},{render(t.right, name)})"


@dataclass(frozen=True)
class Equation:
    lhs: int  # semiarc id
    rhs: Term


@dataclass(frozen=True)
class CrossingRule:
    index: int
    kind: CrossingKind
    equations: tuple[Equation, Equation]


def constraints(d: StuckDiagram) -> list[CrossingRule]:
    """Two equations per crossing, in crossing-list order."""
    rules = []
    for i, c in enumerate(d.crossings):
        x, y = Var(c.in_nw), Var(c.in_ne)
        k = c.kind
        if k is CrossingKind.CLASSICAL_A:
            sw, se = y, Op("star", x, y)
        elif k is CrossingKind.CLASSICAL_B:
            sw, se = Op("starinv", y, x), x
        elif k is CrossingKind.STUCK_POSITIVE:
            sw, se = Op("r1", x, y), Op("r2", x, y)
        else:
            sw, se = Op("r3", y, x), Op("r4", y, x)
        rules.append(CrossingRule(i, k, (Equation(c.out_sw, sw), Equation(c.out_se, se))))
    return rules


def equations(d: StuckDiagram) -> list[Equation]:
    return [eq for r in constraints(d) for eq in r.equations]


def satisfies(d: StuckDiagram, X: FiniteStuquandle, env) -> bool:
    return all(env[eq.lhs] == evaluate(eq.rhs, X, env) for eq in equations(d))


# --- solver ------------------------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[tuple[int, int], ...]  # sorted (semiarc id, color)
    free_colors: tuple[int, ...] = ()

    def as_dict(self) -> dict[int, int]:
        return dict(self.assignment)


class _Propagator:
    """Single-step rules ``target = f(a, b)`` derived from the crossing equations.

    Besides the forward rules, classical crossings are invertible in their
    inputs, so the solver also gets backward rules there; these are sound
    consequences and leave the solution set unchanged.
    """

    def __init__(self, d: StuckDiagram, X: FiniteStuquandle):
        self.ids = d.semiarc_ids()
        self.index = {s: i for i, s in enumerate(self.ids)}
        ix = self.index
        rules = []  # (target, fn, args)
        S, I = X.star, X.star_inv
        R1, R2, R3, R4 = X.r1, X.r2, X.r3, X.r4
        for c in d.crossings:
            nw, ne, sw, se = ix[c.in_nw], ix[c.in_ne], ix[c.out_sw], ix[c.out_se]
            k = c.kind
            if k is CrossingKind.CLASSICAL_A:
                rules += [
                    (sw, None, (ne,)), (ne, None, (sw,)),
                    (se, S, (nw, ne)), (nw, I, (se, ne)),
                ]
            elif k is CrossingKind.CLASSICAL_B:
                rules += [
                    (se, None, (nw,)), (nw, None, (se,)),
                    (sw, I, (ne, nw)), (ne, S, (sw, nw)),
                ]
            elif k is CrossingKind.STUCK_POSITIVE:
                rules += [(sw, R1, (nw, ne)), (se, R2, (nw, ne))]
            else:
                rules += [(sw, R3, (ne, nw)), (se, R4, (ne, nw))]
        self.rules = rules
        self.watch: list[list[int]] = [[] for _ in self.ids]
        for r, (_, _, args) in enumerate(rules):
            for a in set(args):
                self.watch[a].append(r)
        self.n = X.n

    def _fire(self, val: list, trail: list, queue: list) -> bool:
        rules = self.rules
        while queue:
            s = queue.pop()
            for r in self.watch[s]:
                target, fn, args = rules[r]
                if fn is None:
                    v = val[args[0]]
                    if v < 0:
                        continue
                else:
                    a, b = val[args[0]], val[args[1]]
                    if a < 0 or b < 0:
                        continue
                    v = fn[a][b]
                t = val[target]
                if t < 0:
                    val[target] = v
                    trail.append(target)
                    queue.append(target)
                elif t != v:
                    return False
        return True

    def assign(self, val: list, s: int, v: int, trail: list) -> bool:
        val[s] = v
        trail.append(s)
        return self._fire(val, trail, [s])

    def seed_order_bfs(self, val: list) -> int:
        """Next seed: an unassigned semiarc feeding a crossing that already has one input known."""
        for target, fn, args in self.rules:
            if fn is not None and len(args) == 2:
                a, b = val[args[0]], val[args[1]]
                if (a < 0) != (b < 0):
                    return args[0] if a < 0 else args[1]
        for i, v in enumerate(val):
            if v < 0:
                return i
        return -1

    def count(self, val: list, lexicographic: bool = False) -> int:
        s = self._next(val, lexicographic)
        if s < 0:
            return 1
        total = 0
        for v in range(self.n):
            trail: list = []
            if self.assign(val, s, v, trail):
                total += self.count(val, lexicographic)
            for t in trail:
                val[t] = -1
        return total

    def solutions(self, val: list) -> Iterator[tuple[int, ...]]:
        """Complete assignments in lexicographic order of (value of smallest id, ...)."""
        s = self._next(val, True)
        if s < 0:
            yield tuple(val)
            return
        for v in range(self.n):
            trail: list = []
            if self.assign(val, s, v, trail):
                yield from self.solutions(val)
            for t in trail:
                val[t] = -1

    def _next(self, val, lexicographic):
        if lexicographic:
            for i, v in enumerate(val):
                if v < 0:
                    return i
            return -1
        return self.seed_order_bfs(val)


def _count_partition(args) -> int:
    d, X, first, value = args
    p = _Propagator(d, X)
    val = [-1] * len(p.ids)
    if not p.assign(val, first, value, []):
        return 0
    return p.count(val)


# below this many semiarcs a worker pool costs more than it saves
_PARALLEL_MIN_SEMIARCS = 12


def default_threads() -> int:
    env = os.environ.get("STUQ_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def count_colorings(d: StuckDiagram, X: FiniteStuquandle, threads: int = 1) -> int:
    """Col_X(d): number of colorings, times n for every free circle."""
    validate(d)
    factor = X.n ** d.free_circles
    if not d.crossings:
        return factor
    p = _Propagator(d, X)
    val = [-1] * len(p.ids)
    if threads > 1 and len(p.ids) >= _PARALLEL_MIN_SEMIARCS:
        first = p.seed_order_bfs(val)
        jobs = [(d, X, first, v) for v in range(X.n)]
        with ProcessPoolExecutor(max_workers=min(threads, X.n)) as ex:
            return factor * sum(ex.map(_count_partition, jobs))
    return factor * p.count(val)


def iter_colorings(d: StuckDiagram, X: FiniteStuquandle) -> Iterator[Coloring]:
    """All colorings, lexicographic in (colors by increasing semiarc id, free-circle colors)."""
    validate(d)
    p = _Propagator(d, X)
    val = [-1] * len(p.ids)
    free = list(itertools.product(range(X.n), repeat=d.free_circles))
    for sol in p.solutions(val):
        assignment = tuple(zip(p.ids, sol))
        for fc in free:
            yield Coloring(assignment, fc)


def list_colorings(d: StuckDiagram, X: FiniteStuquandle, limit: int | None = None) -> list[Coloring]:
    return list(itertools.islice(iter_colorings(d, X), limit))


class BudgetExceededError(RuntimeError):
    pass


def brute_force_count(d: StuckDiagram, X: FiniteStuquandle, budget: int = 10**8) -> int:
    """Enumerate every assignment of colors to semiarcs and test every equation."""
    ids = d.semiarc_ids()
    size = X.n ** len(ids)
    if size > budget:
        raise BudgetExceededError(f"{X.n}^{len(ids)} = {size} assignments exceeds budget {budget}")
    eqs = equations(d)
    count = 0
    for values in itertools.product(range(X.n), repeat=len(ids)):
        env = dict(zip(ids, values))
        if all(env[eq.lhs] == evaluate(eq.rhs, X, env) for eq in eqs):
            count += 1
    return count * X.n ** d.free_circles


def apply_isomorphism(c: Coloring, f) -> Coloring:
    return Coloring(tuple((s, f[v]) for s, v in c.assignment), tuple(f[v] for v in c.free_colors))


# --- presentations ---------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Presentation:
    generators: tuple[int, ...]
    relations: tuple[Relation, ...]
    names: tuple[tuple[int, str], ...] = ()

    def name(self, g: int) -> str:
        return dict(self.names).get(g, f"a{g}")

    def render_relation(self, r: Relation) -> str:
        return f"{render(r.lhs, self.name)} = {render(r.rhs, self.name)}"

    def __str__(self) -> str:
        gens = ",".join(self.name(g) for g in self.generators)
        rels = ", ".join(self.render_relation(r) for r in self.relations)
        return f"<{gens} | {rels}>" if rels else f"<{gens} | >"

    def to_dict(self) -> dict:
        return {
            "generators": [self.name(g) for g in self.generators],
            "relations": [self.render_relation(r) for r in self.relations],
        }


def presentation(d: StuckDiagram) -> Presentation:
    """Generators are the semiarcs (plus one per free circle), two relations per crossing."""
    validate(d)
    ids = d.semiarc_ids()
    names = dict(d.labels)
    base = max(ids, default=-1) + 1
    free = list(range(base, base + d.free_circles))
    for k, g in enumerate(free):
        names.setdefault(g, f"o{k}")
    rels = tuple(Relation(Var(eq.lhs), eq.rhs) for eq in equations(d))
    return Presentation(tuple(ids + free), rels, tuple(sorted(names.items())))


def substitute(t: Term, g: int, w: Term) -> Term:
    if isinstance(t, Var):
        return w if t.sid == g else t
    return Op(t.name, substitute(t.left, g, w), substitute(t.right, g, w))


def normalize(t: Term) -> Term:
    """Rewrite with x*x = x, x*bar x = x and the two cancellation laws of right division."""
    if isinstance(t, Var):
        return t
    left, right = normalize(t.left), normalize(t.right)
    if t.name in ("star", "starinv"):
        if left == right:
            return left
        inverse = "starinv" if t.name == "star" else "star"
        if isinstance(left, Op) and left.name == inverse and left.right == right:
            return left.left
    return Op(t.name, left, right)


def _eliminable(p: Presentation):
    """Lowest generator g with a relation g = w (either side) where w does not mention g."""
    for g in p.generators:
        for i, r in enumerate(p.relations):
            for side, other in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
                if side == Var(g) and g not in term_vars(other):
                    return g, i, other
    return None


def simplify(p: Presentation) -> Presentation:
    """Tietze generator elimination, lowest-numbered generator first.

    Relations are normalized with the quandle identities above and
    trivial relations ``t = t`` are dropped between eliminations.
    """
    while True:
        rels = []
        for r in p.relations:
            lhs, rhs = normalize(r.lhs), normalize(r.rhs)
            if lhs != rhs:
                rels.append(Relation(lhs, rhs))
        p = Presentation(p.generators, tuple(rels), p.names)
        found = _eliminable(p)
        if found is None:
            return p
        g, i, w = found
        rels = tuple(
            Relation(substitute(r.lhs, g, w), substitute(r.rhs, g, w))
            for j, r in enumerate(p.relations) if j != i
        )
        p = Presentation(tuple(h for h in p.generators if h != g), rels, p.names)


def count_homomorphisms(p: Presentation, X: FiniteStuquandle) -> int:
    """Brute-force |Hom(<p>, X)|: assignments of generators satisfying every relation."""
    count = 0
    for values in itertools.product(range(X.n), repeat=len(p.generators)):
        env = dict(zip(p.generators, values))
        if all(evaluate(r.lhs, X, env) == evaluate(r.rhs, X, env) for r in p.relations):
            count += 1
    return count
