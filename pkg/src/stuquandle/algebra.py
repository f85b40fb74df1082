"""Finite stuquandles on the carrier {0, ..., n-1}.

A stuquandle is stored as five n x n operation tables (``star``, ``r1`` ..
``r4``), row = first argument, column = second argument.  The right
division table ``star_inv`` is always derived, never stored on disk.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterator, Sequence

import numpy as np

OPERATIONS = ("star", "r1", "r2", "r3", "r4")

AXIOM_IDS = (
    "Q1", "Q2", "Q3",
    "S1", "S2", "S3", "S4", "S5",
    "ST6", "ST7", "ST8", "ST9", "ST10",
)

Table = tuple[tuple[int, ...], ...]


class StuquandleError(ValueError):
    """Base class for errors raised while building a stuquandle."""


class InvalidParameterError(StuquandleError):
    pass


class MalformedTableError(StuquandleError):
    def __init__(self, message: str, position: tuple | None = None):
        super().__init__(message)
        self.position = position


class NotRightInvertibleError(StuquandleError):
    def __init__(self, column: int):
        super().__init__(f"column {column} of star is not a permutation")
        self.column = column


class AxiomError(StuquandleError):
    def __init__(self, report: "AxiomReport"):
        first = report.violations[0]
        super().__init__(
            f"{len(report.violations)} axiom violation(s); first: {first[0]} at {first[1]}"
        )
        self.report = report


class BlockMatrixSyntaxError(StuquandleError):
    pass


def _freeze(table) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


def invert_star(star) -> Table:
    """Right-division table: ``result[z][y]`` is the unique x with ``star[x][y] == z``."""
    n = len(star)
    inv = [[-1] * n for _ in range(n)]
    for y in range(n):
        for x in range(n):
            z = star[x][y]
            if not 0 <= z < n or inv[z][y] != -1:
                raise NotRightInvertibleError(y)
            inv[z][y] = x
    return _freeze(inv)


@dataclass(frozen=True)
class FiniteStuquandle:
    """Five operation tables on {0..n-1}; ``star_inv`` is precomputed.

    Construction only checks shapes and ranges.  Use :func:`check_axioms`
    (or :meth:`from_tables` with ``validate=True``) to verify the axioms.
    """

    n: int
    star: Table
    r1: Table
    r2: Table
    r3: Table
    r4: Table
    star_inv: Table | None = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        _check_shape(self.n, {k: getattr(self, k) for k in OPERATIONS})
        for name in OPERATIONS:
            object.__setattr__(self, name, _freeze(getattr(self, name)))
        try:
            inv = invert_star(self.star)
        except NotRightInvertibleError:
            inv = None
        object.__setattr__(self, "star_inv", inv)

    @classmethod
    def from_tables(cls, star, r1, r2, r3, r4, validate: bool = True) -> "FiniteStuquandle":
        X = cls(len(star), star, r1, r2, r3, r4)
        if validate:
            report = check_axioms(X)
            if not report.passed:
                raise AxiomError(report)
        return X

    def tables(self) -> dict[str, Table]:
        return {k: getattr(self, k) for k in OPERATIONS}

    def op(self, name: str, x: int, y: int) -> int:
        if name == "starinv":
            if self.star_inv is None:
                raise NotRightInvertibleError(-1)
            return self.star_inv[x][y]
        return getattr(self, name)[x][y]

    def relabel(self, perm: Sequence[int]) -> "FiniteStuquandle":
        """Image of this structure under the bijection ``x -> perm[x]``."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        new = {}
        for name in OPERATIONS:
            t = getattr(self, name)
            new[name] = [[perm[t[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
        return FiniteStuquandle(n, **new)

    def to_json(self) -> str:
        payload = {"n": self.n}
        payload.update({k: [list(r) for r in getattr(self, k)] for k in OPERATIONS})
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str, validate: bool = True) -> "FiniteStuquandle":
        data = json.loads(text)
        try:
            n = int(data["n"])
            tables = {k: data[k] for k in OPERATIONS}
        except (KeyError, TypeError) as exc:
            raise MalformedTableError(f"missing field in stuquandle JSON: {exc}") from exc
        _check_shape(n, tables)
        return cls.from_tables(**tables, validate=validate)


def _check_shape(n: int, tables: dict) -> None:
    if n < 1:
        raise MalformedTableError(f"order must be positive, got {n}")
    for name, t in tables.items():
        if len(t) != n:
            raise MalformedTableError(f"table {name} has {len(t)} rows, expected {n}", (name,))
        for i, row in enumerate(t):
            if len(row) != n:
                raise MalformedTableError(
                    f"table {name} row {i} has {len(row)} entries, expected {n}", (name, i)
                )
            for j, v in enumerate(row):
                if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                    raise MalformedTableError(f"non-integer entry {name}[{i}][{j}] = {v!r}", (name, i, j))
                if not 0 <= v < n:
                    raise MalformedTableError(
                        f"entry {name}[{i}][{j}] = {v} out of range [0, {n})", (name, i, j)
                    )


# --- axioms -----------------------------------------------------------------


@dataclass
class AxiomReport:
    passed: bool
    violations: list[tuple[str, tuple[int, ...]]]

    def failed_axioms(self) -> set[str]:
        return {v[0] for v in self.violations}


def _witnesses(mask: np.ndarray, axiom: str, first_only: bool) -> list:
    idx = np.argwhere(~mask)
    if first_only:
        idx = idx[:1]
    return [(axiom, tuple(int(v) for v in w)) for w in idx]


def check_axioms(candidate, first_only: bool = False) -> AxiomReport:
    """Exhaustively check quandle, singquandle and stuquandle axioms.

    ``candidate`` is a :class:`FiniteStuquandle`, a dict of the five tables,
    or a sequence ``(star, r1, r2, r3, r4)``.  Quandle axioms are checked
    first; the remaining ones need right division and are skipped when Q2
    fails.  With ``first_only`` at most one witness per axiom is reported.
    """
    if isinstance(candidate, FiniteStuquandle):
        tables = candidate.tables()
    elif isinstance(candidate, dict):
        tables = {k: candidate[k] for k in OPERATIONS}
    else:
        tables = dict(zip(OPERATIONS, candidate))
    n = len(tables["star"])
    _check_shape(n, tables)
    S, R1, R2, R3, R4 = (np.asarray(tables[k], dtype=np.int64) for k in OPERATIONS)

    violations: list = []
    ar = np.arange(n)
    x2, y2 = np.meshgrid(ar, ar, indexing="ij")
    x3, y3, z3 = np.meshgrid(ar, ar, ar, indexing="ij")

    violations += _witnesses(S[ar, ar] == ar, "Q1", first_only)

    # Q2: each column of star is a permutation; witness (x, y) repeats an earlier value in column y
    inv_ok = True
    q2 = []
    for y in range(n):
        seen = set()
        for x in range(n):
            v = int(S[x, y])
            if v in seen:
                q2.append(("Q2", (x, y)))
                inv_ok = False
                break
            seen.add(v)
        if q2 and first_only:
            break
    violations += q2

    violations += _witnesses(S[S[x3, y3], z3] == S[S[x3, z3], S[y3, z3]], "Q3", first_only)

    if inv_ok:
        I = np.asarray(invert_star(S.tolist()), dtype=np.int64)
        x, y, z = x3, y3, z3
        checks = [
            ("S1", S[R1[I[x, y], z], y] == R1[x, S[z, y]]),
            ("S2", R2[I[x, y], z] == I[R2[x, S[z, y]], y]),
            ("S3", S[I[y, R1[x, z]], x] == I[S[y, R2[x, z]], z]),
            ("S4", R2[x2, y2] == R1[y2, S[x2, y2]]),
            ("S5", S[R1[x2, y2], R2[x2, y2]] == R2[y2, S[x2, y2]]),
            ("ST6", S[R3[y2, x2], R4[y2, x2]] == R4[S[x2, y2], y2]),
            ("ST7", R4[y2, x2] == R3[S[x2, y2], y2]),
            ("ST8", R3[S[y, x], z] == S[R3[y, I[z, x]], x]),
            ("ST9", R4[y, I[z, x]] == I[R4[S[y, x], z], x]),
            ("ST10", I[S[x, R4[y, z]], y] == S[I[x, R3[y, z]], z]),
        ]
        for name, mask in checks:
            violations += _witnesses(mask, name, first_only)

    return AxiomReport(passed=not violations, violations=violations)


def axiom_holds(tables: dict, axiom: str, witness: tuple[int, ...]) -> bool:
    """Evaluate one axiom at one witness with plain Python indexing."""
    S, R1, R2, R3, R4 = (tables[k] for k in OPERATIONS)
    n = len(S)
    if axiom == "Q1":
        (x,) = witness
        return S[x][x] == x
    if axiom == "Q2":
        _, y = witness
        return sorted(S[x][y] for x in range(n)) == list(range(n))
    if axiom == "Q3":
        x, y, z = witness
        return S[S[x][y]][z] == S[S[x][z]][S[y][z]]
    I = invert_star(S)
    if len(witness) == 3:
        x, y, z = witness
    else:
        x, y = witness
    return {
        "S1": lambda: S[R1[I[x][y]][z]][y] == R1[x][S[z][y]],
        "S2": lambda: R2[I[x][y]][z] == I[R2[x][S[z][y]]][y],
        "S3": lambda: S[I[y][R1[x][z]]][x] == I[S[y][R2[x][z]]][z],
        "S4": lambda: R2[x][y] == R1[y][S[x][y]],
        "S5": lambda: S[R1[x][y]][R2[x][y]] == R2[y][S[x][y]],
        "ST6": lambda: S[R3[y][x]][R4[y][x]] == R4[S[x][y]][y],
        "ST7": lambda: R4[y][x] == R3[S[x][y]][y],
        "ST8": lambda: R3[S[y][x]][z] == S[R3[y][I[z][x]]][x],
        "ST9": lambda: R4[y][I[z][x]] == I[R4[S[y][x]][z]][x],
        "ST10": lambda: I[S[x][R4[y][z]]][y] == S[I[x][R3[y][z]]][z],
    }[axiom]()


# --- affine family ------------------------------------------------------------


@dataclass(frozen=True)
class AffineParams:
    n: int
    a: int
    b: int
    e: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError(f"n must be positive, got {self.n}")
        g = math.gcd(self.a, self.n)
        if g != 1:
            raise InvalidParameterError(f"a={self.a} is not a unit mod {self.n} (gcd(a, n) = {g})")


def make_affine(p: AffineParams) -> FiniteStuquandle:
    """Affine stuquandle on Z_n: x*y = ax + (1-a)y with the R-maps fixed by (a, b, e)."""
    n, a, b, e = p.n, p.a % p.n, p.b % p.n, p.e % p.n

    def lin(c1, c2):
        return [[(c1 * x + c2 * y) % n for y in range(n)] for x in range(n)]

    X = FiniteStuquandle(
        n,
        star=lin(a, 1 - a),
        r1=lin(b, 1 - b),
        r2=lin(a * (1 - b), 1 - a * (1 - b)),
        r3=lin(1 - e, e),
        r4=lin(1 - a * (1 - e), a * (1 - e)),
    )
    return X


def affine(n: int, a: int, b: int, e: int) -> FiniteStuquandle:
    return make_affine(AffineParams(n, a, b, e))


def units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [a for a in range(n) if math.gcd(a, n) == 1]


def enumerate_affine(n: int) -> list[tuple[AffineParams, FiniteStuquandle]]:
    out = []
    for a in units(n):
        for b in range(n):
            for e in range(n):
                p = AffineParams(n, a, b, e)
                out.append((p, make_affine(p)))
    return out


# --- exhaustive enumeration ----------------------------------------------------


class _Unknown(Exception):
    pass


def _getter(partial: list, n: int):
    def g(i, j):
        v = partial[i * n + j]
        if v is None:
            raise _Unknown
        return v

    return g


def _quandles(n: int) -> Iterator[Table]:
    """All quandle tables on {0..n-1}, lexicographic in row-major order."""
    cells = [(i, j) for i in range(n) for j in range(n)]
    partial: list = [None] * (n * n)
    g = _getter(partial, n)
    triples = list(itertools.product(range(n), repeat=3))

    def ok() -> bool:
        for x, y, z in triples:
            try:
                if g(g(x, y), z) != g(g(x, z), g(y, z)):
                    return False
            except _Unknown:
                continue
        return True

    def rec(k: int):
        if k == len(cells):
            yield _freeze([partial[i * n:(i + 1) * n] for i in range(n)])
            return
        i, j = cells[k]
        choices = [i] if i == j else range(n)
        for v in choices:
            if i != j and v == j:
                continue  # column j already holds j on the diagonal
            if any(partial[r * n + j] == v for r in range(i)):
                continue
            partial[k] = v
            if ok():
                yield from rec(k + 1)
            partial[k] = None

    yield from rec(0)


def _sing_constraints(S, I, n):
    """Singquandle axioms with r2 derived from r1 via S4."""
    def check(g):
        r2 = lambda x, y: g(y, S[x][y])
        for x, y, z in itertools.product(range(n), repeat=3):
            try:
                if S[g(I[x][y], z)][y] != g(x, S[z][y]):
                    return False
            except _Unknown:
                pass
            try:
                if r2(I[x][y], z) != I[r2(x, S[z][y])][y]:
                    return False
            except _Unknown:
                pass
            try:
                if S[I[y][g(x, z)]][x] != I[S[y][r2(x, z)]][z]:
                    return False
            except _Unknown:
                pass
        for x, y in itertools.product(range(n), repeat=2):
            try:
                if S[g(x, y)][r2(x, y)] != r2(y, S[x][y]):
                    return False
            except _Unknown:
                pass
        return True

    return check


def _stuck_constraints(S, I, n):
    """Stuquandle axioms with r4 derived from r3 via ST7."""
    def check(g):
        r4 = lambda y, x: g(S[x][y], y)
        for x, y in itertools.product(range(n), repeat=2):
            try:
                if S[g(y, x)][r4(y, x)] != r4(S[x][y], y):
                    return False
            except _Unknown:
                pass
        for x, y, z in itertools.product(range(n), repeat=3):
            try:
                if g(S[y][x], z) != S[g(y, I[z][x])][x]:
                    return False
            except _Unknown:
                pass
            try:
                if r4(y, I[z][x]) != I[r4(S[y][x], z)][x]:
                    return False
            except _Unknown:
                pass
            try:
                if I[S[x][r4(y, z)]][y] != S[I[x][g(y, z)]][z]:
                    return False
            except _Unknown:
                pass
        return True

    return check


def _tables_satisfying(n: int, check) -> list[Table]:
    partial: list = [None] * (n * n)
    g = _getter(partial, n)
    found = []

    def rec(k: int):
        if k == n * n:
            found.append(_freeze([partial[i * n:(i + 1) * n] for i in range(n)]))
            return
        for v in range(n):
            partial[k] = v
            if check(g):
                rec(k + 1)
        partial[k] = None

    rec(0)
    return found


def enumerate_all(n: int, limit: int | None = None) -> Iterator[FiniteStuquandle]:
    """Every stuquandle on {0..n-1}, ordered lexicographically by (star, r1, r3).

    The quandle table is fixed first; r2 and r4 are then forced by the
    S4 and ST7 axioms, so only r1 and r3 are searched, entry by entry,
    with every axiom instance checked as soon as it becomes evaluable.
    The singquandle and stuck halves are independent given star.
    """
    if limit is not None and limit <= 0:
        return
    emitted = 0
    for S in _quandles(n):
        I = invert_star(S)
        r1s = _tables_satisfying(n, _sing_constraints(S, I, n))
        if not r1s:
            continue
        r3s = _tables_satisfying(n, _stuck_constraints(S, I, n))
        for r1 in r1s:
            r2 = [[r1[y][S[x][y]] for y in range(n)] for x in range(n)]
            for r3 in r3s:
                r4 = [[r3[S[x][y]][y] for x in range(n)] for y in range(n)]
                yield FiniteStuquandle(n, S, r1, r2, r3, r4)
                emitted += 1
                if limit is not None and emitted >= limit:
                    return


def count_all(n: int) -> int:
    """Census count, using the product structure of :func:`enumerate_all`."""
    total = 0
    for S in _quandles(n):
        I = invert_star(S)
        k1 = len(_tables_satisfying(n, _sing_constraints(S, I, n)))
        if k1:
            total += k1 * len(_tables_satisfying(n, _stuck_constraints(S, I, n)))
    return total


# --- isomorphism ---------------------------------------------------------------


def are_isomorphic(X: FiniteStuquandle, Y: FiniteStuquandle) -> tuple[int, ...] | None:
    """Lexicographically least bijection f with f(op_X(x, y)) = op_Y(f x, f y) for all five ops."""
    if X.n != Y.n:
        return None
    n = X.n
    ops = [(getattr(X, k), getattr(Y, k)) for k in OPERATIONS]
    f = [-1] * n
    used = [False] * n

    def propagate(trail: list) -> bool:
        changed = True
        while changed:
            changed = False
            for x in range(n):
                if f[x] < 0:
                    continue
                for y in range(n):
                    if f[y] < 0:
                        continue
                    for tx, ty in ops:
                        z = tx[x][y]
                        w = ty[f[x]][f[y]]
                        if f[z] < 0:
                            if used[w]:
                                return False
                            f[z] = w
                            used[w] = True
                            trail.append(z)
                            changed = True
                        elif f[z] != w:
                            return False
        return True

    def rec() -> bool:
        try:
            x = f.index(-1)
        except ValueError:
            return True
        for v in range(n):
            if used[v]:
                continue
            trail = [x]
            f[x] = v
            used[v] = True
            if propagate(trail) and rec():
                return True
            for t in trail:
                used[f[t]] = False
                f[t] = -1
        return False

    return tuple(f) if rec() else None


# --- block matrix text format ------------------------------------------------------


def _transpose(t) -> list[list[int]]:
    return [list(col) for col in zip(*t)]


def serialize_block_matrix(X: FiniteStuquandle, orientation: str = "row") -> str:
    """n rows of 5n integers, blocks *, R1, R2, R3, R4 separated by '|'.

    ``orientation="row"`` puts the first argument on rows.  ``"column"``
    puts it on columns, the layout of the reference Z_3 matrix with
    x*y = 2x+2y.
    """
    tables = [getattr(X, k) for k in OPERATIONS]
    if orientation == "column":
        tables = [_transpose(t) for t in tables]
    elif orientation != "row":
        raise ValueError(f"unknown orientation {orientation!r}")
    width = len(str(X.n - 1))
    lines = []
    for i in range(X.n):
        blocks = [" ".join(f"{v:>{width}}" for v in t[i]) for t in tables]
        lines.append(" | ".join(blocks))
    return "\n".join(lines) + "\n"


def parse_block_matrix(text: str, skip_check: bool = False, orientation: str = "row") -> FiniteStuquandle:
    """Parse n rows of 5n integers (blocks *, R1, R2, R3, R4); '|' and '#' comments are ignored."""
    if orientation not in ("row", "column"):
        raise ValueError(f"unknown orientation {orientation!r}")
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].replace("|", " ").strip()
        if not line:
            continue
        tokens = line.split()
        try:
            rows.append([int(t) for t in tokens])
        except ValueError as exc:
            raise BlockMatrixSyntaxError(f"line {lineno}: non-integer entry ({exc})") from exc
    if not rows:
        raise BlockMatrixSyntaxError("empty block matrix")
    n = len(rows)
    for i, r in enumerate(rows):
        if len(r) != 5 * n:
            raise BlockMatrixSyntaxError(f"ragged row {i}: {len(r)} entries, expected {5 * n}")
    tables = {k: [r[b * n:(b + 1) * n] for r in rows] for b, k in enumerate(OPERATIONS)}
    _check_shape(n, tables)
    if orientation == "column":
        tables = {k: _transpose(t) for k, t in tables.items()}
    return FiniteStuquandle.from_tables(**tables, validate=not skip_check)


def load_stuquandle(path: str, skip_check: bool = False, orientation: str = "row") -> FiniteStuquandle:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json"):
        return FiniteStuquandle.from_json(text, validate=not skip_check)
    return parse_block_matrix(text, skip_check=skip_check, orientation=orientation)


_AFFINE_RE = re.compile(r"^affine:(-?\d+),(-?\d+),(-?\d+),(-?\d+)$")


def parse_affine_spec(spec: str) -> FiniteStuquandle | None:
    m = _AFFINE_RE.match(spec.strip())
    if not m:
        return None
    n, a, b, e = (int(g) for g in m.groups())
    return affine(n, a, b, e)


@functools.lru_cache(maxsize=1)
def _shipped() -> dict:
    return json.loads(resources.files("stuquandle").joinpath("data/stuquandles.json").read_text())


def shipped_stuquandles() -> dict[str, FiniteStuquandle]:
    return {name: shipped(name) for name in sorted(_shipped())}


def shipped(name: str) -> FiniteStuquandle:
    try:
        entry = _shipped()[name]
    except KeyError:
        raise KeyError(f"unknown stuquandle {name!r}; shipped: {', '.join(sorted(_shipped()))}") from None
    return FiniteStuquandle.from_json(json.dumps(entry["tables"]))
