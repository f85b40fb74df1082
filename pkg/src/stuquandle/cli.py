"""Command-line front end: ``stuq <command> ...``.

Exit codes: 0 success, 1 domain error (axiom failure, invalid diagram,
unknown fixture), 2 usage error.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import algebra, coloring, diagram, rna
from .algebra import FiniteStuquandle, StuquandleError

THREADS_ENV = "STUQ_THREADS"


class DomainError(Exception):
    pass


# --- argument resolution ------------------------------------------------------


def resolve_stuquandle(spec: str, orientation: str = "row", skip_check: bool = False) -> FiniteStuquandle:
    """``@file`` (block matrix, or JSON by extension), ``affine:n,a,b,e`` or ``fixtures:<name>``."""
    try:
        if spec.startswith("affine:"):
            X = algebra.parse_affine_spec(spec)
            if X is None:
                raise DomainError(f"bad affine spec {spec!r}; expected affine:n,a,b,e")
            return X
        if spec.startswith("fixtures:"):
            return algebra.shipped(spec.split(":", 1)[1])
        path = spec[1:] if spec.startswith("@") else spec
        return algebra.load_stuquandle(path, skip_check=skip_check, orientation=orientation)
    except (StuquandleError, KeyError, OSError) as exc:
        raise DomainError(f"{spec}: {_message(exc)}") from exc


def resolve_diagram(spec: str) -> tuple[str, diagram.StuckDiagram]:
    """``fixtures:<name>`` or a diagram JSON file (optionally prefixed with ``@``)."""
    try:
        if spec.startswith("fixtures:"):
            name = spec.split(":", 1)[1]
            return name, diagram.fixture(name)
        path = spec[1:] if spec.startswith("@") else spec
        d = diagram.StuckDiagram.from_json(Path(path).read_text())
        diagram.validate(d)
        return Path(path).stem, d
    except diagram.InvalidDiagramError as exc:
        raise DomainError(f"{spec}: invalid diagram: {exc}") from exc
    except (diagram.UnknownFixtureError, OSError, ValueError) as exc:
        raise DomainError(f"{spec}: {_message(exc)}") from exc


def _message(exc: BaseException) -> str:
    if isinstance(exc, KeyError) and exc.args:
        return str(exc.args[0])
    return str(exc)


def _emit(payload, as_json: bool, human: str) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


# --- batch table ----------------------------------------------------------------


@dataclass(frozen=True)
class Row:
    name: str
    sticking: int | None
    count: int | None
    error: str | None = None


def batch_table(diagrams: dict[str, diagram.StuckDiagram], X: FiniteStuquandle, threads: int = 1) -> list[Row]:
    rows = []
    for name in sorted(diagrams):
        d = diagrams[name]
        try:
            diagram.validate(d)
            rows.append(Row(name, diagram.signed_sticking_number(d), coloring.count_colorings(d, X, threads)))
        except diagram.InvalidDiagramError as exc:
            rows.append(Row(name, None, None, str(exc)))
    return rows


def format_table(rows: list[Row]) -> str:
    width = max([len(r.name) for r in rows] + [7])
    lines = [f"{'diagram':<{width}}  sticking  count"]
    for r in rows:
        if r.error:
            lines.append(f"{r.name:<{width}}  error: {r.error}")
        else:
            lines.append(f"{r.name:<{width}}  {r.sticking:>8}  {r.count}")
    return "\n".join(lines)


# --- commands ---------------------------------------------------------------------


def cmd_check(args) -> int:
    X = resolve_stuquandle(args.stuquandle, args.orientation, skip_check=True)
    report = algebra.check_axioms(X)
    payload = {"passed": report.passed, "violations": [list(v) for v in report.violations]}
    if report.passed:
        human = "ok"
    else:
        human = "\n".join(f"{ax} fails at {w}" for ax, w in report.violations)
    _emit(payload, args.json, human)
    return 0 if report.passed else 1


def cmd_make_affine(args) -> int:
    try:
        X = algebra.affine(args.n, args.a, args.b, args.e)
    except StuquandleError as exc:
        raise DomainError(str(exc)) from exc
    if args.json:
        print(X.to_json())
    else:
        sys.stdout.write(algebra.serialize_block_matrix(X, args.orientation))
    return 0


def cmd_enumerate(args) -> int:
    found = list(algebra.enumerate_all(args.n, limit=args.limit))
    if args.json:
        print(json.dumps([json.loads(X.to_json()) for X in found]))
    else:
        print("\n".join(algebra.serialize_block_matrix(X, args.orientation) for X in found), end="")
    return 0


def cmd_iso(args) -> int:
    X = resolve_stuquandle(args.first, args.orientation)
    Y = resolve_stuquandle(args.second, args.orientation)
    f = algebra.are_isomorphic(X, Y)
    human = "not isomorphic" if f is None else " ".join(map(str, f))
    _emit({"isomorphism": None if f is None else list(f)}, args.json, human)
    return 0


def cmd_count(args) -> int:
    X = resolve_stuquandle(args.stuquandle, args.orientation)
    named = dict(resolve_diagram(s) for s in args.diagram)
    if len(args.diagram) == 1:
        d = next(iter(named.values()))
        info = diagram.validate(d)
        n = coloring.count_colorings(d, X, threads=args.threads)
        _emit({"count": n, "semiarcs": info.semiarcs, "components": info.components}, args.json, str(n))
        return 0
    rows = batch_table(named, X, threads=args.threads)
    payload = [{"diagram": r.name, "sticking": r.sticking, "count": r.count, "error": r.error} for r in rows]
    _emit(payload, args.json, format_table(rows))
    return 1 if any(r.error for r in rows) else 0


def cmd_list(args) -> int:
    X = resolve_stuquandle(args.stuquandle, args.orientation)
    _, d = resolve_diagram(args.diagram)
    found = coloring.list_colorings(d, X, args.limit)
    if args.json:
        print(json.dumps([
            {"assignment": {str(s): v for s, v in c.assignment}, "free_colors": list(c.free_colors)}
            for c in found
        ], sort_keys=True))
    else:
        for c in found:
            parts = [f"{d.label(s)}={v}" for s, v in c.assignment]
            parts += [f"o{k}={v}" for k, v in enumerate(c.free_colors)]
            print(" ".join(parts))
    return 0


def cmd_present(args) -> int:
    _, d = resolve_diagram(args.diagram)
    p = coloring.presentation(d)
    if args.simplify:
        p = coloring.simplify(p)
    _emit(p.to_dict(), args.json, str(p))
    return 0


def cmd_sticking(args) -> int:
    _, d = resolve_diagram(args.diagram)
    info = diagram.validate(d)
    s = diagram.signed_sticking_number(d)
    payload = {"signed": s, "stuck_crossings": diagram.sticking_number(d),
               "components": info.components, "semiarcs": info.semiarcs}
    _emit(payload, args.json, str(s))
    return 0


def cmd_rna(args) -> int:
    try:
        a = rna.load_arc_diagram(args.arcs)
    except (rna.ArcDiagramError, OSError, ValueError) as exc:
        raise DomainError(f"{args.arcs}: {exc}") from exc
    d = rna.to_stuck_diagram(a)
    if args.emit_diagram:
        print(d.to_json())
        return 0
    X = resolve_stuquandle(args.stuquandle, args.orientation)
    info = diagram.validate(d)
    n = coloring.count_colorings(d, X, threads=args.threads)
    payload = {"count": n, "sticking": diagram.signed_sticking_number(d),
               "components": info.components, "semiarcs": info.semiarcs}
    _emit(payload, args.json, str(n))
    return 0


def cmd_fixtures(args) -> int:
    if args.show:
        d = diagram.fixture(args.show)
        print(d.to_json())
        return 0
    names = sorted(diagram.fixtures())
    payload = {n: diagram.fixture_source(n) for n in names}
    _emit(payload, args.json, "\n".join(f"{n}\t{payload[n]}" for n in names))
    return 0


def cmd_census(args) -> int:
    if args.n > 3:
        raise DomainError(f"census for n={args.n} is out of reach of exhaustive search (n <= 3 supported)")
    total = algebra.count_all(args.n)
    _emit({"n": args.n, "count": total}, args.json, str(total))
    return 0


# --- parser -------------------------------------------------------------------------


def _threads_default() -> int:
    return coloring.default_threads()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stuq", description="Finite stuquandles and stuck link colorings.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, threads=False):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--orientation", choices=("row", "column"), default="row",
                        help="block-matrix layout: row = first argument (default) or column")
        if threads:
            sp.add_argument("--threads", type=int, default=None,
                            help=f"worker processes (default: ${THREADS_ENV} or CPU count)")
        return sp

    sp = common(sub.add_parser("check", help="verify the stuquandle axioms"))
    sp.add_argument("stuquandle")
    sp.set_defaults(func=cmd_check)

    sp = common(sub.add_parser("make-affine", help="print an affine structure"))
    for flag in ("n", "a", "b", "e"):
        sp.add_argument(f"-{flag}", type=int, required=True)
    sp.set_defaults(func=cmd_make_affine)

    sp = common(sub.add_parser("enumerate", help="all stuquandles of order n"))
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--limit", type=int, default=None)
    sp.set_defaults(func=cmd_enumerate)

    sp = common(sub.add_parser("iso", help="find an isomorphism between two structures"))
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(func=cmd_iso)

    sp = common(sub.add_parser("count", help="count colorings (several --diagram flags give a table)"), threads=True)
    sp.add_argument("--diagram", action="append", required=True)
    sp.add_argument("--stuquandle", required=True)
    sp.set_defaults(func=cmd_count)

    sp = common(sub.add_parser("list", help="list colorings in lexicographic order"))
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--stuquandle", required=True)
    sp.add_argument("--limit", type=int, default=None)
    sp.set_defaults(func=cmd_list)

    sp = common(sub.add_parser("present", help="fundamental stuquandle presentation"))
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--simplify", action="store_true")
    sp.set_defaults(func=cmd_present)

    sp = common(sub.add_parser("sticking", help="signed sticking number"))
    sp.add_argument("--diagram", required=True)
    sp.set_defaults(func=cmd_sticking)

    sp = common(sub.add_parser("rna", help="invariant of an RNA arc diagram"), threads=True)
    sp.add_argument("--arcs", required=True)
    sp.add_argument("--stuquandle")
    sp.add_argument("--emit-diagram", action="store_true", help="print the closed stuck diagram as JSON")
    sp.set_defaults(func=cmd_rna)

    sp = common(sub.add_parser("fixtures", help="list shipped diagrams"))
    sp.add_argument("--show", metavar="NAME")
    sp.set_defaults(func=cmd_fixtures)

    sp = common(sub.add_parser("census", help="number of stuquandles of order n"))
    sp.add_argument("-n", type=int, required=True)
    sp.set_defaults(func=cmd_census)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 0) is None:
        args.threads = _threads_default()
    if args.command == "rna" and not args.emit_diagram and not args.stuquandle:
        parser.error("rna: --stuquandle is required unless --emit-diagram is given")
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (diagram.InvalidDiagramError, diagram.UnknownFixtureError, StuquandleError) as exc:
        print(f"error: {_message(exc)}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
