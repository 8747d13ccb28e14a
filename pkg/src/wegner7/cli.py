"""``wegner7`` command line: square, color, verify, corpus."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import generators as gen
from .errors import BudgetError, CertificationError, InputError, InputViolation, TooLarge, Wegner7Error
from .graph import GraphLike, PlanarGraph, SimpleGraph, square
from .io import dump_json, format_rot, graph_hash, load_graph, parse_rot, read_coloring, write_corpus_entry
from .oracle import OracleBudget, chromatic_number, k_coloring
from .solver import PaletteColoring, seven_color_run, square_conflicts, verify_square_coloring

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

BUILTINS = {
    "k4": gen.k4,
    "cube": gen.cube,
    "prism": gen.prism,
    "gadget": gen.prism_gadget,
    "tight": gen.wegner_tight,
    "dodecahedron": gen.dodecahedron,
    "truncated-octahedron": gen.truncated_octahedron,
}


@dataclass
class RunReport:
    id: str
    graph_hash: str
    n: int
    path: str
    coloring: list[dict[str, Any]]
    num_colors: int
    checks: dict[str, Any]
    timings: dict[str, float] = field(default_factory=dict)
    steps: list[str] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


def resolve_input(name: str, seed: int = 0) -> tuple[str, GraphLike]:
    """A file path, a built-in example name, or ``random:N``."""
    p = Path(name)
    if p.exists():
        return p.stem, load_graph(p)
    if name in BUILTINS:
        return name, BUILTINS[name]()
    if name.startswith("random:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise InputViolation(f"bad random size in {name!r}") from None
        return f"random-n{n}-s{seed}", gen.random_cubic_planar(n, seed)
    raise InputViolation(f"{name!r} is neither a file nor one of {sorted(BUILTINS)} or random:N")


def _oracle_only(h: SimpleGraph, budget: OracleBudget) -> PaletteColoring:
    if h.max_degree() > 3:
        raise InputViolation(f"maximum degree {h.max_degree()} exceeds 3")
    if h.n > budget.max_vertices:
        raise TooLarge(f"abstract input with {h.n} vertices exceeds oracle limit {budget.max_vertices}")
    colors = k_coloring(square(h), 7, budget)
    if colors is None:
        raise CertificationError("square has no 7-coloring")
    return PaletteColoring(tuple(c + 1 for c in colors))


def color_report(ident: str, g: GraphLike, mode: str = "auto") -> RunReport:
    t0 = time.perf_counter()
    budget = OracleBudget.from_env()
    steps: list[str] = []
    certs: list[dict[str, Any]] = []
    if isinstance(g, PlanarGraph):
        run = seven_color_run(g, mode=mode, budget=budget)
        pal, path, steps = run.coloring, run.path, run.steps
        certs = [d.certificate.to_json() | {"removed_edge": d.removed_edge} for d in run.decompositions]
    else:
        if mode == "decomp":
            raise InputViolation("decomposition mode needs an embedded (.rot) input")
        pal, path = _oracle_only(g, budget), "oracle"
    t1 = time.perf_counter()
    conflicts = square_conflicts(g, pal)
    ok = verify_square_coloring(g, pal)
    t2 = time.perf_counter()
    return RunReport(
        id=ident,
        graph_hash=graph_hash(g),
        n=g.n,
        path=path,
        coloring=pal.to_json(),
        num_colors=pal.num_colors,
        checks={"verified": ok, "conflicts": [list(e) for e in conflicts], "certificates": certs},
        timings={"color_s": round(t1 - t0, 6), "verify_s": round(t2 - t1, 6)},
        steps=steps,
    )


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, InputError):
        return EXIT_INPUT
    if isinstance(exc, BudgetError):
        return EXIT_BUDGET
    return EXIT_INTERNAL


def _fail(exc: Wegner7Error, as_json: bool) -> int:
    code = _exit_code(exc)
    block = {"error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code}}
    if as_json:
        sys.stdout.write(dump_json(block))
    else:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def cmd_square(args: argparse.Namespace) -> int:
    _, g = resolve_input(args.input, args.seed)
    sq = square(g)
    if args.json:
        sys.stdout.write(dump_json({"n": sq.n, "edges": [list(e) for e in sq.edges]}))
    else:
        for u, v in sq.edges:
            print(u, v)
    return EXIT_OK


def cmd_color(args: argparse.Namespace) -> int:
    ident, g = resolve_input(args.input, args.seed)
    report = color_report(ident, g, args.mode)
    doc = report.to_json()
    if args.output:
        Path(args.output).write_text(dump_json(doc))
    if args.json:
        sys.stdout.write(dump_json(doc))
    else:
        status = "verified" if report.checks["verified"] else "NOT VERIFIED"
        print(f"{ident}: n={report.n} path={report.path} colors={report.num_colors} {status}")
        print(" ".join(str(r["color"]) for r in report.coloring))
    return EXIT_OK if report.checks["verified"] else EXIT_UNVERIFIED


def cmd_verify(args: argparse.Namespace) -> int:
    _, g = resolve_input(args.input, args.seed)
    doc = json.loads(Path(args.coloring).read_text())
    pal, stored_hash = read_coloring(doc)
    actual = graph_hash(g)
    result: dict[str, Any] = {"graph_hash": actual}
    if stored_hash is not None and stored_hash != actual:
        result |= {"verified": False, "reason": "graph hash mismatch", "expected_hash": stored_hash}
    else:
        ok = verify_square_coloring(g, pal)
        conflicts = square_conflicts(g, pal) if len(pal) == g.n else []
        result |= {"verified": ok, "conflicts": [list(e) for e in conflicts]}
        if not ok and not conflicts:
            result["reason"] = "coloring does not cover every vertex with a color in 1..7"
        stored = doc.get("checks", {}).get("verified")
        if stored is not None:
            result["matches_stored"] = stored == ok
    if args.json:
        sys.stdout.write(dump_json(result))
    elif result["verified"]:
        print("verified")
    else:
        reason = result.get("reason") or f"conflicting edges in G^2: {result['conflicts'][:5]}"
        print(f"not verified: {reason}", file=sys.stderr)
    return EXIT_OK if result["verified"] else EXIT_UNVERIFIED


def _corpus_row(args: tuple[str, str, dict[str, Any], bool]) -> dict[str, Any]:
    ident, rot_text, meta, want_chi = args
    g = parse_rot(rot_text)
    t0 = time.perf_counter()
    try:
        report = color_report(ident, g)
    except Wegner7Error as exc:
        return {"id": ident, "n": g.n, "verified": False, "error": f"{type(exc).__name__}: {exc}"}
    row = {
        "id": ident,
        "n": g.n,
        "path": report.path,
        "colors": report.num_colors,
        "verified": report.checks["verified"],
        "seconds": round(time.perf_counter() - t0, 4),
        "triangle_free": meta.get("triangle_free"),
        "c4ec": meta.get("cyclically_4_edge_connected"),
        "light_pair": meta.get("light_pair"),
    }
    if want_chi:
        budget = OracleBudget.from_env()
        row["chi"] = chromatic_number(square(g), budget) if g.n <= budget.max_vertices else None
    return row


def cmd_corpus(args: argparse.Namespace) -> int:
    entries = gen.corpus(
        args.sizes, args.count, args.seed,
        include_tight=args.include_tight, include_gadget=args.include_gadget,
    )
    if args.out:
        for e in entries:
            write_corpus_entry(args.out, e.id, e.graph, e.meta)
    tasks = [(e.id, format_rot(e.graph), e.meta, not args.no_chi) for e in entries]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(_corpus_row, tasks))
    else:
        rows = [_corpus_row(t) for t in tasks]
    rows.sort(key=lambda r: r["id"])
    verified = sum(r["verified"] for r in rows)
    summary = {
        "instances": len(rows),
        "verified": verified,
        "max_colors": max((r.get("colors", 0) for r in rows), default=0),
        "needing_7": [r["id"] for r in rows if r.get("chi") == 7],
        "paths": {p: sum(r.get("path") == p for r in rows) for p in sorted({r.get("path") for r in rows if r.get("path")})},
    }
    if args.json:
        sys.stdout.write(dump_json({"summary": summary, "rows": rows}))
    else:
        print(f"{'id':<24} {'n':>3} {'path':<14} {'colors':>6} {'chi':>4} {'ok':>3}")
        for r in rows:
            chi = r.get("chi")
            print(
                f"{r['id']:<24} {r['n']:>3} {r.get('path', 'error'):<14} {r.get('colors', '-'):>6} "
                f"{'-' if chi is None else chi:>4} {'yes' if r['verified'] else 'NO':>3}"
            )
        print(
            f"verified {verified}/{len(rows)}; max colors {summary['max_colors']}; "
            f"needing 7 colors: {', '.join(summary['needing_7']) or 'none'}"
        )
    return EXIT_OK if verified == len(rows) else EXIT_UNVERIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wegner7", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help=".rot or .g6 file, built-in name, or random:N")
        p.add_argument("--seed", type=int, default=0, help="seed for random:N inputs")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("square", help="print the edges of G^2")
    add_input(p)
    p.set_defaults(func=cmd_square)

    p = sub.add_parser("color", help="7-color G^2 and verify the result")
    add_input(p)
    p.add_argument("--mode", choices=("auto", "decomp", "oracle"), default="auto")
    p.add_argument("-o", "--output", help="write the run report to this file")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="check a coloring or run report against a graph")
    add_input(p)
    p.add_argument("coloring", help="coloring JSON or run report JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="color a generated corpus and summarize")
    p.add_argument("--sizes", type=int, nargs="+", default=[8, 10, 12, 14, 16])
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--include-tight", action="store_true")
    p.add_argument("--include-gadget", action="store_true")
    p.add_argument("--no-chi", action="store_true", help="skip exact chromatic numbers")
    p.add_argument("--out", help="also write .rot files and JSON sidecars here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Wegner7Error as exc:
        return _fail(exc, getattr(args, "json", False))
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(InputViolation(str(exc)), getattr(args, "json", False))


if __name__ == "__main__":
    sys.exit(main())
