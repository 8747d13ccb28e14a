"""Exact brute-force ground truth used to cross-check everything else."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from itertools import product

import numpy as np

from . import kernels
from .errors import OverBudget, PreconditionError
from .graph import CycleRef, GraphLike, PlanarGraph, SimpleGraph, square
from .precolor import (
    BoundarySpec,
    Mark,
    check_conditions,
    constraint_paths,
    interior,
    precoloring,
    required_red,
)

BUDGET_ENV = "WEGNER7_BUDGET"


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 20
    node_limit: int = 10_000_000

    @classmethod
    def from_env(cls, base: "OracleBudget | None" = None) -> "OracleBudget":
        """Apply ``WEGNER7_BUDGET``: ``NODES`` or ``NODES:MAX_VERTICES``."""
        base = base or cls()
        raw = os.environ.get(BUDGET_ENV, "").strip()
        if not raw:
            return base
        nodes, _, verts = raw.partition(":")
        budget = replace(base, node_limit=int(nodes))
        if verts:
            budget = replace(budget, max_vertices=int(verts))
        return budget


def _budget(budget: OracleBudget | None) -> OracleBudget:
    return budget if budget is not None else OracleBudget.from_env()


def greedy_dsatur(h: SimpleGraph) -> list[int]:
    colors = [-1] * h.n
    for _ in range(h.n):
        v = max(
            (x for x in range(h.n) if colors[x] < 0),
            key=lambda x: (len({colors[u] for u in h.adj[x] if colors[u] >= 0}), h.degree(x), -x),
        )
        used = {colors[u] for u in h.adj[v]}
        colors[v] = next(c for c in range(h.n) if c not in used)
    return colors


def max_clique_size(h: SimpleGraph) -> int:
    best = 0

    def expand(size: int, cand: set[int]) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + len(cand) <= best:
            return
        for v in sorted(cand):
            expand(size + 1, cand & h.adj[v])
            cand = cand - {v}
            if size + len(cand) <= best:
                return

    expand(0, set(range(h.n)))
    return best


def k_coloring(
    h: SimpleGraph,
    k: int,
    budget: OracleBudget | None = None,
    precolored: dict[int, int] | None = None,
) -> list[int] | None:
    """A proper coloring with colors ``0..k-1`` or ``None`` if none exists."""
    budget = _budget(budget)
    pre = np.full(h.n, -1, dtype=np.int64)
    for v, c in (precolored or {}).items():
        pre[v] = c
    status, colors, _ = kernels.kcolor_search(h.matrix(), k, pre, budget.node_limit)
    if status == kernels.OVER_BUDGET:
        raise OverBudget(f"{k}-coloring search exceeded {budget.node_limit} nodes")
    if status == kernels.FOUND:
        return [int(c) for c in colors]
    return None


def chromatic_number(h: SimpleGraph, budget: OracleBudget | None = None) -> int:
    """Exact chromatic number: clique lower bound, DSATUR upper bound, search between."""
    budget = _budget(budget)
    if h.n > budget.max_vertices:
        raise OverBudget(f"{h.n} vertices exceeds oracle limit {budget.max_vertices}")
    if h.n == 0:
        return 0
    lower = max_clique_size(h)
    upper = max(greedy_dsatur(h)) + 1
    for k in range(lower, upper):
        if k_coloring(h, k, budget) is not None:
            return k
    return upper


def all_cycles(g: GraphLike, max_len: int | None = None, budget: OracleBudget | None = None) -> list[CycleRef]:
    """Every simple cycle up to ``max_len``, each once up to rotation and reflection.

    Deliberately naive: grows paths from every start in every direction and
    de-duplicates by canonical form.
    """
    budget = _budget(budget)
    if g.n > budget.max_vertices:
        raise OverBudget(f"{g.n} vertices exceeds oracle limit {budget.max_vertices}")
    limit = g.n if max_len is None else max_len
    found: dict[tuple[int, ...], CycleRef] = {}

    def grow(path: list[int]) -> None:
        for u in g.neighbors(path[-1]):
            if u == path[0] and len(path) >= 3:
                c = CycleRef(tuple(path))
                found.setdefault(c.canonical(), c)
            elif u not in path and len(path) < limit:
                path.append(u)
                grow(path)
                path.pop()

    for s in range(g.n):
        grow([s])
    return [CycleRef(k) for k in sorted(found, key=lambda t: (len(t), t))]


def exists_decomposition(
    g: PlanarGraph, spec: BoundarySpec, budget: OracleBudget | None = None
) -> bool:
    """Exhaustively try every red/blue extension of the boundary precoloring.

    An extension is accepted when no constrained facial path is all red, the
    forced-red vertex (if any) is red, and the blue vertices are properly
    3-colorable in G^2.
    """
    budget = _budget(budget)
    inner = interior(g, spec)
    if len(inner) > 15:
        raise OverBudget(f"interior has {len(inner)} vertices; exhaustive limit is 15")
    report = check_conditions(g, spec)
    if not report.ok:
        raise PreconditionError(report)
    base = list(precoloring(g, spec).marks)
    free = [v for v in inner if base[v] is Mark.UNCOLORED]
    forced = required_red(g, spec)
    paths = constraint_paths(g, spec)
    sq = square(g)
    for choice in product((Mark.RED, Mark.BLUE), repeat=len(free)):
        marks = base[:]
        for v, m in zip(free, choice):
            marks[v] = m
        if forced is not None and marks[forced] is not Mark.RED:
            continue
        if any(all(marks[v] is Mark.RED for v in p) for p in paths):
            continue
        blue = [v for v in range(g.n) if marks[v] is Mark.BLUE]
        if k_coloring(sq.induced(blue), 3, budget) is not None:
            return True
    return False
