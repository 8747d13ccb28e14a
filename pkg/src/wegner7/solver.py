"""Red/blue decomposition search, square-graph colorings and the 7-coloring pipeline.

Blue vertices take colors 1..3 and red vertices 4..7 throughout, so a blue
3-coloring and a red 4-coloring combine without renaming.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import (
    BrooksPreconditionFailed,
    CertificationError,
    InputViolation,
    NoDecomposition,
    NotPlanar,
    OverBudget,
    PreconditionError,
    SpecMismatch,
    StartNotInColors,
    TooLarge,
    Unsat3,
    Unsat4,
)
from .graph import (
    CycleRef,
    PlanarGraph,
    SimpleGraph,
    components,
    euler_check,
    face_pairs,
    from_rotation,
    square,
)
from .oracle import OracleBudget, k_coloring
from .planarity import is_planar
from .precolor import (
    DEFAULT_MAX_CYCLE,
    BoundarySpec,
    Kind,
    Mark,
    RBColoring,
    blue_square_graph,
    check_conditions,
    constraint_paths,
    precoloring,
    red_facial_4paths,
    red_square_graph,
    required_red,
)

log = logging.getLogger(__name__)

BLUE_COLORS = (1, 2, 3)
RED_COLORS = (4, 5, 6, 7)
ALL_DOMAIN = 0b1111
BLUE_DOMAIN = 0b1110
RED_DOMAIN = 0b0001


@dataclass(frozen=True)
class PaletteColoring:
    """Colors ``1..7`` per vertex; 0 marks an uncolored vertex in partial colorings.

    The class of a vertex follows from its color: 1-3 blue, 4-7 red.
    """

    colors: tuple[int, ...]

    @classmethod
    def from_mapping(cls, n: int, mapping: dict[int, int]) -> "PaletteColoring":
        colors = [0] * n
        for v, c in mapping.items():
            colors[v] = c
        return cls(tuple(colors))

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def klass(self, v: int) -> str | None:
        c = self.colors[v]
        if c == 0:
            return None
        return "blue" if c in BLUE_COLORS else "red"

    def used(self) -> set[int]:
        return {c for c in self.colors if c}

    @property
    def num_colors(self) -> int:
        return len(self.used())

    def as_dict(self) -> dict[int, int]:
        return {v: c for v, c in enumerate(self.colors) if c}

    def to_json(self) -> list[dict[str, Any]]:
        return [
            {"vertex": v, "class": self.klass(v), "color": c}
            for v, c in enumerate(self.colors)
            if c
        ]

    @classmethod
    def from_json(cls, rows: Iterable[dict[str, Any]], n: int | None = None) -> "PaletteColoring":
        mapping = {int(r["vertex"]): int(r["color"]) for r in rows}
        size = n if n is not None else (max(mapping) + 1 if mapping else 0)
        return cls.from_mapping(size, mapping)


@dataclass(frozen=True)
class KempeChain:
    colors: tuple[int, int]
    vertices: frozenset[int]


@dataclass
class DecompositionCertificate:
    """A red/blue marking of a boundary instance plus a blue 3-coloring.

    Every entry of ``checks`` can be recomputed from ``rb`` and ``blue3``
    with :meth:`recheck`.
    """

    graph: PlanarGraph
    spec: BoundarySpec
    rb: RBColoring
    blue3: dict[int, int]
    checks: dict[str, dict[str, Any]] = field(default_factory=dict)
    nodes: int = 0

    def recheck(self) -> dict[str, dict[str, Any]]:
        g, spec, rb = self.graph, self.spec, self.rb
        red_paths = red_facial_4paths(g, rb, spec)
        sq = square(g)
        blue = set(rb.blue())
        bad_blue = [
            [u, v] for u, v in sq.edges
            if u in blue and v in blue and self.blue3.get(u) == self.blue3.get(v)
        ]
        bad_blue += [[v] for v in blue if self.blue3.get(v) not in BLUE_COLORS]
        forced = required_red(g, spec)
        iii = forced is None or rb[forced] is Mark.RED
        base = precoloring(g, spec)
        extends = all(
            base[v] is Mark.UNCOLORED or base[v] is rb[v] for v in range(g.n)
        ) and rb.is_total()
        return {
            "i": {"pass": not red_paths, "witness": [list(p) for p in red_paths]},
            "ii": {"pass": not bad_blue, "witness": bad_blue},
            "iii": {"pass": iii, "witness": None if iii else forced},
            "extends_precoloring": {"pass": extends, "witness": None},
        }

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks.values())

    def to_json(self) -> dict[str, Any]:
        return {
            "spec": self.spec.to_json(),
            "marks": self.rb.to_json(),
            "blue3": {str(v): c for v, c in sorted(self.blue3.items())},
            "checks": self.checks,
        }


# ---------------------------------------------------------------------------
# decomposition search


def _search_order(g: PlanarGraph, spec: BoundarySpec, domain: np.ndarray) -> np.ndarray:
    """Vertices with a non-trivial domain by BFS distance from C, then index."""
    dist = {v: 0 for v in spec.outer.vertices}
    q = deque(sorted(dist))
    while q:
        v = q.popleft()
        for u in sorted(g.neighbors(v)):
            if u not in dist:
                dist[u] = dist[v] + 1
                q.append(u)
    todo = [v for v in range(g.n) if domain[v] != RED_DOMAIN]
    todo.sort(key=lambda v: (dist.get(v, g.n), v))
    return np.array(todo, dtype=np.int64)


def _path_arrays(n: int, paths: Sequence[Sequence[int]]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    width = max((len(p) for p in paths), default=1)
    arr = np.full((len(paths), width), -1, dtype=np.int64)
    member: list[list[int]] = [[] for _ in range(n)]
    for r, p in enumerate(paths):
        arr[r, : len(p)] = p
        for v in p:
            member[v].append(r)
    ptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        ptr[v + 1] = ptr[v] + len(member[v])
    idx = np.array([r for m in member for r in m], dtype=np.int64)
    return arr, ptr, idx


def _base_domain(g: PlanarGraph, spec: BoundarySpec) -> np.ndarray:
    base = precoloring(g, spec)
    dom = np.empty(g.n, dtype=np.int64)
    for v in range(g.n):
        m = base[v]
        dom[v] = RED_DOMAIN if m is Mark.RED else BLUE_DOMAIN if m is Mark.BLUE else ALL_DOMAIN
    forced = required_red(g, spec)
    if forced is not None:
        dom[forced] = RED_DOMAIN
    return dom


def _run_search(
    sq: SimpleGraph,
    dom: np.ndarray,
    order: np.ndarray,
    paths: Sequence[Sequence[int]],
    node_limit: int,
    red_first: bool,
) -> tuple[int, np.ndarray, int]:
    arr, ptr, idx = _path_arrays(sq.n, paths)
    return kernels.decomp_search(sq.matrix(), dom, order, arr, ptr, idx, node_limit, red_first)


def _certificate(
    g: PlanarGraph, spec: BoundarySpec, values: np.ndarray, nodes: int
) -> DecompositionCertificate:
    rb = RBColoring.from_codes(Mark.RED if x == 0 else Mark.BLUE for x in values)
    blue3 = {v: int(x) for v, x in enumerate(values) if x > 0}
    cert = DecompositionCertificate(g, spec, rb, blue3, nodes=nodes)
    cert.checks = cert.recheck()
    if not cert.ok:
        raise CertificationError(f"search produced an uncertified decomposition: {cert.checks}")
    return cert


def solve_decomposition(
    g: PlanarGraph,
    spec: BoundarySpec,
    *,
    node_limit: int = 10_000_000,
    red_first: bool = True,
    max_len: int = DEFAULT_MAX_CYCLE,
) -> DecompositionCertificate:
    """Extend the boundary precoloring to a certified red/blue decomposition.

    Backtracks over red and the three blue colors jointly, interior vertices
    nearest C first. A partial marking is cut as soon as a constrained facial
    path is all red or two blue vertices adjacent in G^2 share a color.
    """
    report = check_conditions(g, spec, max_len=max_len)
    if not report.ok:
        raise PreconditionError(report)
    dom = _base_domain(g, spec)
    order = _search_order(g, spec, dom)
    status, values, nodes = _run_search(
        square(g), dom, order, constraint_paths(g, spec), node_limit, red_first
    )
    if status == kernels.OVER_BUDGET:
        raise OverBudget(f"decomposition search exceeded {node_limit} nodes")
    if status != kernels.FOUND:
        log.error("no decomposition for spec %s on rotation %s", spec, g.rot)
        raise NoDecomposition(f"no red/blue extension satisfies (i)-(iii) for {spec}")
    return _certificate(g, spec, values, nodes)


# ---------------------------------------------------------------------------
# square-graph colorings


def color_blue_square(g: PlanarGraph | SimpleGraph, rb: RBColoring) -> dict[int, int]:
    """3-color the blue square-graph (colors 1..3) when Brooks' theorem applies."""
    h = blue_square_graph(g, rb)
    if h.max_degree() > 3:
        raise BrooksPreconditionFailed(f"blue square-graph has maximum degree {h.max_degree()}")
    for comp in components(h):
        if len(comp) == 4 and all(h.degree(v) == 3 for v in comp):
            raise BrooksPreconditionFailed(f"blue square-graph contains K4 on {[h.host_id(v) for v in comp]}")
    colors = k_coloring(h, 3)
    if colors is None:
        raise Unsat3("blue square-graph is not 3-colorable despite Brooks' conditions")
    return {h.host_id(v): c + 1 for v, c in enumerate(colors)}


def color_red_square(g: PlanarGraph | SimpleGraph, rb: RBColoring) -> dict[int, int]:
    """4-color the planar red square-graph (colors 4..7)."""
    h = red_square_graph(g, rb)
    if not is_planar(h):
        raise NotPlanar("red square-graph is not planar")
    colors = k_coloring(h, 4)
    if colors is None:
        raise Unsat4("planar red square-graph has no 4-coloring")
    return {h.host_id(v): c + 4 for v, c in enumerate(colors)}


# ---------------------------------------------------------------------------
# verification and Kempe chains


def square_conflicts(g: PlanarGraph | SimpleGraph, pal: PaletteColoring) -> list[tuple[int, int]]:
    sq = g if isinstance(g, SimpleGraph) else square(g)
    return [(u, v) for u, v in sq.edges if pal[u] == pal[v]]


def verify_square_coloring(g: PlanarGraph | SimpleGraph, pal: PaletteColoring) -> bool:
    """True iff ``pal`` is a proper coloring of G^2 using colors among 1..7."""
    if len(pal) != g.n or any(not 1 <= c <= 7 for c in pal.colors):
        return False
    return not square_conflicts(g, pal)


def kempe_chain(pal: PaletteColoring, gsq: SimpleGraph, start: int, i: int, j: int) -> KempeChain:
    if pal[start] not in (i, j):
        raise StartNotInColors(f"vertex {start} has color {pal[start]}, not {i} or {j}")
    seen = {start}
    q = deque([start])
    while q:
        v = q.popleft()
        for u in gsq.neighbors(v):
            if u not in seen and pal[u] in (i, j):
                seen.add(u)
                q.append(u)
    return KempeChain((i, j), frozenset(seen))


def kempe_swap(pal: PaletteColoring, gsq: SimpleGraph, start: int, i: int, j: int) -> PaletteColoring:
    """Exchange colors ``i`` and ``j`` on the Kempe chain through ``start``."""
    chain = kempe_chain(pal, gsq, start, i, j)
    if i == j:
        return pal
    colors = list(pal.colors)
    for v in chain.vertices:
        colors[v] = j if colors[v] == i else i
    return PaletteColoring(tuple(colors))


# ---------------------------------------------------------------------------
# the 7-coloring pipeline


@dataclass
class Decomposition:
    """A successful decomposition of one cubic block of the input."""

    graph: PlanarGraph
    rb: RBColoring
    certificate: DecompositionCertificate
    removed_edge: tuple[int, int] | None
    labels: tuple[int, ...]


@dataclass
class ColoringRun:
    coloring: PaletteColoring
    path: str
    steps: list[str] = field(default_factory=list)
    decompositions: list[Decomposition] = field(default_factory=list)
    attempts: int = 0


@dataclass
class _Attempt:
    host: PlanarGraph
    spec: BoundarySpec
    removed: tuple[int, int] | None


def boundary_candidates(g: PlanarGraph, max_pairs: int = 8) -> Iterator[_Attempt]:
    """Boundary instances tried for a cubic block, most promising first.

    For light face pairs C1, C2 sharing ``xy``: the graph minus ``xy`` with
    outer cycle C1 + C2 - xy, where one C-neighbor of ``x`` or ``y`` acts as
    ``r0`` (each kind) or as ``b0``. Then every triangle face as the outer
    cycle with each of its vertices as a 4-forbidden ``r0``.
    """
    for pair in face_pairs(g, 11)[:max_pairs]:
        x, y = pair.edge
        host = g.delete_edge(x, y)
        want = set(pair.small.vertices) | set(pair.large.vertices)
        walk = next(
            (f for f in host.faces if f.is_cycle and set(f.vertices) == want), None
        )
        if walk is None:
            continue
        outer = CycleRef(walk.vertices)
        ends = sorted((set(host.neighbors(x)) | set(host.neighbors(y))) - {x, y})
        for r0 in ends:
            for kind in (Kind.FOUR, Kind.RIGHT, Kind.LEFT):
                yield _Attempt(host, BoundarySpec(outer, r0=r0, kind=kind), (x, y))
        for b0 in ends:
            yield _Attempt(host, BoundarySpec(outer, b0=b0), (x, y))
    for f in g.faces:
        if f.length == 3 and f.is_cycle:
            outer = CycleRef(f.vertices)
            for r0 in f.vertices:
                for kind in (Kind.FOUR, Kind.RIGHT, Kind.LEFT):
                    yield _Attempt(g, BoundarySpec(outer, r0=r0, kind=kind), None)


def _g_paths_touching_interior(g: PlanarGraph, spec: BoundarySpec) -> list[tuple[int, ...]]:
    on_c = set(spec.outer.vertices)
    return [p for p in constraint_paths(g, None) if not on_c.issuperset(p)]


def _complete(
    g: PlanarGraph, rb: RBColoring, blue3: dict[int, int], removed: tuple[int, int] | None
) -> list[int] | None:
    """Put back the deleted edge ``xy`` and color G^2, or ``None``.

    ``x`` and ``y`` are re-marked blue first and given colors 1..3 next to the
    existing blue coloring; if that fails, other markings of ``x, y`` and a
    fresh 3-coloring of the blue square-graph are tried. The red square-graph
    of G is then 4-colored exactly; it need not be planar here.
    """
    ends = () if removed is None else removed
    if ends:
        options = [(Mark.BLUE, Mark.BLUE), (Mark.BLUE, Mark.RED), (Mark.RED, Mark.BLUE), (Mark.RED, Mark.RED)]
    else:
        options = [()]
    for marks in options:
        final = rb.with_marks(dict(zip(ends, marks)))
        blue_h = blue_square_graph(g, final)
        pos = {v: i for i, v in enumerate(blue_h.labels)}
        pre = {pos[v]: c - 1 for v, c in blue3.items() if v in pos}
        blue = k_coloring(blue_h, 3, precolored=pre)
        if blue is None:
            blue = k_coloring(blue_h, 3)
        if blue is None:
            continue
        red_h = red_square_graph(g, final)
        red = k_coloring(red_h, 4)
        if red is None:
            continue
        colors = [0] * g.n
        for i, c in enumerate(blue):
            colors[blue_h.host_id(i)] = c + 1
        for i, c in enumerate(red):
            colors[red_h.host_id(i)] = c + 4
        return colors
    return None


def _try_attempt(
    g: PlanarGraph, att: _Attempt, node_limit: int, max_len: int
) -> tuple[list[int], DecompositionCertificate, RBColoring] | None:
    try:
        report = check_conditions(att.host, att.spec, max_len=max_len)
    except SpecMismatch:
        return None
    if not report.ok:
        return None
    sq = square(att.host)
    base = constraint_paths(att.host, att.spec)
    dom = _base_domain(att.host, att.spec)
    order = _search_order(att.host, att.spec, dom)
    # first ask for a marking that also avoids red facial 4-paths of G through int(C)
    for paths in (base + _g_paths_touching_interior(g, att.spec), base):
        status, values, nodes = _run_search(sq, dom, order, paths, node_limit, True)
        if status != kernels.FOUND:
            continue
        cert = _certificate(att.host, att.spec, values, nodes)
        colors = _complete(g, cert.rb, cert.blue3, att.removed)
        if colors is not None:
            final = RBColoring.from_codes(Mark.RED if c > 3 else Mark.BLUE for c in colors)
            return colors, cert, final
    return None


def _decompose(
    g: PlanarGraph, labels: tuple[int, ...], node_limit: int, max_len: int
) -> tuple[list[int], Decomposition, int] | tuple[None, None, int]:
    tries = 0
    for att in boundary_candidates(g):
        tries += 1
        found = _try_attempt(g, att, node_limit, max_len)
        if found is not None:
            colors, cert, final = found
            return colors, Decomposition(g, final, cert, att.removed, labels), tries
    return None, None, tries


def _remove_vertex(g: PlanarGraph, v: int) -> tuple[PlanarGraph, list[int]]:
    """Delete ``v``; a degree-2 ``v`` with non-adjacent neighbors is replaced by an edge."""
    rot = [list(r) for r in g.rot]
    nb = list(g.neighbors(v))
    if len(nb) == 2 and not g.has_edge(*nb):
        a, b = nb
        rot[a][rot[a].index(v)] = b
        rot[b][rot[b].index(v)] = a
    else:
        for u in nb:
            rot[u].remove(v)
    keep = [u for u in range(g.n) if u != v]
    index = {u: i for i, u in enumerate(keep)}
    sub = PlanarGraph(tuple(tuple(index[w] for w in rot[u]) for u in keep))
    return sub, keep


def _bridge(g: PlanarGraph) -> tuple[int, int] | None:
    for u, v in g.edges:
        if g.dart_face[(u, v)] == g.dart_face[(v, u)]:
            return (u, v)
    return None


def _oracle_colors(g: PlanarGraph, budget: OracleBudget) -> list[int]:
    if g.n > budget.max_vertices:
        raise TooLarge(f"oracle fallback needs n <= {budget.max_vertices}, got {g.n}")
    colors = k_coloring(square(g), 7, budget)
    if colors is None:
        raise CertificationError("G^2 has no 7-coloring: contradicts the 7-color bound")
    return [c + 1 for c in colors]


class _Pipeline:
    def __init__(self, mode: str, budget: OracleBudget, node_limit: int, max_len: int):
        self.mode = mode
        self.budget = budget
        self.node_limit = node_limit
        self.max_len = max_len
        self.steps: list[str] = []
        self.decompositions: list[Decomposition] = []
        self.attempts = 0

    def color(self, g: PlanarGraph, labels: tuple[int, ...]) -> list[int]:
        n = g.n
        if n == 0:
            return []
        comps = components(g)
        if len(comps) > 1:
            self.steps.append("split-components")
            colors = [0] * n
            for comp in comps:
                sub, index = g.relabel(comp)
                sub_colors = self.color(sub, tuple(labels[v] for v in comp))
                for v in comp:
                    colors[v] = sub_colors[index[v]]
            return colors
        if self.mode == "oracle":
            self.steps.append("oracle")
            return _oracle_colors(g, self.budget)
        if n <= 7:
            self.steps.append("trivial")
            return list(range(1, n + 1))
        low = next((v for v in range(n) if g.degree(v) < 3), None)
        if low is not None:
            self.steps.append("reduce-low-degree")
            sub, keep = _remove_vertex(g, low)
            sub_colors = self.color(sub, tuple(labels[v] for v in keep))
            colors = [0] * n
            for i, v in enumerate(keep):
                colors[v] = sub_colors[i]
            seen = {colors[u] for u in square(g).neighbors(low)}
            colors[low] = min(c for c in range(1, 8) if c not in seen)
            return colors
        br = _bridge(g)
        if br is not None:
            self.steps.append("split-bridge")
            return self._color_across_bridge(g, br, labels)
        colors, dec, tries = _decompose(g, labels, self.node_limit, self.max_len)
        self.attempts += tries
        if colors is not None:
            self.steps.append("decomposition")
            self.decompositions.append(dec)
            return colors
        if self.mode == "decomp":
            raise NoDecomposition(f"no boundary instance yielded a decomposition after {tries} attempts")
        self.steps.append("oracle")
        return _oracle_colors(g, self.budget)

    def _color_across_bridge(self, g: PlanarGraph, br: tuple[int, int], labels: tuple[int, ...]) -> list[int]:
        u, v = br
        cut = g.delete_edge(u, v)
        colors = self.color(cut, labels)
        comp_v = set(next(c for c in components(cut) if v in c))
        side_u = [u] + [w for w in g.neighbors(u) if w != v]
        nb_v = [w for w in g.neighbors(v) if w != u]
        blocked_v = {colors[w] for w in side_u}
        for perm in permutations(range(1, 8)):
            pi = dict(zip(range(1, 8), perm))
            if pi[colors[v]] in blocked_v:
                continue
            if any(pi[colors[w]] == colors[u] for w in nb_v):
                continue
            return [pi[c] if w in comp_v else c for w, c in enumerate(colors)]
        raise CertificationError("no color permutation reconciles the two sides of a bridge")


def seven_color_run(
    g: PlanarGraph,
    *,
    mode: str = "auto",
    budget: OracleBudget | None = None,
    node_limit: int = 10_000_000,
    max_len: int = DEFAULT_MAX_CYCLE,
) -> ColoringRun:
    """Color G^2 with at most 7 colors and report how the coloring was obtained.

    ``mode`` is ``auto`` (decomposition, oracle fallback), ``decomp`` (no
    fallback) or ``oracle`` (exact search only).
    """
    if mode not in ("auto", "decomp", "oracle"):
        raise InputViolation(f"unknown mode {mode!r}")
    if g.max_degree() > 3:
        raise InputViolation(f"maximum degree {g.max_degree()} exceeds 3")
    euler_check(g)
    budget = budget if budget is not None else OracleBudget.from_env()
    pipe = _Pipeline(mode, budget, node_limit, max_len)
    colors = pipe.color(g, tuple(range(g.n)))
    pal = PaletteColoring(tuple(colors))
    if not verify_square_coloring(g, pal):
        raise CertificationError(f"pipeline output fails verification: {square_conflicts(g, pal)[:3]}")
    if "oracle" in pipe.steps:
        path = "oracle"
    elif "decomposition" in pipe.steps:
        path = "decomposition"
    else:
        path = "reduction"
    return ColoringRun(pal, path, pipe.steps, pipe.decompositions, pipe.attempts)


def seven_color(g: PlanarGraph, **kwargs: Any) -> PaletteColoring:
    """A verified coloring of G^2 with at most 7 colors."""
    return seven_color_run(g, **kwargs).coloring
