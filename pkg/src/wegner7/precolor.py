"""Red/blue markings, forbidden and dangerous cycles, boundary conditions c1..c9.

A boundary instance is a plane graph whose outer face is a chordless cycle C.
Every vertex of C is red except possibly one blue vertex ``b0``; when C is
all red, one vertex ``r0`` carries a kind (left-, right- or 4-forbidden) that
restricts red facial paths leaving it.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any, Iterable, Sequence

import numpy as np

from . import kernels
from .errors import InputViolation, SpecMismatch
from .graph import (
    CycleRef,
    PlanarGraph,
    SimpleGraph,
    Turn,
    components,
    facial_paths,
    simple_cycles,
    square,
    turn_direction,
)

DEFAULT_MAX_CYCLE = 12


class Mark(enum.IntEnum):
    RED = 0
    BLUE = 1
    UNCOLORED = 2


class Kind(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    FOUR = "four"


class CycleKind(str, enum.Enum):
    FORBIDDEN = "forbidden"
    DANGEROUS = "dangerous"


@dataclass(frozen=True)
class RBColoring:
    marks: tuple[Mark, ...]

    @classmethod
    def build(
        cls, n: int, red: Iterable[int] = (), blue: Iterable[int] = ()
    ) -> "RBColoring":
        marks = [Mark.UNCOLORED] * n
        for v in red:
            marks[v] = Mark.RED
        for v in blue:
            if marks[v] is Mark.RED:
                raise InputViolation(f"vertex {v} marked both red and blue")
            marks[v] = Mark.BLUE
        return cls(tuple(marks))

    @classmethod
    def from_codes(cls, codes: Iterable[int]) -> "RBColoring":
        return cls(tuple(Mark(int(c)) for c in codes))

    @property
    def n(self) -> int:
        return len(self.marks)

    def __getitem__(self, v: int) -> Mark:
        return self.marks[v]

    def blue(self) -> list[int]:
        return [v for v, m in enumerate(self.marks) if m is Mark.BLUE]

    def red(self) -> list[int]:
        return [v for v, m in enumerate(self.marks) if m is Mark.RED]

    def uncolored(self) -> list[int]:
        return [v for v, m in enumerate(self.marks) if m is Mark.UNCOLORED]

    def is_total(self) -> bool:
        return Mark.UNCOLORED not in self.marks

    def with_marks(self, updates: dict[int, Mark]) -> "RBColoring":
        marks = list(self.marks)
        for v, m in updates.items():
            marks[v] = Mark(m)
        return RBColoring(tuple(marks))

    def codes(self) -> np.ndarray:
        return np.array([int(m) for m in self.marks], dtype=np.int8)

    def to_json(self) -> list[str]:
        return [m.name.lower() for m in self.marks]


@dataclass(frozen=True)
class BoundarySpec:
    outer: CycleRef
    b0: int | None = None
    r0: int | None = None
    kind: Kind | None = None

    def __post_init__(self) -> None:
        if self.b0 is not None and self.r0 is not None:
            raise InputViolation("b0 and r0 cannot both be given")
        if self.r0 is not None and self.kind is None:
            raise InputViolation("r0 needs a kind")
        if self.r0 is None and self.kind is not None:
            raise InputViolation("a kind is only meaningful with r0")
        for v in (self.b0, self.r0):
            if v is not None and v not in self.outer.vertices:
                raise InputViolation(f"special vertex {v} is not on the outer cycle")

    @property
    def special(self) -> int | None:
        return self.b0 if self.b0 is not None else self.r0

    def to_json(self) -> dict[str, Any]:
        return {
            "outer": list(self.outer.vertices),
            "b0": self.b0,
            "r0": self.r0,
            "kind": None if self.kind is None else self.kind.value,
        }


@dataclass(frozen=True)
class ConditionResult:
    condition: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        return {"condition": self.condition, "pass": self.passed, "witness": _jsonable(self.witness)}


@dataclass(frozen=True)
class ConditionReport:
    results: tuple[ConditionResult, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, condition: str) -> ConditionResult:
        for r in self.results:
            if r.condition == condition:
                return r
        raise KeyError(condition)

    def failed(self) -> list[str]:
        return [r.condition for r in self.results if not r.passed]

    def to_json(self) -> list[dict[str, Any]]:
        return [r.to_json() for r in self.results]


def _jsonable(x: Any) -> Any:
    if isinstance(x, CycleRef):
        return list(x.vertices)
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, np.integer):
        return int(x)
    return x


# ---------------------------------------------------------------------------
# cycle predicates


def cycle_marks(rb: RBColoring, c: CycleRef) -> np.ndarray:
    return np.array([[int(rb[v]) for v in c.vertices]], dtype=np.int8)


def is_forbidden_cycle(g: PlanarGraph | SimpleGraph, rb: RBColoring, c: CycleRef) -> bool:
    """All blue with length not divisible by 3, or length 2 mod 3 with one non-blue vertex."""
    return bool(kernels.forbidden_rows(cycle_marks(rb, c))[0])


def is_dangerous_cycle(g: PlanarGraph | SimpleGraph, rb: RBColoring, c: CycleRef) -> bool:
    """Not forbidden, some non-blue vertex, and every single non-blue to blue
    flip leaves a forbidden cycle. Uncolored vertices count as non-blue."""
    return bool(kernels.dangerous_rows_by_definition(cycle_marks(rb, c))[0])


def dangerous_by_residue(marks: np.ndarray) -> np.ndarray:
    """Closed-form test per row: length 1 mod 3 with exactly one non-blue
    vertex, or length 2 mod 3 with exactly two."""
    marks = np.atleast_2d(marks)
    length = marks.shape[1]
    nonblue = (marks != Mark.BLUE).sum(axis=1)
    if length % 3 == 1:
        return nonblue == 1
    if length % 3 == 2:
        return nonblue == 2
    return np.zeros(marks.shape[0], dtype=bool)


@lru_cache(maxsize=128)
def _cycles_cached(g: PlanarGraph, max_len: int) -> tuple[CycleRef, ...]:
    return tuple(simple_cycles(g, max_len))


def scan_cycles(
    g: PlanarGraph,
    rb: RBColoring,
    max_len: int = DEFAULT_MAX_CYCLE,
    spec: BoundarySpec | None = None,
) -> list[tuple[CycleRef, CycleKind]]:
    """Every forbidden or dangerous cycle of length at most ``max_len``.

    With a ``spec`` that has ``b0``, a dangerous cycle through ``b0`` and
    exactly one other outer vertex is allowed and left out.
    """
    if not rb.blue():
        return []
    codes = rb.codes()
    by_len: dict[int, list[CycleRef]] = {}
    for c in _cycles_cached(g, max_len):
        by_len.setdefault(c.length, []).append(c)
    outer = set(spec.outer.vertices) if spec is not None else set()
    b0 = spec.b0 if spec is not None else None
    found = []
    for length in sorted(by_len):
        cycles = by_len[length]
        idx = np.array([c.vertices for c in cycles], dtype=np.int64)
        marks = codes[idx]
        forb = kernels.forbidden_rows(marks)
        dang = kernels.dangerous_rows_by_definition(marks)
        for c, f, d in zip(cycles, forb, dang):
            if f:
                found.append((c, CycleKind.FORBIDDEN))
            elif d:
                if b0 is not None and b0 in c.vertices and len(outer.intersection(c.vertices)) == 2:
                    continue
                found.append((c, CycleKind.DANGEROUS))
    return found


# ---------------------------------------------------------------------------
# boundary instances


def outer_set(spec: BoundarySpec) -> set[int]:
    return set(spec.outer.vertices)


def interior(g: PlanarGraph, spec: BoundarySpec) -> list[int]:
    on_c = outer_set(spec)
    return [v for v in range(g.n) if v not in on_c]


def interior_edges(g: PlanarGraph, spec: BoundarySpec) -> list[tuple[int, int]]:
    c_edges = set(spec.outer.edges())
    return [e for e in g.edges if e not in c_edges]


def r0_prime(g: PlanarGraph, spec: BoundarySpec) -> int | None:
    """The neighbor of ``r0`` off the outer cycle, if any."""
    if spec.r0 is None:
        return None
    on_c = outer_set(spec)
    inner = [u for u in g.neighbors(spec.r0) if u not in on_c]
    return inner[0] if len(inner) == 1 else None


def required_red(g: PlanarGraph, spec: BoundarySpec) -> int | None:
    """``r0'`` when conclusion (iii) forces it red, else ``None``."""
    if spec.kind not in (Kind.LEFT, Kind.RIGHT):
        return None
    rp = r0_prime(g, spec)
    if rp is None:
        return None
    on_c = outer_set(spec)
    if any(u in on_c and u != spec.r0 for u in g.neighbors(rp)):
        return None
    return rp


def _kind_turn(kind: Kind) -> Turn | None:
    return {Kind.LEFT: Turn.LEFT, Kind.RIGHT: Turn.RIGHT}.get(kind)


def precoloring(g: PlanarGraph, spec: BoundarySpec) -> RBColoring:
    """The marking the boundary rules prescribe before any extension."""
    on_c = outer_set(spec)
    red_c = on_c - {spec.b0}
    blue = {spec.b0} if spec.b0 is not None else set()
    for v in range(g.n):
        if v in on_c:
            continue
        if any(u in red_c and u != spec.r0 for u in g.neighbors(v)):
            blue.add(v)
    turn = _kind_turn(spec.kind) if spec.kind is not None else None
    rp = r0_prime(g, spec)
    if turn is not None and rp is not None:
        inner_nb = [u for u in g.neighbors(rp) if u not in on_c]
        if len(inner_nb) == 2 and g.degree(rp) == 3:
            for a in inner_nb:
                if turn_direction(g, (spec.r0, rp, a)) is turn:
                    blue.add(a)
    return RBColoring.build(g.n, red=red_c, blue=blue)


def _outer_is_face(g: PlanarGraph, spec: BoundarySpec) -> bool:
    target = spec.outer.canonical()
    for f in g.faces:
        if f.is_cycle and f.length == spec.outer.length:
            if CycleRef(f.vertices).canonical() == target:
                return True
    return False


def validate_boundary(g: PlanarGraph, spec: BoundarySpec) -> None:
    """Raise :class:`SpecMismatch` unless ``spec.outer`` is a chordless face cycle of ``g``."""
    if not spec.outer.is_cycle_of(g):
        raise SpecMismatch(f"{spec.outer.vertices} is not a cycle of the graph")
    if not _outer_is_face(g, spec):
        raise SpecMismatch(f"{spec.outer.vertices} is not a face boundary")
    c_edges = set(spec.outer.edges())
    on_c = outer_set(spec)
    for u, v in g.edges:
        if u in on_c and v in on_c and (u, v) not in c_edges:
            raise SpecMismatch(f"outer cycle has chord {u}-{v}")


def _reaches_outer(g: PlanarGraph, on_c: set[int], removed: set[tuple[int, int]]) -> set[int]:
    seen = set(on_c)
    q = deque(on_c)
    while q:
        v = q.popleft()
        for u in g.neighbors(v):
            if u not in seen and (min(u, v), max(u, v)) not in removed:
                seen.add(u)
                q.append(u)
    return seen


def check_conditions(
    g: PlanarGraph,
    spec: BoundarySpec,
    rb: RBColoring | None = None,
    max_len: int = DEFAULT_MAX_CYCLE,
) -> ConditionReport:
    """Evaluate c1..c9 on a boundary instance, with a witness for every failure."""
    validate_boundary(g, spec)
    if rb is None:
        rb = precoloring(g, spec)
    if rb.n != g.n:
        raise InputViolation("marking does not cover the graph")
    on_c = outer_set(spec)
    inner = interior(g, spec)
    inner_set = set(inner)
    results = []

    # c1: no set of <= 2 interior edges cuts an interior vertex off C
    c1 = ConditionResult("c1", True)
    e_int = interior_edges(g, spec)
    for k in (0, 1, 2):
        for removed in combinations(e_int, k):
            reach = _reaches_outer(g, on_c, set(removed))
            lost = [v for v in inner if v not in reach]
            if lost:
                c1 = ConditionResult("c1", False, {"vertex": lost[0], "edges": list(removed)})
                break
        if not c1.passed:
            break
    results.append(c1)

    bad = [v for v in range(g.n) if g.degree(v) > 3]
    bad += [v for v in inner if g.degree(v) != 3]
    results.append(ConditionResult("c2", not bad, bad[0] if bad else None))

    c_marks = {v: rb[v] for v in spec.outer.vertices}
    blues = [v for v, m in c_marks.items() if m is Mark.BLUE]
    uncol = [v for v, m in c_marks.items() if m is Mark.UNCOLORED]
    c3_ok = not uncol and len(blues) <= 1 and blues == ([spec.b0] if spec.b0 is not None else [])
    results.append(ConditionResult("c3", c3_ok, None if c3_ok else (uncol or blues or [spec.b0])))

    if spec.b0 is not None:
        vs = spec.outer.vertices
        i = vs.index(spec.b0)
        c_nb = [vs[i - 1], vs[(i + 1) % len(vs)]]
        ok = any(g.degree(u) == 2 for u in c_nb)
        results.append(ConditionResult("c4", ok, None if ok else spec.b0))
    else:
        results.append(ConditionResult("c4", True))

    all_red = all(m is Mark.RED for m in c_marks.values())
    c5_ok = (spec.r0 is not None and spec.kind is not None) if all_red else spec.r0 is None
    results.append(ConditionResult("c5", c5_ok, None if c5_ok else spec.r0))

    special = spec.special
    c6_ok = bool(inner)
    witness: Any = None
    if inner:
        sub = SimpleGraph.from_edges(len(inner), _reindex_edges(g, inner))
        comps = components(sub)
        if len(comps) != 1:
            c6_ok = False
            witness = [[inner[i] for i in comps[1]]]
        elif special is None or not any(u in inner_set for u in g.neighbors(special)):
            c6_ok = False
            witness = special
    results.append(ConditionResult("c6", c6_ok, witness))

    want = precoloring(g, spec)
    diff = [v for v in inner if rb[v] != want[v]]
    results.append(ConditionResult("c7", not diff, diff or None))

    hits = scan_cycles(g, rb, max_len, spec)
    results.append(
        ConditionResult("c8", not hits, {"cycle": hits[0][0], "kind": hits[0][1]} if hits else None)
    )

    c9 = ConditionResult("c9", True)
    if spec.kind in (Kind.LEFT, Kind.RIGHT):
        rp = r0_prime(g, spec)
        if rp is not None and not any(u in on_c and u != spec.r0 for u in g.neighbors(rp)):
            ok = any(
                f.is_cycle and rp in f.vertices and not on_c.intersection(f.vertices)
                for f in g.faces
            )
            c9 = ConditionResult("c9", ok, None if ok else rp)
    results.append(c9)
    return ConditionReport(tuple(results))


def _reindex_edges(g: PlanarGraph, keep: Sequence[int]) -> list[tuple[int, int]]:
    index = {v: i for i, v in enumerate(keep)}
    return [(index[u], index[v]) for u, v in g.edges if u in index and v in index]


# ---------------------------------------------------------------------------
# red facial paths and square-graphs


def constraint_paths(g: PlanarGraph, spec: BoundarySpec | None = None) -> list[tuple[int, ...]]:
    """Vertex tuples that must never be entirely red.

    Without a spec: every facial 4-path. With a spec: the facial 4-paths whose
    edges avoid C, plus, for a left/right-forbidden ``r0``, the facial 3-paths
    ``r0 r0' a`` that turn the forbidden way at ``r0'``.
    """
    paths = facial_paths(g, 4)
    if spec is None:
        return paths
    c_edges = set(spec.outer.edges())
    out = [
        p for p in paths
        if all((min(p[i], p[i + 1]), max(p[i], p[i + 1])) not in c_edges for i in range(3))
    ]
    turn = _kind_turn(spec.kind) if spec.kind is not None else None
    rp = r0_prime(g, spec)
    if turn is not None and rp is not None and g.degree(rp) == 3:
        on_c = outer_set(spec)
        for a in g.neighbors(rp):
            if a == spec.r0 or a in on_c:
                continue
            if turn_direction(g, (spec.r0, rp, a)) is turn:
                out.append((spec.r0, rp, a))
    return out


def red_facial_4paths(
    g: PlanarGraph, rb: RBColoring, spec: BoundarySpec | None = None
) -> list[tuple[int, ...]]:
    """Red paths among :func:`constraint_paths`; empty means conclusion (i) holds."""
    return [p for p in constraint_paths(g, spec) if all(rb[v] is Mark.RED for v in p)]


def blue_square_graph(g: PlanarGraph | SimpleGraph, rb: RBColoring) -> SimpleGraph:
    return square(g).induced(rb.blue())


def red_square_graph(g: PlanarGraph | SimpleGraph, rb: RBColoring) -> SimpleGraph:
    return square(g).induced(rb.red())
