"""Plane graphs given by rotation systems, faces, squares and structural checks.

Rotations are read as clockwise cyclic orders. A face walk is an orbit of the
dart map ``(u, v) -> (v, succ_v(u))`` where ``succ_v(u)`` is the neighbor
following ``u`` in the rotation at ``v``. A path ``u, v, w`` at a degree-3
vertex turns *right* when ``w == succ_v(u)``, i.e. when it runs forward along
a face walk, and *left* when it runs backward.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

import numpy as np

from . import kernels
from .errors import (
    AsymmetricRotation,
    DegreeTooLow,
    DegreeViolation,
    EulerViolation,
    InputViolation,
    NoLightPair,
    NotCubic,
    NotFacial,
)

Dart = tuple[int, int]
Edge = tuple[int, int]


class Turn(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph without loops or parallel edges.

    ``labels`` maps local vertex ids back to a host graph when the graph was
    produced by :meth:`induced`; it is ``None`` for standalone graphs.
    """

    n: int
    adj: tuple[frozenset[int], ...]
    labels: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise InputViolation("adjacency length differs from n")
        for v, nb in enumerate(self.adj):
            if v in nb:
                raise InputViolation(f"loop at vertex {v}")
            for u in nb:
                if not 0 <= u < self.n or v not in self.adj[u]:
                    raise InputViolation(f"asymmetric adjacency at {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        nb: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise InputViolation(f"loop at vertex {u}")
            if v in nb[u]:
                raise InputViolation(f"parallel edge {u}-{v}")
            nb[u].add(v)
            nb[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nb))

    @classmethod
    def from_matrix(cls, mat: np.ndarray, labels: tuple[int, ...] | None = None) -> "SimpleGraph":
        n = mat.shape[0]
        nb = tuple(frozenset(int(u) for u in np.flatnonzero(mat[v])) for v in range(n))
        return cls(n, nb, labels)

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, combinations(range(n), 2))

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges:
            mat[u, v] = mat[v, u] = 1
        return mat

    def induced(self, vertices: Iterable[int]) -> "SimpleGraph":
        """Induced subgraph relabeled to ``0..k-1``; ``labels`` keeps host ids."""
        vs = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(vs)}
        host = self.labels
        nb = tuple(frozenset(index[u] for u in self.adj[v] if u in index) for v in vs)
        labels = vs if host is None else tuple(host[v] for v in vs)
        return SimpleGraph(len(vs), nb, labels)

    def host_id(self, v: int) -> int:
        return v if self.labels is None else self.labels[v]


@dataclass(frozen=True)
class Face:
    walk: tuple[Dart, ...]

    @property
    def length(self) -> int:
        return len(self.walk)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(d[0] for d in self.walk)

    @property
    def is_cycle(self) -> bool:
        return len(set(self.vertices)) == self.length

    def edges(self) -> set[Edge]:
        return {_norm(*d) for d in self.walk}


@dataclass(frozen=True)
class CycleRef:
    """A cycle of some host graph as a cyclic vertex sequence."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) < 3:
            raise InputViolation("a cycle needs at least 3 vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputViolation(f"repeated vertex in cycle {self.vertices}")

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [_norm(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def canonical(self) -> tuple[int, ...]:
        """Lexicographically least rotation or reflection of the vertex sequence."""
        vs = list(self.vertices)
        k = len(vs)
        best = None
        for seq in (vs, vs[::-1]):
            for i in range(k):
                cand = tuple(seq[i:] + seq[:i])
                if best is None or cand < best:
                    best = cand
        return best

    def is_cycle_of(self, g: "PlanarGraph | SimpleGraph") -> bool:
        return all(g.has_edge(u, v) for u, v in self.edges())


@dataclass(frozen=True, eq=False)
class PlanarGraph:
    """Graph with a rotation system; immutable once built by :func:`from_rotation`."""

    rot: tuple[tuple[int, ...], ...]
    _pos: tuple[Mapping[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_pos", tuple({u: i for i, u in enumerate(r)} for r in self.rot))

    @property
    def n(self) -> int:
        return len(self.rot)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted({_norm(u, v) for u in range(self.n) for v in self.rot[u]}))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rot[v]

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def max_degree(self) -> int:
        return max((len(r) for r in self.rot), default=0)

    def degrees(self) -> list[int]:
        return [len(r) for r in self.rot]

    def is_cubic(self) -> bool:
        return all(len(r) == 3 for r in self.rot)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    def succ(self, v: int, u: int) -> int:
        r = self.rot[v]
        return r[(self._pos[v][u] + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        r = self.rot[v]
        return r[(self._pos[v][u] - 1) % len(r)]

    def next_dart(self, d: Dart) -> Dart:
        u, v = d
        return (v, self.succ(v, u))

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        seen: set[Dart] = set()
        out = []
        for u in range(self.n):
            for v in self.rot[u]:
                if (u, v) in seen:
                    continue
                walk = []
                d = (u, v)
                while d not in seen:
                    seen.add(d)
                    walk.append(d)
                    d = self.next_dart(d)
                out.append(Face(tuple(walk)))
        return tuple(out)

    @cached_property
    def dart_face(self) -> dict[Dart, int]:
        return {d: i for i, f in enumerate(self.faces) for d in f.walk}

    def to_simple(self) -> SimpleGraph:
        return SimpleGraph(self.n, tuple(frozenset(r) for r in self.rot))

    def matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=np.uint8)
        for u in range(self.n):
            for v in self.rot[u]:
                mat[u, v] = 1
        return mat

    def delete_edge(self, u: int, v: int) -> "PlanarGraph":
        if not self.has_edge(u, v):
            raise InputViolation(f"no edge {u}-{v}")
        rot = list(self.rot)
        rot[u] = tuple(w for w in rot[u] if w != v)
        rot[v] = tuple(w for w in rot[v] if w != u)
        return PlanarGraph(tuple(rot))

    def relabel(self, keep: Sequence[int]) -> tuple["PlanarGraph", dict[int, int]]:
        """Subgraph on ``keep`` (rotation order preserved) with compact ids."""
        index = {v: i for i, v in enumerate(keep)}
        rot = tuple(tuple(index[u] for u in self.rot[v] if u in index) for v in keep)
        return PlanarGraph(rot), index


GraphLike = Union[PlanarGraph, SimpleGraph]


def from_rotation(
    spec: Sequence[Sequence[int]] | Mapping[int, Sequence[int]],
    *,
    max_degree: int | None = 3,
    require_planar: bool = True,
) -> PlanarGraph:
    """Build a :class:`PlanarGraph` from per-vertex clockwise neighbor lists."""
    if isinstance(spec, Mapping):
        n = (max(spec) + 1) if spec else 0
        lists = [tuple(spec.get(v, ())) for v in range(n)]
    else:
        lists = [tuple(r) for r in spec]
    n = len(lists)
    for v, r in enumerate(lists):
        if len(set(r)) != len(r):
            raise InputViolation(f"vertex {v} lists a neighbor twice")
        for u in r:
            if not isinstance(u, (int, np.integer)) or not 0 <= u < n:
                raise InputViolation(f"vertex {v} lists unknown neighbor {u!r}")
            if u == v:
                raise InputViolation(f"loop at vertex {v}")
            if v not in lists[u]:
                raise AsymmetricRotation(f"{v} lists {u} but {u} does not list {v}")
        if max_degree is not None and len(r) > max_degree:
            raise DegreeViolation(f"vertex {v} has degree {len(r)} > {max_degree}")
    g = PlanarGraph(tuple(tuple(int(u) for u in r) for r in lists))
    if require_planar:
        euler_check(g)
    return g


def components(g: GraphLike) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        q = deque([s])
        while q:
            v = q.popleft()
            for u in g.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    q.append(u)
        out.append(sorted(comp))
    return out


def is_connected(g: GraphLike) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def euler_check(g: PlanarGraph) -> None:
    """Raise :class:`EulerViolation` unless every component has genus 0."""
    comp_of = {}
    comps = components(g)
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    n_faces = [0] * len(comps)
    for f in g.faces:
        n_faces[comp_of[f.walk[0][0]]] += 1
    for i, c in enumerate(comps):
        v = len(c)
        e = sum(g.degree(x) for x in c) // 2
        f = n_faces[i] if e else 1
        if v - e + f != 2:
            raise EulerViolation(f"component of vertex {c[0]}: V - E + F = {v - e + f}, not 2")


def faces(g: PlanarGraph) -> list[Face]:
    return list(g.faces)


def square(g: GraphLike) -> SimpleGraph:
    """G^2: G plus every pair at distance exactly 2."""
    return SimpleGraph.from_matrix(kernels.square_matrix(g.matrix()))


def turn_direction(g: PlanarGraph, path: Sequence[int]) -> Turn:
    u, v, w = path
    if not (g.has_edge(u, v) and g.has_edge(v, w)) or u == w:
        raise NotFacial(f"{u}-{v}-{w} is not a path of the graph")
    if g.degree(v) < 3:
        raise DegreeTooLow(f"vertex {v} has degree {g.degree(v)}; no turn is defined")
    if g.succ(v, u) == w:
        return Turn.RIGHT
    if g.pred(v, u) == w:
        return Turn.LEFT
    raise NotFacial(f"{u}-{v}-{w} is not facial")


def _darts_follow(g: PlanarGraph, path: Sequence[int]) -> bool:
    return all(
        g.succ(path[i + 1], path[i]) == path[i + 2] for i in range(len(path) - 2)
    )


def is_facial_path(g: PlanarGraph, path: Sequence[int]) -> bool:
    path = list(path)
    if len(set(path)) != len(path):
        return False
    if any(not g.has_edge(path[i], path[i + 1]) for i in range(len(path) - 1)):
        return False
    return _darts_follow(g, path) or _darts_follow(g, path[::-1])


def facial_paths(g: PlanarGraph, k: int) -> list[tuple[int, ...]]:
    """Every facial path on ``k`` vertices, listed once in forward-walk order."""
    seen = set()
    out = []
    for f in g.faces:
        vs = f.vertices
        L = len(vs)
        for i in range(L):
            p = tuple(vs[(i + j) % L] for j in range(k))
            if len(set(p)) != k:
                continue
            key = min(p, p[::-1])
            if key in seen:
                continue
            seen.add(key)
            out.append(p)
    return out


def simple_cycles(g: GraphLike, max_len: int | None = None) -> list[CycleRef]:
    """All simple cycles up to ``max_len``, rooted at their least vertex."""
    limit = g.n if max_len is None else min(max_len, g.n)
    nbrs = [sorted(g.neighbors(v)) for v in range(g.n)]
    out = []
    for s in range(g.n):
        path = [s]
        on_path = {s}
        stack = [iter([u for u in nbrs[s] if u > s])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if len(path) >= 2 and s in g.neighbors(nxt) and path[1] < nxt and len(path) + 1 >= 3:
                out.append(CycleRef(tuple(path + [nxt])))
            if len(path) + 1 < limit:
                path.append(nxt)
                on_path.add(nxt)
                stack.append(iter([u for u in nbrs[nxt] if u > s and u not in on_path]))
    return out


def has_triangle(g: GraphLike) -> bool:
    return any(g.has_edge(a, b) for v in range(g.n) for a, b in combinations(sorted(g.neighbors(v)), 2))


def bridges(g: GraphLike) -> list[Edge]:
    out = []
    base = len(components(g))
    for u, v in g.edges:
        h = SimpleGraph.from_edges(g.n, [e for e in g.edges if e != (u, v)])
        if len(components(h)) > base:
            out.append((u, v))
    return out


def is_3_connected(g: GraphLike) -> bool:
    """Vertex 3-connectivity by deleting every pair of vertices."""
    n = g.n
    if n < 4 or not is_connected(g):
        return False
    for a, b in combinations(range(n), 2):
        rest = [v for v in range(n) if v != a and v != b]
        seen = {rest[0]}
        q = deque([rest[0]])
        while q:
            v = q.popleft()
            for u in g.neighbors(v):
                if u != a and u != b and u not in seen:
                    seen.add(u)
                    q.append(u)
        if len(seen) != n - 2:
            return False
    return True


def cyclically_4_edge_connected(g: PlanarGraph) -> bool:
    """True iff every 3-edge cut is the star of a single vertex."""
    if not g.is_cubic():
        raise NotCubic("cyclic edge-connectivity is only defined here for cubic graphs")
    if not is_connected(g):
        return False
    edges = g.edges
    stars = {frozenset(_norm(v, u) for u in g.rot[v]) for v in range(g.n)}
    for cut in combinations(range(len(edges)), 3):
        removed = {edges[i] for i in cut}
        parent = list(range(g.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        parts = g.n
        for e in edges:
            if e in removed:
                continue
            a, b = find(e[0]), find(e[1])
            if a != b:
                parent[a] = b
                parts -= 1
        if parts > 1 and frozenset(removed) not in stars:
            return False
    return True


class LightPair(NamedTuple):
    small: Face
    large: Face
    edge: Edge


def face_pairs(g: PlanarGraph, max_sum: int | None = 11) -> list[LightPair]:
    """Adjacent distinct face pairs ranked by (k1 + k2, k1, shared-edge index)."""
    ranked = []
    for idx, (u, v) in enumerate(g.edges):
        fa, fb = g.dart_face[(u, v)], g.dart_face[(v, u)]
        if fa == fb:
            continue
        a, b = g.faces[fa], g.faces[fb]
        if a.length > b.length:
            a, b = b, a
        total = a.length + b.length
        if max_sum is not None and total > max_sum:
            continue
        ranked.append(((total, a.length, idx), LightPair(a, b, (u, v))))
    ranked.sort(key=lambda t: t[0])
    return [p for _, p in ranked]


def light_face_pair(g: PlanarGraph) -> LightPair:
    pairs = face_pairs(g, 11)
    if not pairs:
        raise NoLightPair("no two adjacent faces with total length <= 11")
    return pairs[0]
