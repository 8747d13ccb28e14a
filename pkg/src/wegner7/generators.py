"""Extremal examples and reproducible corpora of 3-connected cubic plane graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Sequence

import numpy as np

from .errors import BadN, InputViolation
from .graph import (
    PlanarGraph,
    cyclically_4_edge_connected,
    face_pairs,
    from_rotation,
    has_triangle,
    is_3_connected,
)


def from_convex_polyhedron(points: Sequence[Sequence[float]]) -> PlanarGraph:
    """Rotation system of a convex polyhedron with all edges of equal length.

    Edges join the vertex pairs at minimum distance; neighbors are ordered
    clockwise as seen from outside.
    """
    pts = np.asarray(points, dtype=float)
    pts = pts - pts.mean(axis=0)
    n = len(pts)
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    edge_len = dist[~np.eye(n, dtype=bool)].min()
    adj = np.isclose(dist, edge_len) & ~np.eye(n, dtype=bool)
    rot = []
    for v in range(n):
        normal = pts[v] / np.linalg.norm(pts[v])
        nbrs = np.flatnonzero(adj[v])
        e1 = pts[nbrs[0]] - pts[v]
        e1 -= e1.dot(normal) * normal
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(normal, e1)
        ang = [np.arctan2((pts[u] - pts[v]).dot(e2), (pts[u] - pts[v]).dot(e1)) for u in nbrs]
        order = [int(nbrs[i]) for i in np.argsort(ang)[::-1]]
        rot.append(order)
    return from_rotation(rot, max_degree=None)


def k4() -> PlanarGraph:
    return from_convex_polyhedron([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])


def cube() -> PlanarGraph:
    return from_convex_polyhedron([(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)])


def prism() -> PlanarGraph:
    """Triangular prism: triangles 0-1-2 and 3-4-5, with edges 0-3, 1-4, 2-5."""
    r = 1 / np.sqrt(3)
    angles = [np.pi / 2 + 2 * np.pi * k / 3 for k in range(3)]
    top = [(r * np.cos(a), r * np.sin(a), 0.5) for a in angles]
    bottom = [(r * np.cos(a), r * np.sin(a), -0.5) for a in angles]
    return from_convex_polyhedron(top + bottom)


def dodecahedron() -> PlanarGraph:
    phi = (1 + 5**0.5) / 2
    pts = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    for a in (-1, 1):
        for b in (-1, 1):
            pts += [(0, a / phi, b * phi), (a / phi, b * phi, 0), (a * phi, 0, b / phi)]
    return from_convex_polyhedron(pts)


def truncated_octahedron() -> PlanarGraph:
    pts = set()
    for perm in permutations((0, 1, 2)):
        for s1 in (-1, 1):
            for s2 in (-1, 1):
                p = [0.0, 0.0, 0.0]
                p[perm.index(1)] = s1 * 1
                p[perm.index(2)] = s2 * 2
                pts.add(tuple(p))
    return from_convex_polyhedron(sorted(pts))


def subdivide(g: PlanarGraph, u: int, v: int) -> PlanarGraph:
    """Insert a new vertex (id ``g.n``) on edge ``u-v``."""
    if not g.has_edge(u, v):
        raise InputViolation(f"no edge {u}-{v}")
    w = g.n
    rot = [list(r) for r in g.rot]
    rot[u][rot[u].index(v)] = w
    rot[v][rot[v].index(u)] = w
    rot.append([u, v])
    return from_rotation(rot)


def triangle_free_prism_edges(g: PlanarGraph) -> list[tuple[int, int]]:
    """Edges of ``g`` lying on no triangle, in lexicographic order."""
    return [
        (u, v) for u, v in g.edges
        if not any(g.has_edge(u, w) and g.has_edge(v, w) for w in range(g.n))
    ]


def prism_gadget() -> PlanarGraph:
    """Prism with its lexicographically first non-triangle edge subdivided.

    Seven vertices, degrees (2,3,3,3,3,3,3); its square is K7.
    """
    p = prism()
    u, v = triangle_free_prism_edges(p)[0]
    return subdivide(p, u, v)


def wegner_tight() -> PlanarGraph:
    """Two prism gadgets joined at their degree-2 vertices: cubic, 14 vertices."""
    gad = prism_gadget()
    k = gad.n
    deg2 = [v for v in range(k) if gad.degree(v) == 2][0]
    rot = [list(r) for r in gad.rot] + [[u + k for u in r] for r in gad.rot]
    rot[deg2].append(deg2 + k)
    rot[deg2 + k].append(deg2)
    return from_rotation(rot)


def expand(g: PlanarGraph, face: int, i: int, j: int) -> PlanarGraph:
    """Subdivide darts ``i`` and ``j`` of a face walk and join the two new vertices
    across that face. Keeps the graph plane, cubic and 3-connected."""
    walk = g.faces[face].walk
    if i == j:
        raise InputViolation("expansion needs two distinct edges")
    (p, q), (r, s) = walk[i], walk[j]
    a, b = g.n, g.n + 1
    rot = [list(x) for x in g.rot]
    rot[p][rot[p].index(q)] = a
    rot[q][rot[q].index(p)] = a
    rot[r][rot[r].index(s)] = b
    rot[s][rot[s].index(r)] = b
    rot.append([p, b, q])
    rot.append([a, s, r])
    return from_rotation(rot)


@dataclass(frozen=True)
class GenSeed:
    seed: int
    steps: int | None = None


def random_cubic_planar(n: int, seed: GenSeed | int) -> PlanarGraph:
    """3-connected cubic plane graph on ``n`` vertices grown from K4.

    Each step picks a face and two of its edges uniformly. The distribution
    is not uniform over isomorphism classes.
    """
    if isinstance(seed, int):
        seed = GenSeed(seed)
    if n < 4 or n % 2:
        raise BadN(f"n must be even and >= 4, got {n}")
    steps = (n - 4) // 2
    if seed.steps is not None and seed.steps != steps:
        raise BadN(f"{seed.steps} expansions cannot give {n} vertices")
    rng = random.Random(seed.seed)
    g = k4()
    for _ in range(steps):
        f = rng.randrange(len(g.faces))
        i, j = rng.sample(range(g.faces[f].length), 2)
        g = expand(g, f, i, j)
    return g


def describe(g: PlanarGraph) -> dict[str, Any]:
    pairs = face_pairs(g, None)
    light = pairs[0] if pairs else None
    cubic = g.is_cubic()
    return {
        "n": g.n,
        "m": g.m,
        "cubic": cubic,
        "triangle_free": not has_triangle(g),
        "three_connected": is_3_connected(g),
        "cyclically_4_edge_connected": cyclically_4_edge_connected(g) if cubic else None,
        "light_pair": None if light is None else [light.small.length, light.large.length],
        "face_lengths": sorted(f.length for f in g.faces),
    }


@dataclass
class CorpusEntry:
    id: str
    graph: PlanarGraph
    meta: dict[str, Any] = field(default_factory=dict)


def corpus(
    sizes: Sequence[int],
    count: int,
    seed: int,
    *,
    include_tight: bool = False,
    include_gadget: bool = False,
) -> list[CorpusEntry]:
    """Reproducible labeled corpus; sizes are drawn from ``sizes`` with ``seed``."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.choice(list(sizes))
        sub = rng.getrandbits(32)
        g = random_cubic_planar(n, GenSeed(sub))
        meta = describe(g) | {"seed": sub, "source": "expansion"}
        out.append(CorpusEntry(f"s{seed}-{i:04d}-n{n}", g, meta))
    if include_tight:
        g = wegner_tight()
        out.append(CorpusEntry("wegner-tight", g, describe(g) | {"source": "wegner_tight"}))
    if include_gadget:
        g = prism_gadget()
        out.append(CorpusEntry("prism-gadget", g, describe(g) | {"source": "prism_gadget"}))
    return out


def isomorphic(g: PlanarGraph, h: PlanarGraph) -> bool:
    """Brute-force abstract-graph isomorphism; only for tiny graphs."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    he = set(h.edges)
    for perm in permutations(range(h.n)):
        if all(tuple(sorted((perm[u], perm[v]))) in he for u, v in g.edges):
            return True
    return False

