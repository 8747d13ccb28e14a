from __future__ import annotations

from collections import Counter
from itertools import permutations, product

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wegner7 import generators as gen
from wegner7.errors import AsymmetricRotation, DegreeTooLow, EulerViolation, NoLightPair, NotCubic, NotFacial
from wegner7.graph import (
    CycleRef,
    SimpleGraph,
    Turn,
    bridges,
    cyclically_4_edge_connected,
    facial_paths,
    from_rotation,
    is_3_connected,
    is_facial_path,
    light_face_pair,
    simple_cycles,
    square,
    turn_direction,
)

from .conftest import cycle_rotation


def face_lengths(g):
    return sorted(f.length for f in g.faces)


def bfs_square_edges(h):
    """Distance <= 2 pairs by plain BFS, independent of the matrix kernel."""
    out = set()
    for s in range(h.n):
        dist = {s: 0}
        frontier = [s]
        for d in (1, 2):
            nxt = []
            for v in frontier:
                for u in h.neighbors(v):
                    if u not in dist:
                        dist[u] = d
                        nxt.append(u)
            frontier = nxt
        out |= {(min(s, t), max(s, t)) for t, d in dist.items() if d > 0}
    return out


def test_k4_has_four_triangles():
    assert face_lengths(gen.k4()) == [3, 3, 3, 3]


def test_prism_faces():
    assert face_lengths(gen.prism()) == [3, 3, 4, 4, 4]


def test_cube_and_dodecahedron_faces():
    assert face_lengths(gen.cube()) == [4] * 6
    assert face_lengths(gen.dodecahedron()) == [5] * 12


def test_gadget_faces():
    assert face_lengths(gen.prism_gadget()) == [3, 3, 4, 5, 5]


def test_nonplanar_k4_rotations_rejected():
    # of the 2^4 rotation systems of K4, those with 4 face orbits are planar
    base = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]
    verdicts = Counter()
    for flips in product((False, True), repeat=4):
        rot = [r[::-1] if f else r for r, f in zip(base, flips)]
        g = from_rotation(rot, require_planar=False)
        try:
            from_rotation(rot)
            verdicts["planar"] += 1
            assert len(g.faces) == 4
        except EulerViolation:
            verdicts["other"] += 1
            assert len(g.faces) == 2
    assert verdicts["planar"] == 2 and verdicts["other"] == 14


def test_asymmetric_rotation():
    with pytest.raises(AsymmetricRotation):
        from_rotation([[1], []])


def test_face_walks_partition_darts(small_corpus):
    for e in small_corpus:
        g = e.graph
        darts = [d for f in g.faces for d in f.walk]
        assert len(darts) == len(set(darts)) == 2 * g.m
        assert g.n - g.m + len(g.faces) == 2


def test_square_small_cases():
    assert square(cycle_rotation(5)).m == 10
    path = SimpleGraph.from_edges(3, [(0, 1), (1, 2)])
    assert square(path).edges == ((0, 1), (0, 2), (1, 2))
    assert square(gen.prism_gadget()).m == 21


def test_square_matches_bfs(small_corpus):
    for e in small_corpus:
        sq = square(e.graph)
        assert set(sq.edges) == bfs_square_edges(e.graph)
        assert set(e.graph.edges) <= set(sq.edges)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9).flatmap(lambda n: st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20).map(lambda es: (n, es))))
def test_square_random_simple_graphs(data):
    n, raw = data
    edges = {(min(u, v), max(u, v)) for u, v in raw if u != v}
    h = SimpleGraph.from_edges(n, edges)
    ref = nx.power(nx.Graph(list(edges)), 2) if edges else nx.Graph()
    assert set(square(h).edges) == {(min(u, v), max(u, v)) for u, v in ref.edges}


def test_turns_on_prism_triangle():
    g = gen.prism()
    tri = next(f for f in g.faces if f.length == 3)
    u, v, w = tri.vertices
    assert turn_direction(g, (u, v, w)) is Turn.RIGHT
    assert turn_direction(g, (w, v, u)) is Turn.LEFT


def test_turn_reversal_everywhere(small_corpus):
    for e in small_corpus[:10]:
        g = e.graph
        for p in facial_paths(g, 3):
            a, b = turn_direction(g, p), turn_direction(g, p[::-1])
            assert {a, b} == {Turn.LEFT, Turn.RIGHT}


def test_turn_errors():
    g = gen.prism_gadget()
    v = next(x for x in range(g.n) if g.degree(x) == 2)
    a, b = g.neighbors(v)
    with pytest.raises(DegreeTooLow):
        turn_direction(g, (a, v, b))
    p = gen.prism()
    with pytest.raises(NotFacial):
        turn_direction(p, (0, 2, 0))


def test_facial_paths_prism():
    g = gen.prism()
    for u, v in g.edges:
        assert is_facial_path(g, (u, v))
    tri = next(f for f in g.faces if f.length == 3)
    assert is_facial_path(g, tri.vertices)
    # every 3-path of a cubic plane graph is facial; a 4-path around a vertex's
    # three faces is not
    non_facial = [
        (a, b, c, d)
        for a, b, c, d in permutations(range(6), 4)
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d)
        and not any(set((a, b, c, d)) <= set(f.vertices) for f in g.faces)
    ]
    assert non_facial
    assert not any(is_facial_path(g, p) for p in non_facial)


def test_facial_paths_listed_once():
    g = gen.cube()
    paths = facial_paths(g, 4)
    assert len(paths) == 24 and len({min(p, p[::-1]) for p in paths}) == len(paths)


def test_cyclic_connectivity():
    assert not cyclically_4_edge_connected(gen.prism())
    assert cyclically_4_edge_connected(gen.dodecahedron())
    assert cyclically_4_edge_connected(gen.k4())
    assert cyclically_4_edge_connected(gen.cube())
    with pytest.raises(NotCubic):
        cyclically_4_edge_connected(gen.prism_gadget())


def test_connectivity_helpers():
    assert bridges(gen.wegner_tight()) == [(6, 13)]
    assert is_3_connected(gen.cube()) and not is_3_connected(gen.wegner_tight())


def test_simple_cycles_vs_networkx(small_corpus):
    for e in small_corpus[:8]:
        g = e.graph
        ours = {c.canonical() for c in simple_cycles(g, 10)}
        ref = nx.simple_cycles(nx.Graph(list(g.edges)), length_bound=10)
        theirs = {CycleRef(tuple(c)).canonical() for c in ref if len(c) >= 3}
        assert ours == theirs


def test_light_pair_examples():
    cube = light_face_pair(gen.cube())
    assert (cube.small.length, cube.large.length) == (4, 4)
    dod = light_face_pair(gen.dodecahedron())
    assert (dod.small.length, dod.large.length) == (5, 5)
    trunc = light_face_pair(gen.truncated_octahedron())
    assert (trunc.small.length, trunc.large.length) == (4, 6)


def test_light_pair_is_minimal(small_corpus):
    for e in small_corpus:
        g = e.graph
        pair = light_face_pair(g)
        best = min(
            g.faces[g.dart_face[(u, v)]].length + g.faces[g.dart_face[(v, u)]].length
            for u, v in g.edges
        )
        assert pair.small.length + pair.large.length == best <= 11
        assert pair.small.length <= pair.large.length
        assert set(pair.edge) <= set(pair.small.vertices) & set(pair.large.vertices)


def test_no_light_pair_on_a_long_cycle():
    # two 12-faces only: nothing with total length <= 11
    with pytest.raises(NoLightPair):
        light_face_pair(cycle_rotation(12))
