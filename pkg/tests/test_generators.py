from __future__ import annotations

import pytest

from wegner7 import generators as gen
from wegner7.errors import BadN
from wegner7.graph import SimpleGraph, cyclically_4_edge_connected, has_triangle, is_3_connected, square
from wegner7.io import format_rot
from wegner7.oracle import chromatic_number, k_coloring


def test_gadget_shape():
    g = gen.prism_gadget()
    assert (g.n, g.m) == (7, 10)
    assert sorted(g.degrees()) == [2, 3, 3, 3, 3, 3, 3]
    assert square(g).edges == SimpleGraph.complete(7).edges


def test_subdivision_choice_is_immaterial():
    p = gen.prism()
    edges = gen.triangle_free_prism_edges(p)
    assert len(edges) == 3
    variants = [gen.subdivide(p, u, v) for u, v in edges]
    assert all(gen.isomorphic(variants[0], h) for h in variants[1:])


def test_tight_example():
    g = gen.wegner_tight()
    assert g.n == 14 and g.is_cubic()
    assert g.n - g.m + len(g.faces) == 2
    sq = square(g)
    assert chromatic_number(sq) == 7
    assert k_coloring(sq, 6) is None


def test_gadget_minus_a_vertex_needs_at_most_six():
    g = gen.prism_gadget()
    for v in range(g.n):
        sub, _ = g.relabel([u for u in range(g.n) if u != v])
        assert chromatic_number(square(sub)) <= 6


def test_k4_from_zero_expansions():
    g = gen.random_cubic_planar(4, 99)
    assert gen.isomorphic(g, gen.k4())


@pytest.mark.parametrize("n", [6, 8, 10, 12, 14, 16])
def test_random_graphs_are_3_connected_cubic(n):
    for seed in range(5):
        g = gen.random_cubic_planar(n, seed)
        assert g.n == n and g.is_cubic() and is_3_connected(g)
        assert g.n - g.m + len(g.faces) == 2


def test_bad_sizes():
    for n in (2, 7, 9):
        with pytest.raises(BadN):
            gen.random_cubic_planar(n, 0)
    with pytest.raises(BadN):
        gen.random_cubic_planar(10, gen.GenSeed(0, steps=2))


def test_corpus_is_deterministic():
    a = gen.corpus([8, 12, 16], 12, seed=5, include_tight=True)
    b = gen.corpus([8, 12, 16], 12, seed=5, include_tight=True)
    assert [e.id for e in a] == [e.id for e in b]
    assert [format_rot(e.graph) for e in a] == [format_rot(e.graph) for e in b]
    assert a[-1].id == "wegner-tight"


def test_corpus_metadata(small_corpus):
    kinds = set()
    for e in small_corpus:
        m = e.meta
        assert m["cubic"] and m["three_connected"]
        assert sum(m["light_pair"]) <= 11
        assert m["triangle_free"] == (not has_triangle(e.graph))
        assert m["cyclically_4_edge_connected"] == cyclically_4_edge_connected(e.graph)
        kinds.add(m["cyclically_4_edge_connected"])
    assert kinds == {True, False}


def test_gadget_inclusion_flag():
    ids = [e.id for e in gen.corpus([8], 2, seed=0, include_gadget=True)]
    assert ids[-1] == "prism-gadget"
