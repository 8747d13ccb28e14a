from __future__ import annotations

import os
import subprocess
import sys
from itertools import product

import numpy as np
import pytest

from wegner7 import kernels
from wegner7._accel import HAS_NUMBA
from wegner7.generators import random_cubic_planar
from wegner7.graph import square


def random_adj(rnd: np.random.Generator, n: int, p: float) -> np.ndarray:
    upper = np.triu(rnd.random((n, n)) < p, 1)
    return (upper | upper.T).astype(np.uint8)


def test_both_paths_exist():
    for fn in (kernels.square_matrix, kernels.kcolor_search, kernels.decomp_search,
               kernels.forbidden_rows, kernels.dangerous_rows_by_definition):
        assert callable(fn.py_func)


def test_square_matrix_equivalence():
    rnd = np.random.default_rng(0)
    for _ in range(30):
        adj = random_adj(rnd, int(rnd.integers(1, 15)), 0.3)
        fast = kernels.square_matrix(adj)
        slow = kernels.square_matrix.py_func(adj)
        ref = ((adj.astype(int) @ adj.astype(int) + adj) > 0).astype(np.uint8)
        np.fill_diagonal(ref, 0)
        assert np.array_equal(fast, slow) and np.array_equal(fast, ref)


def test_kcolor_equivalence():
    rnd = np.random.default_rng(1)
    for _ in range(40):
        n = int(rnd.integers(1, 11))
        adj = random_adj(rnd, n, 0.45)
        pre = np.full(n, -1, dtype=np.int64)
        for k in (2, 3, 4):
            a = kernels.kcolor_search(adj, k, pre, 1_000_000)
            b = kernels.kcolor_search.py_func(adj, k, pre, 1_000_000)
            assert a[0] == b[0] and np.array_equal(a[1], b[1]) and a[2] == b[2]


def test_decomp_equivalence():
    from wegner7.solver import _base_domain, _path_arrays, _search_order, boundary_candidates
    from wegner7.precolor import check_conditions, constraint_paths

    for seed in range(6):
        g = random_cubic_planar(12, seed)
        att = next(a for a in boundary_candidates(g) if check_conditions(a.host, a.spec).ok)
        dom = _base_domain(att.host, att.spec)
        order = _search_order(att.host, att.spec, dom)
        arr, ptr, idx = _path_arrays(att.host.n, constraint_paths(att.host, att.spec))
        args = (square(att.host).matrix(), dom, order, arr, ptr, idx, 1_000_000, True)
        a = kernels.decomp_search(*args)
        b = kernels.decomp_search.py_func(*args)
        assert a[0] == b[0] == kernels.FOUND
        assert np.array_equal(a[1], b[1]) and a[2] == b[2]


@pytest.mark.parametrize("length", [4, 5, 7])
def test_cycle_predicates_equivalence(length):
    rows = np.array(list(product((0, 1, 2), repeat=length)), dtype=np.int8)
    assert np.array_equal(kernels.forbidden_rows(rows), kernels.forbidden_rows.py_func(rows))
    assert np.array_equal(
        kernels.dangerous_rows_by_definition(rows),
        kernels.dangerous_rows_by_definition.py_func(rows),
    )


def test_node_limit_reports_over_budget():
    adj = square(random_cubic_planar(20, 3)).matrix()
    pre = np.full(adj.shape[0], -1, dtype=np.int64)
    status, _, nodes = kernels.kcolor_search(adj, 3, pre, 1)
    assert status in (kernels.OVER_BUDGET, kernels.EXHAUSTED)


def test_numpy_fallback_in_subprocess():
    env = dict(os.environ, WEGNER7_ACCEL="numpy")
    code = (
        "from wegner7._accel import HAS_NUMBA; from wegner7 import seven_color, generators as g;"
        "assert not HAS_NUMBA; print(seven_color(g.cube()).num_colors)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert int(out.stdout.strip()) <= 7


def test_numba_is_active_by_default():
    if os.environ.get("WEGNER7_ACCEL", "numba") == "numba":
        assert HAS_NUMBA
