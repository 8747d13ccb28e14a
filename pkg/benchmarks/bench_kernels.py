"""Compiled vs. uncompiled kernels on typical workloads.

    python benchmarks/bench_kernels.py [--repeat 5] [--quick]

Each row times the numba build of a kernel and its ``.py_func`` on the same
inputs and checks that both return the same result.
"""

from __future__ import annotations

import argparse
import itertools
import time

import numpy as np

from wegner7 import kernels
from wegner7._accel import HAS_NUMBA
from wegner7.generators import random_cubic_planar
from wegner7.graph import CycleRef, face_pairs, square
from wegner7.precolor import BoundarySpec, Kind, constraint_paths
from wegner7.solver import _base_domain, _path_arrays, _search_order


def best_of(fn, args, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def decomp_inputs(n, seed):
    g = random_cubic_planar(n, seed)
    pair = face_pairs(g)[0]
    x, y = pair.edge
    host = g.delete_edge(x, y)
    want = set(pair.small.vertices) | set(pair.large.vertices)
    walk = next(f for f in host.faces if f.is_cycle and set(f.vertices) == want)
    r0 = sorted(set(host.neighbors(x)) - {y})[0]
    spec = BoundarySpec(CycleRef(walk.vertices), r0=r0, kind=Kind.FOUR)
    dom = _base_domain(host, spec)
    order = _search_order(host, spec, dom)
    arr, ptr, idx = _path_arrays(host.n, constraint_paths(host, spec))
    return (square(host).matrix(), dom, order, arr, ptr, idx, 10_000_000, True)


def workloads(quick):
    n = 24 if quick else 40
    g = random_cubic_planar(n, 1)
    yield "square_matrix", kernels.square_matrix, (g.matrix(),)
    h = square(random_cubic_planar(16 if quick else 20, 2)).matrix()
    pre = np.full(h.shape[0], -1, dtype=np.int64)
    yield "kcolor_search k=7", kernels.kcolor_search, (h, 7, pre, 10_000_000)
    yield "kcolor_search k=4", kernels.kcolor_search, (h, 4, pre, 10_000_000)
    yield "decomp_search", kernels.decomp_search, decomp_inputs(16 if quick else 24, 3)
    length = 7 if quick else 9
    marks = np.array(list(itertools.product((0, 1, 2), repeat=length)), dtype=np.int64)
    yield "dangerous_rows", kernels.dangerous_rows_by_definition, (marks,)


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args()
    if not HAS_NUMBA:
        print("numba inactive (WEGNER7_ACCEL=numpy or not installed); both columns run Python")
    print(f"{'kernel':<20} {'numba ms':>10} {'python ms':>10} {'speedup':>8} {'match':>6}")
    for name, fn, inputs in workloads(args.quick):
        fn(*inputs)  # compile outside the timed region
        t_nb, out_nb = best_of(fn, inputs, args.repeat)
        t_py, out_py = best_of(fn.py_func, inputs, max(1, args.repeat // 2))
        print(f"{name:<20} {t_nb * 1e3:>10.3f} {t_py * 1e3:>10.3f} {t_py / t_nb:>7.1f}x {str(same(out_nb, out_py)):>6}")


if __name__ == "__main__":
    main()
