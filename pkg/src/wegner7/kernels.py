"""Hot inner loops: squaring, exact k-coloring, decomposition search.

Each kernel is written in the numba-compatible subset of Python and wrapped
by :func:`wegner7._accel.kernel`; with ``WEGNER7_ACCEL=numpy`` the same source
runs uncompiled. All kernels take dense ``uint8`` adjacency matrices, which is
the right trade-off for graphs of at most a few dozen vertices.
"""

from __future__ import annotations

import numpy as np

from ._accel import kernel

FOUND = 1
EXHAUSTED = 0
OVER_BUDGET = -1

RED = 0  # value code used by decomposition search; 1..3 are blue colors


@kernel
def square_matrix(adj):
    """Adjacency of G^2 from the adjacency of G."""
    n = adj.shape[0]
    out = np.zeros((n, n), dtype=np.uint8)
    for u in range(n):
        for v in range(n):
            if adj[u, v]:
                out[u, v] = 1
                for w in range(n):
                    if adj[v, w] and w != u:
                        out[u, w] = 1
    return out


@kernel
def _saturation(counts, v, k):
    s = 0
    for c in range(k):
        if counts[v, c] > 0:
            s += 1
    return s


@kernel
def kcolor_search(adj, k, pre, node_limit):
    """Backtracking k-coloring with DSATUR vertex selection.

    ``pre[v]`` is a fixed color in ``0..k-1`` or -1. When nothing is
    precolored, a vertex may only open color ``max_used + 1``, which removes
    color-permutation symmetry. Returns ``(status, colors, nodes)``.
    """
    n = adj.shape[0]
    colors = np.full(n, -1, dtype=np.int64)
    if n == 0:
        return FOUND, colors, 0
    if k <= 0:
        return EXHAUSTED, colors, 0
    counts = np.zeros((n, k), dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for u in range(n):
            if adj[v, u]:
                deg[v] += 1
    symmetric = True
    for v in range(n):
        c = pre[v]
        if c >= 0:
            symmetric = False
            if c >= k:
                return EXHAUSTED, colors, 0
            for u in range(n):
                if adj[v, u] and colors[u] == c:
                    return EXHAUSTED, colors, 0
            colors[v] = c
            for u in range(n):
                if adj[v, u]:
                    counts[u, c] += 1

    stack_v = np.zeros(n, dtype=np.int64)
    stack_c = np.zeros(n, dtype=np.int64)
    stack_max = np.zeros(n, dtype=np.int64)
    max_used = -1
    depth = 0
    nodes = 0
    select = True
    while True:
        if select:
            best = -1
            best_sat = -1
            best_deg = -1
            for v in range(n):
                if colors[v] < 0:
                    s = _saturation(counts, v, k)
                    if s > best_sat or (s == best_sat and deg[v] > best_deg):
                        best = v
                        best_sat = s
                        best_deg = deg[v]
            if best < 0:
                return FOUND, colors, nodes
            stack_v[depth] = best
            stack_c[depth] = 0
            stack_max[depth] = max_used
            depth += 1
            select = False
        d = depth - 1
        v = stack_v[d]
        if colors[v] >= 0:
            old = colors[v]
            colors[v] = -1
            for u in range(n):
                if adj[v, u]:
                    counts[u, old] -= 1
            max_used = stack_max[d]
        c = stack_c[d]
        limit = k
        if symmetric and stack_max[d] + 2 < k:
            limit = stack_max[d] + 2
        while c < limit and counts[v, c] > 0:
            c += 1
        if c < limit:
            stack_c[d] = c + 1
            colors[v] = c
            for u in range(n):
                if adj[v, u]:
                    counts[u, c] += 1
            if c > max_used:
                max_used = c
            nodes += 1
            if node_limit > 0 and nodes > node_limit:
                return OVER_BUDGET, colors, nodes
            select = True
        else:
            depth -= 1
            if depth == 0:
                return EXHAUSTED, colors, nodes


@kernel
def decomp_search(sq, dom, order, paths, path_ptr, path_idx, node_limit, red_first):
    """Joint search over red / blue-1 / blue-2 / blue-3 for every vertex.

    ``dom[v]`` is a bitmask over values 0 (red) and 1..3 (blue colors).
    Vertices outside ``order`` must have a singleton domain. A path row of
    ``paths`` (padded with -1) is violated once all of its vertices are red;
    ``path_ptr``/``path_idx`` list the rows containing each vertex. Blue
    vertices adjacent in ``sq`` get distinct colors. Blue colors are opened
    in increasing order, which is sound because no vertex has a fixed color.
    Returns ``(status, values, nodes)``.
    """
    n = sq.shape[0]
    m = order.shape[0]
    values = np.full(n, -1, dtype=np.int64)
    in_order = np.zeros(n, dtype=np.uint8)
    for i in range(m):
        in_order[order[i]] = 1
    seq = np.zeros(4, dtype=np.int64)
    if red_first:
        seq[0] = 0
        seq[1] = 1
        seq[2] = 2
        seq[3] = 3
    else:
        seq[0] = 1
        seq[1] = 2
        seq[2] = 3
        seq[3] = 0

    # fixed vertices must be red; blue ones always carry a 3-way domain
    for v in range(n):
        if in_order[v] == 0:
            if dom[v] != 1:
                return EXHAUSTED, values, 0
            values[v] = 0
    for r in range(paths.shape[0]):
        bad = True
        for j in range(paths.shape[1]):
            u = paths[r, j]
            if u >= 0 and values[u] != 0:
                bad = False
        if bad:
            return EXHAUSTED, values, 0

    if m == 0:
        return FOUND, values, 0
    stack_next = np.zeros(m, dtype=np.int64)
    stack_max = np.zeros(m, dtype=np.int64)
    max_blue = 0
    depth = 0
    stack_next[0] = 0
    stack_max[0] = 0
    nodes = 0
    while True:
        v = order[depth]
        if values[v] >= 0:
            values[v] = -1
            max_blue = stack_max[depth]
        placed = False
        i = stack_next[depth]
        while i < 4:
            val = seq[i]
            i += 1
            if (dom[v] >> val) & 1 == 0:
                continue
            if val > 0 and val > max_blue + 1:
                continue
            ok = True
            if val > 0:
                for u in range(n):
                    if sq[v, u] and values[u] == val:
                        ok = False
                        break
            else:
                for t in range(path_ptr[v], path_ptr[v + 1]):
                    r = path_idx[t]
                    full = True
                    for j in range(paths.shape[1]):
                        u = paths[r, j]
                        if u >= 0 and u != v and values[u] != 0:
                            full = False
                            break
                    if full:
                        ok = False
                        break
            if ok:
                values[v] = val
                if val > max_blue:
                    max_blue = val
                placed = True
                break
        stack_next[depth] = i
        if placed:
            nodes += 1
            if node_limit > 0 and nodes > node_limit:
                return OVER_BUDGET, values, nodes
            depth += 1
            if depth == m:
                return FOUND, values, nodes
            stack_next[depth] = 0
            stack_max[depth] = max_blue
        else:
            if depth == 0:
                return EXHAUSTED, values, nodes
            depth -= 1


@kernel
def forbidden_rows(marks):
    """Forbidden-cycle test per row of cycle markings (0 red, 1 blue, 2 uncolored)."""
    rows, length = marks.shape
    out = np.zeros(rows, dtype=np.uint8)
    for r in range(rows):
        nonblue = 0
        for j in range(length):
            if marks[r, j] != 1:
                nonblue += 1
        if length % 3 != 0 and nonblue == 0:
            out[r] = 1
        elif length % 3 == 2 and nonblue == 1:
            out[r] = 1
    return out


@kernel
def dangerous_rows_by_definition(marks):
    """Dangerous-cycle test per row, by flipping each non-blue vertex in turn.

    A row that is already forbidden is not dangerous. Read literally, the flip
    rule would also accept a length 2 mod 3 cycle with one non-blue vertex,
    which contradicts the closed-form characterization.
    """
    rows, length = marks.shape
    out = np.zeros(rows, dtype=np.uint8)
    flipped = np.zeros((1, length), dtype=marks.dtype)
    for r in range(rows):
        for t in range(length):
            flipped[0, t] = marks[r, t]
        if forbidden_rows(flipped)[0] == 1:
            continue
        any_nonblue = False
        all_forbidden = True
        for j in range(length):
            if marks[r, j] == 1:
                continue
            any_nonblue = True
            for t in range(length):
                flipped[0, t] = marks[r, t]
            flipped[0, j] = 1
            if forbidden_rows(flipped)[0] == 0:
                all_forbidden = False
                break
        if any_nonblue and all_forbidden:
            out[r] = 1
    return out
