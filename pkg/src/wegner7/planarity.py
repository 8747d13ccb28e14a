"""Planarity of abstract graphs by path addition (Demoucron, Malgrange, Pertuiset).

The graph is split into biconnected blocks; each block is grown from a cycle
by repeatedly embedding a path of some fragment into a face that holds all of
the fragment's attachment vertices. Quadratic per block, which is plenty for
the square-graphs handled here.
"""

from __future__ import annotations

from collections import deque

from .graph import GraphLike, SimpleGraph


def biconnected_blocks(g: GraphLike) -> list[list[tuple[int, int]]]:
    """Edge sets of the biconnected components (iterative Hopcroft-Tarjan)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    blocks = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        estack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(sorted(g.neighbors(root))))]
        while stack:
            v, parent, it = stack[-1]
            w = next(it, None)
            if w is not None:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    estack.append((v, w))
                    stack.append((w, v, iter(sorted(g.neighbors(w)))))
                elif w != parent and disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    block = []
                    while True:
                        e = estack.pop()
                        block.append(e)
                        if e == (parent, v):
                            break
                    blocks.append(block)
    return blocks


def _find_cycle(adj: dict[int, set[int]]) -> list[int]:
    # in a block, every edge lies on a cycle: walk around u-v by BFS from v
    u = min(adj)
    v = min(adj[u])
    prev = {v: None}
    q = deque([v])
    while q:
        x = q.popleft()
        for y in sorted(adj[x]):
            if (x == v and y == u) or y in prev:
                continue
            prev[y] = x
            if y == u:
                path = [u]
                while path[-1] != v:
                    path.append(prev[path[-1]])
                return path
            q.append(y)
    raise ValueError("block without a cycle")


def _block_is_planar(edges: list[tuple[int, int]]) -> bool:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    nv, ne = len(adj), len(edges)
    if nv <= 4 or ne <= 8:
        return True
    if ne > 3 * nv - 6:
        return False

    cycle = _find_cycle(adj)
    faces: list[list[int]] = [cycle[:], cycle[::-1]]
    emb_v = set(cycle)
    emb_e = {frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))}

    while len(emb_e) < ne:
        fragments = []
        for u, v in edges:
            if u in emb_v and v in emb_v and frozenset((u, v)) not in emb_e:
                fragments.append(({u, v}, None, (u, v)))
        seen: set[int] = set()
        for s in adj:
            if s in emb_v or s in seen:
                continue
            comp = {s}
            q = deque([s])
            attach = set()
            while q:
                x = q.popleft()
                for y in adj[x]:
                    if y in emb_v:
                        attach.add(y)
                    elif y not in comp:
                        comp.add(y)
                        q.append(y)
            seen |= comp
            fragments.append((attach, comp, None))

        choice = None
        for attach, comp, edge in fragments:
            ok = [i for i, f in enumerate(faces) if attach <= set(f)]
            if not ok:
                return False
            if choice is None or len(ok) == 1:
                choice = (attach, comp, edge, ok[0])
                if len(ok) == 1:
                    break
        attach, comp, edge, fi = choice

        if edge is not None:
            path = list(edge)
        else:
            a = min(attach)
            starts = sorted(x for x in adj[a] if x in comp)
            prev = {starts[0]: a}
            q = deque([starts[0]])
            end = None
            while q and end is None:
                x = q.popleft()
                for y in sorted(adj[x]):
                    if y in emb_v:
                        if y != a:
                            end = (x, y)
                            break
                    elif y not in prev:
                        prev[y] = x
                        q.append(y)
            x, b = end
            path = [b, x]
            while path[-1] != a:
                path.append(prev[path[-1]])
            path.reverse()

        face = faces[fi]
        s, t = path[0], path[-1]
        i, j = face.index(s), face.index(t)
        k = len(face)
        side1 = [face[(i + d) % k] for d in range((j - i) % k + 1)]  # s .. t
        side2 = [face[(j + d) % k] for d in range((i - j) % k + 1)]  # t .. s
        inner = path[1:-1]
        faces[fi] = side1 + inner[::-1]
        faces.append(side2 + inner)
        emb_v.update(path)
        emb_e.update(frozenset((path[d], path[d + 1])) for d in range(len(path) - 1))
    return True


def is_planar(h: GraphLike) -> bool:
    """Standard planarity of an abstract graph."""
    if isinstance(h, SimpleGraph) and (h.n <= 4 or h.m <= 8):
        return True
    return all(_block_is_planar(b) for b in biconnected_blocks(h))
