"""File formats: ``.rot`` rotation systems, graph6, coloring and report JSON."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .errors import Graph6Error, InputViolation, RotParseError
from .graph import GraphLike, PlanarGraph, SimpleGraph, from_rotation
from .solver import PaletteColoring


def parse_rot(text: str) -> PlanarGraph:
    """Parse ``.rot`` text: ``n`` on the first line, then ``i: a b c`` per vertex.

    Neighbors are listed clockwise and 0-indexed; ``#`` starts a comment.
    Vertices without a line are isolated.
    """
    n = None
    rot: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise RotParseError(lineno, f"expected vertex count, got {line!r}") from None
            if n < 0:
                raise RotParseError(lineno, "vertex count is negative")
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise RotParseError(lineno, "expected 'i: neighbors'")
        try:
            v = int(head)
            nbrs = [int(t) for t in rest.split()]
        except ValueError:
            raise RotParseError(lineno, f"non-integer token in {line!r}") from None
        if not 0 <= v < n:
            raise RotParseError(lineno, f"vertex {v} out of range 0..{n - 1}")
        if v in rot:
            raise RotParseError(lineno, f"vertex {v} listed twice")
        bad = [u for u in nbrs if not 0 <= u < n]
        if bad:
            raise RotParseError(lineno, f"neighbor {bad[0]} out of range 0..{n - 1}")
        rot[v] = nbrs
    if n is None:
        raise RotParseError(1, "empty file")
    return from_rotation([rot.get(v, []) for v in range(n)])


def format_rot(g: PlanarGraph) -> str:
    lines = [str(g.n)]
    lines += [f"{v}: {' '.join(map(str, r))}".rstrip() for v, r in enumerate(g.rot)]
    return "\n".join(lines) + "\n"


def _g6_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 4 and data[1] != 126:
        return ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63), 4
    if len(data) >= 8:
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    raise Graph6Error("truncated graph6 size field")


def parse_graph6(s: str) -> SimpleGraph:
    """Decode one graph6 line (the optional ``>>graph6<<`` header is accepted)."""
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii")
    if any(not 63 <= b <= 126 for b in data):
        raise Graph6Error("graph6 bytes must lie in 63..126")
    n, off = _g6_size(data)
    bits = []
    for b in data[off:]:
        x = b - 63
        bits.extend((x >> (5 - i)) & 1 for i in range(6))
    need = n * (n - 1) // 2
    if len(bits) < need or len(data) - off != (need + 5) // 6:
        raise Graph6Error(f"expected {(need + 5) // 6} data bytes for n={n}, got {len(data) - off}")
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return SimpleGraph.from_edges(n, edges)


def format_graph6(g: GraphLike) -> str:
    n = g.n
    if n < 63:
        head = [n + 63]
    elif n < 258048:
        head = [126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)]
    else:
        head = [126, 126] + [63 + ((n >> s) & 63) for s in range(30, -1, -6)]
    bits = [int(g.has_edge(u, v)) for v in range(1, n) for u in range(v)]
    bits += [0] * (-len(bits) % 6)
    body = [63 + int("".join(map(str, bits[i : i + 6])), 2) for i in range(0, len(bits), 6)]
    return bytes(head + body).decode("ascii")


def load_graph(path: str | Path) -> GraphLike:
    """``.g6``/``.graph6`` files give an abstract graph; anything else is ``.rot``."""
    p = Path(path)
    text = p.read_text()
    if p.suffix in (".g6", ".graph6"):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise Graph6Error(f"expected one graph6 line, found {len(lines)}")
        return parse_graph6(lines[0])
    return parse_rot(text)


def graph_hash(g: GraphLike) -> str:
    """SHA-256 over the rotation system (or the edge list for abstract graphs)."""
    if isinstance(g, PlanarGraph):
        payload = format_rot(g)
    else:
        payload = f"{g.n}\n" + "\n".join(f"{u} {v}" for u, v in g.edges) + "\n"
    return hashlib.sha256(payload.encode()).hexdigest()


def coloring_document(g: GraphLike, pal: PaletteColoring) -> dict[str, Any]:
    return {"graph_hash": graph_hash(g), "n": g.n, "coloring": pal.to_json()}


def read_coloring(doc: dict[str, Any]) -> tuple[PaletteColoring, str | None]:
    """Coloring rows from a coloring document or run report, plus its graph hash."""
    if "coloring" not in doc:
        raise InputViolation("document has no 'coloring' field")
    n = doc.get("n")
    return PaletteColoring.from_json(doc["coloring"], n), doc.get("graph_hash")


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_corpus_entry(directory: str | Path, entry_id: str, g: PlanarGraph, meta: dict[str, Any]) -> Path:
    """Write ``<id>.rot`` and its ``<id>.json`` metadata sidecar."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    rot_path = d / f"{entry_id}.rot"
    rot_path.write_text(format_rot(g))
    side = dict(meta, id=entry_id, graph_hash=graph_hash(g))
    (d / f"{entry_id}.json").write_text(dump_json(side))
    return rot_path
