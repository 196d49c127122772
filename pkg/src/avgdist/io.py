"""Edge-list and graph6 readers/writers."""

from __future__ import annotations

import json
from pathlib import Path

from .graph import Graph, GraphError, build_graph


class FormatError(ValueError):
    pass


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise FormatError("edge list is empty")
    try:
        header = [int(x) for x in rows[0]]
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise FormatError(f"malformed edge list: {exc}") from None
    if len(header) != 2:
        raise FormatError("edge list header must be 'n m'")
    n, m = header
    if len(pairs) != m:
        raise FormatError(f"header announces {m} edges, found {len(pairs)}")
    try:
        return build_graph(n, pairs)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def _encode_n(n: int) -> list[int]:
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in range(30, -1, -6)]


def to_graph6(g: Graph) -> str:
    """graph6 string (no header): upper triangle in column order, 6 bits/byte."""
    bits = []
    for v in range(1, g.n):
        nbrs = g.adj_sets[v]
        bits.extend(1 if u in nbrs else 0 for u in range(v))
    bits.extend([0] * (-len(bits) % 6))
    data = _encode_n(g.n)
    for i in range(0, len(bits), 6):
        chunk = 0
        for b in bits[i:i + 6]:
            chunk = (chunk << 1) | b
        data.append(chunk)
    return "".join(chr(x + 63) for x in data)


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty graph6 string")
    vals = [ord(ch) - 63 for ch in s]
    if any(not 0 <= x <= 63 for x in vals):
        raise FormatError("graph6 string has characters outside '?'..'~'")
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    elif len(vals) >= 8:
        n = 0
        for x in vals[2:8]:
            n = (n << 6) | x
        body = vals[8:]
    else:
        raise FormatError("truncated graph6 size field")
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {(need + 5) // 6}")
    bits = [(x >> s) & 1 for x in body for s in range(5, -1, -1)]
    edges, k = [], 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return build_graph(n, edges)


def read_graph_file(path: str | Path, fmt: str | None = None) -> Graph:
    """Read a graph file; the format is guessed from content unless given."""
    text = Path(path).read_text()
    if fmt is None:
        fmt = sniff_format(text)
    if fmt == "g6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise FormatError("graph6 file must hold exactly one graph")
        return from_graph6(lines[0])
    if fmt == "edges":
        return read_edge_list(text)
    raise FormatError(f"unknown graph format {fmt!r}")


def sniff_format(text: str) -> str:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            parts = line.split()
            return "edges" if all(p.lstrip("-").isdigit() for p in parts) else "g6"
    raise FormatError("graph file is empty")


def write_graph_file(g: Graph, path: str | Path, fmt: str = "g6",
                     labels: dict | None = None) -> None:
    """Write ``g``; ``labels`` (e.g. chain labels) go to a ``.labels.json`` sidecar."""
    path = Path(path)
    path.write_text(to_graph6(g) + "\n" if fmt == "g6" else write_edge_list(g))
    if labels is not None:
        sidecar = path.with_name(path.name + ".labels.json")
        sidecar.write_text(json.dumps(labels, indent=2) + "\n")
