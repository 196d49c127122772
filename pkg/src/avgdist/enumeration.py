"""Exhaustive enumeration of labelled connected graphs on few vertices.

Graph ``mask`` bit ``i`` is the ``i``-th vertex pair in graph6 column order
(``(0,1), (0,2), (1,2), (0,3), ...``).  Besides the streaming generator there
is a vectorised table builder that computes Wiener indices and degree data
for every labelled graph at once with numpy bit operations.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .graph import Graph

MAX_N = 7
MAX_N_FORCED = 8


class EnumerationLimitError(ValueError):
    pass


def pair_list(n: int) -> list[tuple[int, int]]:
    return [(u, v) for v in range(1, n) for u in range(v)]


def _check_n(n: int, allow_n8: bool) -> None:
    cap = MAX_N_FORCED if allow_n8 else MAX_N
    if not 1 <= n <= cap:
        hint = " (n = 8 needs allow_n8)" if n == MAX_N_FORCED else ""
        raise EnumerationLimitError(f"enumeration supports 1 <= n <= {cap}, got {n}{hint}")


def _mask_connected(n: int, nbr: list[int]) -> bool:
    full = (1 << n) - 1
    reach = frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbr[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~reach
        reach |= frontier
    return reach == full


def enumerate_connected_graphs(n: int, allow_n8: bool = False) -> Iterator[Graph]:
    """Yield every connected labelled graph on ``n`` vertices, in mask order."""
    _check_n(n, allow_n8)
    pairs = pair_list(n)
    for mask in range(1 << len(pairs)):
        nbr = [0] * n
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                nbr[u] |= 1 << v
                nbr[v] |= 1 << u
        if _mask_connected(n, nbr):
            yield Graph(n, tuple(
                tuple(w for w in range(n) if nbr[v] >> w & 1) for v in range(n)
            ))


_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def _table_chunk(n: int, masks: np.ndarray) -> dict[str, np.ndarray]:
    pairs = pair_list(n)
    adj = [np.zeros(masks.shape, dtype=np.int64) for _ in range(n)]
    for i, (u, v) in enumerate(pairs):
        bit = (masks >> i) & 1
        adj[u] |= bit << v
        adj[v] |= bit << u
    full = (1 << n) - 1
    wiener = np.zeros(masks.shape, dtype=np.int64)
    connected = None
    for s in range(n):
        reach = np.full(masks.shape, 1 << s, dtype=np.int64)
        frontier = reach.copy()
        for d in range(1, n):
            nb = np.zeros(masks.shape, dtype=np.int64)
            for v in range(n):
                nb |= np.where((frontier >> v) & 1 == 1, adj[v], 0)
            new = nb & ~reach
            wiener += d * _POP8[new]
            reach |= new
            frontier = new
        if connected is None:
            connected = reach == full
    degs = np.stack([_POP8[a] for a in adj])
    tri_free = np.ones(masks.shape, dtype=bool)
    c4_free = np.ones(masks.shape, dtype=bool)
    for i, (u, v) in enumerate(pairs):
        common = _POP8[adj[u] & adj[v]]
        tri_free &= ~(((masks >> i) & 1 == 1) & (common > 0))
        c4_free &= common <= 1
    keep = connected
    edges = degs.sum(axis=0) // 2
    return {
        "mask": masks[keep],
        "wiener": wiener[keep] // 2,
        "min_degree": degs.min(axis=0)[keep],
        "max_degree": degs.max(axis=0)[keep],
        "edges": edges[keep],
        "triangle_free": tri_free[keep],
        "c4_free": c4_free[keep],
    }


def connected_graph_table(n: int, allow_n8: bool = False,
                          chunk: int = 1 << 21) -> dict[str, np.ndarray]:
    """Per-graph data for every connected labelled graph on ``n`` vertices.

    Keys: ``mask``, ``wiener``, ``min_degree``, ``max_degree``, ``edges``,
    ``triangle_free``, ``c4_free`` (parallel arrays in mask order).
    """
    _check_n(n, allow_n8)
    total = 1 << (n * (n - 1) // 2)
    parts = []
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        parts.append(_table_chunk(n, masks))
    return {k: np.concatenate([p[k] for p in parts]) for k in parts[0]}


def graph_from_mask(n: int, mask: int) -> Graph:
    nbr: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(pair_list(n)):
        if mask >> i & 1:
            nbr[u].append(v)
            nbr[v].append(u)
    return Graph(n, tuple(tuple(sorted(a)) for a in nbr))
