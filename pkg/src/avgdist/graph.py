"""Immutable simple graphs on vertices 0..n-1 and exact distance machinery."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Invalid graph input (bad vertex, self-loop, precondition failure)."""


class DisconnectedGraphError(GraphError):
    pass


class _Unreachable:
    """Distance sentinel for vertex pairs in different components.

    It deliberately supports no arithmetic or ordering, so any attempt to
    sum or compare an infinite distance raises ``TypeError``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Unreachable, ())


INF = _Unreachable()


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]

    @cached_property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if v > u:
                    yield (u, v)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True, order=True)
class EdgeRef:
    u: int
    v: int

    def __post_init__(self) -> None:
        if self.u >= self.v:
            raise GraphError(f"EdgeRef needs u < v, got ({self.u}, {self.v})")

    @classmethod
    def of(cls, a: int, b: int) -> "EdgeRef":
        return cls(min(a, b), max(a, b))

    def as_tuple(self) -> tuple[int, int]:
        return (self.u, self.v)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from an edge list, dropping duplicate edges."""
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def _bfs(adj: Sequence[Sequence[int]], source: int, limit: int | None = None) -> list[int]:
    # -1 marks unreachable (or beyond ``limit``)
    dist = [-1] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if limit is not None and dx >= limit:
            continue
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dx + 1
                queue.append(y)
    return dist


def multi_source_bfs(g: Graph, sources: Iterable[int]) -> list[int]:
    """Distance from every vertex to the nearest source; -1 if unreachable."""
    dist = [-1] * g.n
    queue = deque()
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def bfs_distances(g: Graph, source: int) -> list:
    """Unweighted distances from ``source``; unreachable vertices get ``INF``."""
    _check_vertex(g, source)
    return [d if d >= 0 else INF for d in _bfs(g.adj, source)]


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    dist: tuple[tuple, ...]

    def __getitem__(self, key: tuple[int, int]):
        u, v = key
        return self.dist[u][v]

    def max_finite(self) -> int:
        return max((d for row in self.dist for d in row if d is not INF), default=0)

    @property
    def connected(self) -> bool:
        return all(d is not INF for row in self.dist for d in row)


def distance_matrix(g: Graph) -> DistanceMatrix:
    # rows are independent; callers may build them in parallel from bfs_distances
    return DistanceMatrix(g.n, tuple(tuple(bfs_distances(g, s)) for s in range(g.n)))


def _int_distance_rows(g: Graph) -> list[list[int]]:
    """All-pairs distances as plain ints; raises on a disconnected graph."""
    rows = []
    for s in range(g.n):
        row = _bfs(g.adj, s)
        if -1 in row:
            raise DisconnectedGraphError("graph is disconnected")
        rows.append(row)
    return rows


def degree_stats(g: Graph) -> tuple[int, int, list[int]]:
    """Return ``(min_degree, max_degree, degrees)``."""
    if g.n < 1:
        raise GraphError("degree statistics need at least one vertex")
    degs = g.degrees()
    return min(degs), max(degs), degs


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return -1 not in _bfs(g.adj, 0)


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("graph is disconnected")


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``vertices``, relabelled in ascending order.

    Returns the subgraph and the map from old to new labels.
    """
    keep = sorted(set(vertices))
    for v in keep:
        _check_vertex(g, v)
    index = {v: i for i, v in enumerate(keep)}
    adj = tuple(tuple(index[w] for w in g.adj[v] if w in index) for v in keep)
    return Graph(len(keep), adj), index


def power_graph(g: Graph, k: int) -> Graph:
    """The k-th power: ``uv`` is an edge iff ``1 <= d(u, v) <= k``."""
    if k < 1:
        raise GraphError(f"power must be positive, got {k}")
    if k == 1:
        return g
    adj = []
    for s in range(g.n):
        d = _bfs(g.adj, s, limit=k)
        adj.append(tuple(v for v in range(g.n) if d[v] > 0))
    return Graph(g.n, tuple(adj))


def line_graph(g: Graph) -> tuple[Graph, list[EdgeRef]]:
    """Line graph plus the list mapping each of its vertices to an edge of ``g``.

    Vertices of the line graph follow the lexicographic edge order of ``g``.
    """
    edges = [EdgeRef(u, v) for u, v in g.edges()]
    if not edges:
        raise GraphError("line graph of an edgeless graph is empty")
    index = {e.as_tuple(): i for i, e in enumerate(edges)}
    nbrs: list[set[int]] = [set() for _ in edges]
    for v in range(g.n):
        incident = [index[(min(v, w), max(v, w))] for w in g.adj[v]]
        for a, b in combinations(incident, 2):
            nbrs[a].add(b)
            nbrs[b].add(a)
    return Graph(len(edges), tuple(tuple(sorted(s)) for s in nbrs)), edges


def edge_distance(g: Graph, e1: EdgeRef, e2: EdgeRef) -> int:
    """Smallest distance between an endpoint of ``e1`` and an endpoint of ``e2``."""
    for e in (e1, e2):
        if not g.has_edge(e.u, e.v):
            raise GraphError(f"{e.as_tuple()} is not an edge")
    dist = multi_source_bfs(g, e1.as_tuple())
    if dist[e2.u] < 0:
        raise DisconnectedGraphError("edges lie in different components")
    return min(dist[e2.u], dist[e2.v])


def structural_predicates(g: Graph) -> tuple[bool, bool]:
    """Return ``(triangle_free, c4_free)``.

    C4-freeness uses the common-neighbour criterion: every pair of vertices
    shares at most one neighbour.
    """
    sets = g.adj_sets
    triangle_free = all(not (sets[u] & sets[v]) for u, v in g.edges())
    seen: set[tuple[int, int]] = set()
    c4_free = True
    for w in range(g.n):
        for a, b in combinations(g.adj[w], 2):
            if (a, b) in seen:
                c4_free = False
                break
            seen.add((a, b))
        if not c4_free:
            break
    return triangle_free, c4_free


def second_neighborhood(g: Graph, v: int) -> set[int]:
    """Vertices at distance at most 2 from ``v`` (``v`` included)."""
    _check_vertex(g, v)
    d = _bfs(g.adj, v, limit=2)
    return {u for u in range(g.n) if d[u] >= 0}


def disjoint_union(graphs: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Disjoint union; returns the graph and each part's label offset."""
    offsets, adj, base = [], [], 0
    for h in graphs:
        offsets.append(base)
        adj.extend(tuple(w + base for w in nbrs) for nbrs in h.adj)
        base += h.n
    return Graph(base, tuple(adj)), offsets
