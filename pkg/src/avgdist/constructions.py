"""Generators for the graph families: basic graphs, block chains and polarity graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .gf import make_field, orthogonal, prime_power, projective_points
from .graph import (
    Graph,
    GraphError,
    _bfs,
    build_graph,
    degree_stats,
    disjoint_union,
    induced_subgraph,
    is_connected,
    structural_predicates,
)


class ConstructionError(GraphError):
    """Parameters outside a family's preconditions, or a failed self-audit."""


@dataclass(frozen=True)
class ChainLabels:
    """Block membership and connector vertices of a chain construction.

    ``block_of[v]`` is the 1-based block index of vertex ``v``; ``connectors``
    lists ``(u_i, v_i)`` per block.  In ``c4_chain`` the first block's ``u``
    entry is None.
    """

    block_of: tuple[int, ...]
    connectors: tuple[tuple[int | None, int], ...]
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def num_blocks(self) -> int:
        return len(self.connectors)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.connectors]
        for v, b in enumerate(self.block_of):
            out[b - 1].append(v)
        return out

    def to_dict(self) -> dict:
        d = {
            "block_of": list(self.block_of),
            "connectors": [list(c) for c in self.connectors],
        }
        d.update(self.extra)
        return d


# -- basic families ------------------------------------------------------

def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ConstructionError(f"cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}; vertices 0..a-1 form the first side."""
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(n: int) -> Graph:
    """Star on ``n`` vertices centred at 0."""
    return build_graph(n, [(0, i) for i in range(1, n)])


def double_star(a: int, b: int) -> Graph:
    """Centres 0 and 1 joined, with ``a`` and ``b`` leaves respectively."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + j) for j in range(b)]
    return build_graph(2 + a + b, edges)


_BASIC = {
    "path": (path, 1),
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "star": (star, 1),
    "double_star": (double_star, 2),
}


def basic_graph(kind: str, *sizes: int) -> Graph:
    try:
        fn, arity = _BASIC[kind]
    except KeyError:
        raise ConstructionError(f"unknown graph family {kind!r}") from None
    if len(sizes) != arity:
        raise ConstructionError(f"{kind} takes {arity} size(s), got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ConstructionError(f"{kind} sizes must be positive, got {sizes}")
    return fn(*sizes)


# -- chains --------------------------------------------------------------

def _chain(blocks: list[Graph], ports: list[tuple[int, int]],
           drop_interior: bool) -> tuple[Graph, ChainLabels]:
    """Join blocks by edges v_i u_{i+1}; optionally delete u_i v_i for interior blocks."""
    union, offsets = disjoint_union(blocks)
    ell = len(blocks)
    conn = [(ports[i][0] + offsets[i], ports[i][1] + offsets[i]) for i in range(ell)]
    edges = set(union.edges())
    if drop_interior:
        for i in range(1, ell - 1):
            u, v = conn[i]
            edges.discard((min(u, v), max(u, v)))
    for i in range(ell - 1):
        a, b = conn[i][1], conn[i + 1][0]
        edges.add((min(a, b), max(a, b)))
    g = build_graph(union.n, sorted(edges))
    block_of = []
    for i, h in enumerate(blocks):
        block_of.extend([i + 1] * h.n)
    return g, ChainLabels(tuple(block_of), tuple(conn))


def _audit_degrees(g: Graph, delta: int, Delta: int, name: str, exact_min: bool = True) -> None:
    mn, mx, _ = degree_stats(g)
    if mx != Delta or (mn != delta if exact_min else mn < delta):
        want = f"= {delta}" if exact_min else f">= {delta}"
        raise ConstructionError(
            f"{name} audit failed: degrees span [{mn}, {mx}], expected min {want} and max = {Delta}"
        )
    if not is_connected(g):
        raise ConstructionError(f"{name} audit failed: graph is disconnected")


def clique_chain_length(n: int, Delta: int, delta: int) -> int:
    """Number of blocks; raises when (n, Delta, delta) is not admissible."""
    if delta < 3 or Delta < delta:
        raise ConstructionError(f"clique chain needs Delta >= delta >= 3, got Delta={Delta}, delta={delta}")
    if n < Delta + delta + 1:
        raise ConstructionError(f"clique chain needs n >= Delta + delta + 1 = {Delta + delta + 1}, got {n}")
    if (n - Delta) % (delta + 1):
        raise ConstructionError(f"clique chain needs n - Delta = {n - Delta} divisible by delta + 1 = {delta + 1}")
    return (n - Delta + delta + 1) // (delta + 1)


def clique_chain(n: int, Delta: int, delta: int) -> tuple[Graph, ChainLabels]:
    """K_Delta followed by copies of K_{delta+1} in a chain.

    The edge u_i v_i is removed in every interior block and v_i u_{i+1} joins
    consecutive blocks; u_i, v_i are the two lowest labels of block i.  The
    result is audited; with Delta == delta the first block is too small to
    reach minimum degree delta and the audit rejects it.
    """
    ell = clique_chain_length(n, Delta, delta)
    blocks = [complete(Delta)] + [complete(delta + 1) for _ in range(ell - 1)]
    g, labels = _chain(blocks, [(0, 1)] * ell, drop_interior=True)
    _audit_degrees(g, delta, Delta, f"clique_chain({n}, {Delta}, {delta})")
    return g, labels


def bipartite_chain_length(n: int, Delta: int, delta: int) -> int:
    if delta < 3 or Delta < delta:
        raise ConstructionError(f"bipartite chain needs Delta >= delta >= 3, got Delta={Delta}, delta={delta}")
    if n < Delta + 3 * delta:
        raise ConstructionError(f"bipartite chain needs n >= Delta + 3 delta = {Delta + 3 * delta}, got {n}")
    if (n - Delta - delta) % (2 * delta):
        raise ConstructionError(
            f"bipartite chain needs n - Delta - delta = {n - Delta - delta} divisible by 2 delta = {2 * delta}"
        )
    return (n - Delta + delta) // (2 * delta)


def bipartite_chain(n: int, Delta: int, delta: int) -> tuple[Graph, ChainLabels]:
    """K_{delta,Delta} followed by copies of K_{delta,delta} in a chain.

    In every block u_i is the lowest label (on the delta-side, so u_1 has
    degree Delta) and v_i is its lowest-labelled neighbour.
    """
    ell = bipartite_chain_length(n, Delta, delta)
    blocks = [complete_bipartite(delta, Delta)] + [complete_bipartite(delta, delta) for _ in range(ell - 1)]
    g, labels = _chain(blocks, [(0, delta)] * ell, drop_interior=True)
    name = f"bipartite_chain({n}, {Delta}, {delta})"
    _audit_degrees(g, delta, Delta, name)
    if not structural_predicates(g)[0]:
        raise ConstructionError(f"{name} audit failed: contains a triangle")
    return g, labels


# -- polarity graphs -------------------------------------------------------

def polarity_graph(q: int) -> Graph:
    """H_q: projective points of GF(q)^3, adjacent when orthogonal (no loops)."""
    f = make_field(q)
    pts = projective_points(f)
    edges = [(i, j) for i, j in combinations(range(len(pts)), 2) if orthogonal(pts[i], pts[j])]
    return build_graph(len(pts), edges)


def modified_polarity_graph(q: int) -> tuple[Graph, int, int]:
    """H_q' with its two port vertices ``(u, v)`` (labels in the new graph).

    z is the lowest-labelled vertex of degree q, u and v its two lowest
    neighbours; z is deleted along with every edge joining N(u) to N(v).
    The claimed properties are re-verified before returning.
    """
    if prime_power(q) is None:
        raise ConstructionError(f"{q} is not a prime power")
    if q < 3:
        raise ConstructionError(f"modified polarity graph needs q >= 3, got {q}")
    h = polarity_graph(q)
    z = next(v for v in range(h.n) if h.degree(v) == q)
    u, v = h.adj[z][:2]
    nu, nv = h.adj_sets[u], h.adj_sets[v]
    edges = [
        (a, b) for a, b in h.edges()
        if z not in (a, b) and not ((a in nu and b in nv) or (a in nv and b in nu))
    ]
    pruned = build_graph(h.n, edges)
    g, index = induced_subgraph(pruned, [x for x in range(h.n) if x != z])
    u2, v2 = index[u], index[v]

    name = f"modified_polarity_graph({q})"
    mn, _, _ = degree_stats(g)
    d = _bfs(g.adj, u2)
    problems = []
    if g.n != q * q + q:
        problems.append(f"order {g.n} != {q * q + q}")
    if mn < q - 1:
        problems.append(f"min degree {mn} < {q - 1}")
    if not structural_predicates(g)[1]:
        problems.append("contains C4")
    if -1 in d:
        problems.append("disconnected")
    elif d[v2] < 4:
        problems.append(f"d(u, v) = {d[v2]} < 4")
    if problems:
        raise ConstructionError(f"{name} audit failed: " + "; ".join(problems))
    return g, u2, v2


def c4_chain(k: int, ell: int, q: int) -> tuple[Graph, ChainLabels]:
    """G_{k,ell,q}: k copies of H_q glued at v_1, then ell-1 copies of H_q'.

    Vertex 0 is v_1.  Each H_q copy contributes its lowest-labelled vertex of
    degree q+1 to the identification.
    """
    pp = prime_power(q)
    if pp is None:
        raise ConstructionError(f"{q} is not a prime power")
    if q - 1 < 3:
        raise ConstructionError(f"c4 chain needs delta = q - 1 >= 3, got q={q}")
    if k < 1:
        raise ConstructionError(f"c4 chain needs k >= 1, got {k}")
    if ell < 2:
        raise ConstructionError(f"c4 chain needs ell >= 2, got {ell}")

    hq = polarity_graph(q)
    glue = next(v for v in range(hq.n) if hq.degree(v) == q + 1)
    hmod, pu, pv = modified_polarity_graph(q)

    # first block: vertex 0 is the identified vertex
    relabel = {glue: 0}
    rest = [x for x in range(hq.n) if x != glue]
    edges: list[tuple[int, int]] = []
    base = 1
    for _ in range(k):
        local = dict(relabel)
        for i, x in enumerate(rest):
            local[x] = base + i
        edges.extend((local[a], local[b]) for a, b in hq.edges())
        base += len(rest)
    block_of = [1] * base
    connectors: list[tuple[int | None, int]] = [(None, 0)]

    for i in range(2, ell + 1):
        edges.extend((a + base, b + base) for a, b in hmod.edges())
        connectors.append((pu + base, pv + base))
        block_of.extend([i] * hmod.n)
        base += hmod.n
    for i in range(ell - 1):
        edges.append((connectors[i][1], connectors[i + 1][0]))

    g = build_graph(base, edges)
    n_expected = (k + ell - 1) * (q * q + q) + 1
    Delta = k * (q + 1) + 1
    name = f"c4_chain({k}, {ell}, {q})"
    if g.n != n_expected:
        raise ConstructionError(f"{name} audit failed: order {g.n} != {n_expected}")
    _audit_degrees(g, q - 1, Delta, name, exact_min=False)
    if not structural_predicates(g)[1]:
        raise ConstructionError(f"{name} audit failed: contains C4")
    labels = ChainLabels(tuple(block_of), tuple(connectors), {"k": k, "ell": ell, "q": q})
    return g, labels


def chain_edges_between_blocks(g: Graph, labels: ChainLabels) -> list[tuple[int, int]]:
    return [(a, b) for a, b in g.edges() if labels.block_of[a] != labels.block_of[b]]
