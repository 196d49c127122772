"""Run the packing / spanning-tree / weight-contraction argument on a concrete graph.

Each certificate records the objects built along the way and evaluates every
intermediate inequality of the upper-bound argument exactly.  Three variants:

* ``thm4``: any graph; distance-3 vertex packing, contraction ``T^3[A]``.
* ``thm5``: triangle-free graphs; distance-3 matching, contraction ``L^4[M]``
  of the line graph of the spanning tree.
* ``thm6``: C4-free graphs; distance-5 vertex packing, contraction ``T^5[A]``.

All choices break ties towards the lowest vertex label (or the
lexicographically least edge), so a run is a pure function of its input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bounds import BoundParams, epsilon, evaluate_bound
from .graph import (
    EdgeRef,
    Graph,
    GraphError,
    _bfs,
    _int_distance_rows,
    build_graph,
    degree_stats,
    induced_subgraph,
    is_connected,
    line_graph,
    multi_source_bfs,
    power_graph,
    require_connected,
    structural_predicates,
)
from .metrics import (
    WeightFunction,
    frac_decimal,
    frac_str,
    pairs,
    weighted_average_from_rows,
)

VARIANTS = ("thm4", "thm5", "thm6")


class HypothesisError(GraphError):
    """The input graph does not satisfy the theorem's hypotheses."""


class PipelineError(RuntimeError):
    """An internal invariant of the construction failed (should never happen)."""


@dataclass(frozen=True)
class PipelineOptions:
    tie_break: str = "lowest-index"
    record_internals: bool = True


# -- packings ------------------------------------------------------------------

def _first_max_degree_vertex(g: Graph) -> int:
    degs = g.degrees()
    top = max(degs)
    return degs.index(top)


def _greedy_vertex_packing(g: Graph, step: int) -> list[int]:
    require_connected(g)
    if g.n == 0:
        raise GraphError("packing of an empty graph")
    first = _first_max_degree_vertex(g)
    packing = [first]
    dist = _bfs(g.adj, first)
    while True:
        nxt = next((x for x in range(g.n) if dist[x] == step), None)
        if nxt is None:
            return packing
        packing.append(nxt)
        dist = [min(a, b) for a, b in zip(dist, _bfs(g.adj, nxt))]


def greedy_packing(g: Graph) -> list[int]:
    """Vertices pairwise at distance >= 3 covering every vertex within distance 2.

    Starts at the lowest-labelled maximum-degree vertex and repeatedly adds
    the lowest-labelled vertex at distance exactly 3 from the current set.
    """
    return _greedy_vertex_packing(g, 3)


def greedy_packing_c4(g: Graph) -> list[int]:
    """As :func:`greedy_packing` with distance 5 (pairwise >= 5, coverage radius 4)."""
    return _greedy_vertex_packing(g, 5)


def greedy_edge_packing(g: Graph) -> list[EdgeRef]:
    """Matching with pairwise edge distance >= 3 covering every edge within distance 2.

    The first edge is the lexicographically least edge at a maximum-degree
    vertex; then the least edge at edge distance exactly 3 is added until
    none is left.
    """
    require_connected(g)
    if g.edge_count == 0:
        raise GraphError("edge packing of an edgeless graph")
    degs = g.degrees()
    top = max(degs)
    edges = list(g.edges())
    first = next(e for e in edges if degs[e[0]] == top or degs[e[1]] == top)
    matching = [EdgeRef(*first)]
    dist = multi_source_bfs(g, first)
    while True:
        nxt = next((e for e in edges if min(dist[e[0]], dist[e[1]]) == 3), None)
        if nxt is None:
            return matching
        matching.append(EdgeRef(*nxt))
        dist = [min(a, b) for a, b in zip(dist, multi_source_bfs(g, nxt))]


# -- spanning tree -------------------------------------------------------------

def _balls(g: Graph, packing, variant: str) -> list[dict[int, int | None]]:
    """Per packing element: ball vertex -> tree parent (None for the roots)."""
    balls = []
    if variant == "thm4":
        for v in packing:
            ball = {v: None}
            ball.update({w: v for w in g.adj[v]})
            balls.append(ball)
    elif variant == "thm5":
        for e in packing:
            ball = {e.u: None, e.v: e.u}
            for w in g.adj[e.u]:
                ball.setdefault(w, e.u)
            for w in g.adj[e.v]:
                if w in ball and w not in (e.u, e.v):
                    raise PipelineError(f"edge {e.as_tuple()} lies in a triangle")
                ball.setdefault(w, e.v)
            balls.append(ball)
    elif variant == "thm6":
        for v in packing:
            d = _bfs(g.adj, v, limit=2)
            ball = {v: None}
            for w in g.adj[v]:
                ball[w] = v
            for w in range(g.n):
                if d[w] == 2:
                    ball[w] = next(x for x in g.adj[w] if d[x] == 1)
            balls.append(ball)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return balls


def _centers(packing, variant: str) -> list[int]:
    if variant == "thm5":
        return sorted(x for e in packing for x in e.as_tuple())
    return list(packing)


def build_spanning_tree(g: Graph, packing: Sequence, variant: str) -> Graph:
    """Spanning tree grown from the stars / double stars / radius-2 BFS balls.

    Balls are joined by the least edge to an earlier ball.  Remaining
    vertices hang off the partial tree (``thm4``) or follow BFS layers from
    the packing so tree distances to it equal graph distances.
    """
    balls = _balls(g, packing, variant)
    owner: dict[int, int] = {}
    tree: set[tuple[int, int]] = set()
    for i, ball in enumerate(balls):
        for w, parent in ball.items():
            if w in owner:
                raise PipelineError(f"packing balls {owner[w]} and {i} overlap at vertex {w}")
            owner[w] = i
            if parent is not None:
                tree.add((min(w, parent), max(w, parent)))

    for i in range(1, len(balls)):
        connector = next(
            ((a, b) for a, b in g.edges()
             if a in owner and b in owner
             and max(owner[a], owner[b]) == i and min(owner[a], owner[b]) < i),
            None,
        )
        if connector is None:
            raise PipelineError(f"no edge joins ball {i} to an earlier ball")
        tree.add(connector)

    core = set(owner)
    rest = [x for x in range(g.n) if x not in core]
    if variant == "thm4":
        for x in rest:
            y = next((y for y in g.adj[x] if y in core), None)
            if y is None:
                raise PipelineError(f"vertex {x} has no neighbour in the partial tree")
            tree.add((min(x, y), max(x, y)))
    else:
        dist = multi_source_bfs(g, _centers(packing, variant))
        for x in sorted(rest, key=lambda v: (dist[v], v)):
            y = next(y for y in g.adj[x] if dist[y] == dist[x] - 1)
            tree.add((min(x, y), max(x, y)))

    t = build_graph(g.n, sorted(tree))
    if t.edge_count != g.n - 1 or not is_connected(t):
        raise PipelineError("constructed edge set is not a spanning tree")
    if any(not g.has_edge(a, b) for a, b in t.edges()):
        raise PipelineError("tree uses an edge outside the graph")
    return t


# -- weights and contraction -------------------------------------------------

def nearest_centers(t: Graph, centers: Sequence[int]) -> list[tuple[int, int]]:
    """For each vertex: (distance in ``t``, nearest center), ties to the lowest label."""
    best = [(-1, -1)] * t.n
    for c in sorted(centers):
        d = _bfs(t.adj, c)
        for u in range(t.n):
            if d[u] >= 0 and (best[u][0] < 0 or d[u] < best[u][0]):
                best[u] = (d[u], c)
    return best


def assign_weights(t: Graph, centers: Sequence[int]) -> WeightFunction:
    """Each vertex adds 1 to the weight of its nearest center in ``t``."""
    counts = [0] * t.n
    for d, c in nearest_centers(t, centers):
        if d < 0:
            raise PipelineError("vertex unreachable from every center")
        counts[c] += 1
    return WeightFunction.of(counts)


def lift_to_line_graph(c: WeightFunction, tree_edges: Sequence[EdgeRef],
                       matching: Sequence[EdgeRef]) -> WeightFunction:
    """Line-graph weights: ``c(u) + c(v)`` on matching edges ``uv``, zero elsewhere."""
    mset = set(matching)
    return WeightFunction(tuple(
        c[e.u] + c[e.v] if e in mset else Fraction(0) for e in tree_edges
    ))


def contract(g: Graph, centers: Sequence[int], power: int) -> tuple[Graph, dict[int, int]]:
    """``g^power`` induced on ``centers``; must be connected."""
    h, index = induced_subgraph(power_graph(g, power), centers)
    if not is_connected(h):
        raise PipelineError(f"contracted graph on {len(index)} centers is disconnected")
    return h, index


# -- certificate ---------------------------------------------------------------

_RELATIONS = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    "==": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
}


@dataclass(frozen=True)
class Check:
    name: str
    lhs: Fraction
    relation: str
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": frac_str(self.lhs),
            "relation": self.relation,
            "rhs": frac_str(self.rhs),
            "holds": self.holds,
        }


@dataclass
class Certificate:
    variant: str
    n: int
    delta: int
    Delta: int
    packing: list
    tree_edges: list[tuple[int, int]]
    weights_c: WeightFunction
    contracted_vertices: list
    weights_cprime: list[Fraction]  # aligned with contracted_vertices
    contracted_edges: list[tuple[int, int]]  # positions in contracted_vertices
    line_graph_order: int | None
    quantities: dict[str, Fraction]
    checks: list[Check]
    options: PipelineOptions = field(default_factory=PipelineOptions)

    @property
    def k(self) -> int:
        return len(self.packing)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.holds]

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> dict:
        def label(x):
            return list(x.as_tuple()) if isinstance(x, EdgeRef) else x

        return {
            "variant": self.variant,
            "n": self.n,
            "delta": self.delta,
            "Delta": self.Delta,
            "tie_break": self.options.tie_break,
            "k": self.k,
            "packing": [label(x) for x in self.packing],
            "tree_edges": [list(e) for e in self.tree_edges],
            "weights_c": self.weights_c.to_dict(),
            "weights_cprime": [frac_str(w) for w in self.weights_cprime],
            "contracted": {
                "vertices": [label(x) for x in self.contracted_vertices],
                "edges": [list(e) for e in self.contracted_edges],
            },
            "line_graph_order": self.line_graph_order,
            "quantities": {k: frac_str(v) for k, v in self.quantities.items()},
            "quantities_decimal": {k: frac_decimal(v) for k, v in self.quantities.items()},
            "checks": [c.to_dict() for c in self.checks],
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _mean_distance(rows) -> Fraction:
    n = len(rows)
    return Fraction(sum(map(sum, rows)) // 2) / pairs(n)


def check_hypotheses(g: Graph, variant: str) -> tuple[int, int]:
    """Return ``(delta, Delta)`` or raise :class:`HypothesisError`."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; choose from {', '.join(VARIANTS)}")
    if g.n < 2:
        raise HypothesisError("graph needs at least two vertices")
    if not is_connected(g):
        raise HypothesisError("graph is disconnected")
    delta, Delta, _ = degree_stats(g)
    if delta < 3:
        raise HypothesisError(f"minimum degree {delta} < 3")
    triangle_free, c4_free = structural_predicates(g)
    if variant == "thm5" and not triangle_free:
        raise HypothesisError("graph contains a triangle")
    if variant == "thm6" and not c4_free:
        raise HypothesisError("graph contains a 4-cycle")
    return delta, Delta


def certify(g: Graph, variant: str, options: PipelineOptions | None = None) -> Certificate:
    """Run the full construction for ``variant`` and evaluate every step exactly."""
    options = options or PipelineOptions()
    delta, Delta = check_hypotheses(g, variant)
    if variant == "thm5":
        return _certify_matching(g, delta, Delta, options)
    return _certify_vertex_packing(g, variant, delta, Delta, options)


def _tree_quantities(g: Graph, t: Graph, centers: Sequence[int], c: WeightFunction,
                     radius: int, preserve: bool) -> tuple[dict, list[Check], list]:
    n = g.n
    g_rows = _int_distance_rows(g)
    t_rows = _int_distance_rows(t)
    q = {
        "mu_G": _mean_distance(g_rows),
        "mu_T": _mean_distance(t_rows),
        "mu_c_T": weighted_average_from_rows(t_rows, c),
    }
    near = nearest_centers(t, centers)
    center_set = set(centers)
    checks = [
        Check("tree_is_spanning_subgraph", Fraction(t.edge_count), "==", Fraction(n - 1)),
        Check("weight_total_equals_n", c.total, "==", Fraction(n)),
        Check("weight_outside_centers", sum((c[v] for v in range(n) if v not in center_set), Fraction(0)),
              "==", Fraction(0)),
        Check("max_weight_move_distance", Fraction(max(d for d, _ in near)), "<=", Fraction(radius)),
    ]
    if preserve:
        dg = multi_source_bfs(g, centers)
        bad = sum(1 for x in range(n) if near[x][0] != dg[x])
        checks.append(Check("tree_preserves_distance_to_centers", Fraction(bad), "==", Fraction(0)))
    checks.append(Check("mu_G<=mu_T", q["mu_G"], "<=", q["mu_T"]))
    return q, checks, g_rows


def _min_pairwise(values: list[list[int]], idx: Sequence[int]):
    best = None
    for i, a in enumerate(idx):
        for b in idx[i + 1:]:
            d = values[a][b]
            best = d if best is None or d < best else best
    return best


def _certify_vertex_packing(g: Graph, variant: str, delta: int, Delta: int,
                            options: PipelineOptions) -> Certificate:
    n = g.n
    thm6 = variant == "thm6"
    step = 5 if thm6 else 3
    A = greedy_packing_c4(g) if thm6 else greedy_packing(g)
    v1 = A[0]
    t = build_spanning_tree(g, A, variant)
    c = assign_weights(t, A)
    h, index = contract(t, A, step)
    order = sorted(index, key=index.get)

    if thm6:
        low, high = epsilon(delta, delta), epsilon(Delta, delta)
        bound = evaluate_bound("thm6_upper", BoundParams(n, delta, Delta)).value
    else:
        low, high = delta + 1, Delta + 1
        bound = evaluate_bound("thm4_upper", BoundParams(n, delta, Delta)).value
    shift = high - low  # Delta - delta for thm4
    N = n - high + low

    q, checks, g_rows = _tree_quantities(g, t, A, c, radius=step - 1, preserve=thm6)

    k = len(A)
    sep = _min_pairwise(g_rows, A)
    cover = max(min(g_rows[a][x] for a in A) for x in range(n))
    checks[:0] = [
        Check("packing_min_separation", Fraction(sep if sep is not None else step), ">=", Fraction(step)),
        Check("packing_coverage_radius", Fraction(cover), "<=", Fraction(step - 1)),
        Check("contracted_graph_connected", Fraction(1 if is_connected(h) else 0), "==", Fraction(1)),
    ]

    cH = WeightFunction(tuple(c[v] for v in order))
    cpH = WeightFunction(tuple(c[v] - shift if v == v1 else c[v] for v in order))
    h_rows = _int_distance_rows(h)
    hv1 = index[v1]
    S = sum((cH[i] * h_rows[hv1][i] for i in range(h.n) if i != hv1), Fraction(0))
    q["mu_c_H"] = weighted_average_from_rows(h_rows, cH)
    q["mu_cprime_H"] = weighted_average_from_rows(h_rows, cpH) if cpH.total > 1 else Fraction(0)
    q["weighted_distance_to_v1"] = S
    q["N"] = cpH.total
    q["bound"] = bound
    ratio = Fraction(N * (N - 1), n * (n - 1))

    others = [c[v] for v in A[1:]]
    mu_G, mu_T, mu_cT = q["mu_G"], q["mu_T"], q["mu_c_T"]
    mu_cH, mu_cpH = q["mu_c_H"], q["mu_cprime_H"]
    tag = "eps" if thm6 else "deg+1"
    checks += [
        Check(f"c(v1)>={tag}(Delta)", c[v1], ">=", Fraction(high)),
        Check(f"min_c(v_i)>={tag}(delta)", min(others) if others else Fraction(low), ">=", Fraction(low)),
        Check("k_upper", Fraction(k), "<=", Fraction(N, low)),
        Check("N_equals_sum_cprime", cpH.total, "==", Fraction(N)),
        Check(f"mu_T<=mu_c_T+{2 * (step - 1)}", mu_T, "<=", mu_cT + 2 * (step - 1)),
        Check(f"mu_c_T<={step}*mu_c_H", mu_cT, "<=", step * mu_cH),
        Check("mu_c_H_decomposition", mu_cH, "==",
              ratio * mu_cpH + Fraction(2 * shift, n * (n - 1)) * S),
        Check("weighted_distance_to_v1_bound", S, "<=", Fraction(N * (N - 1), 2 * low)),
        Check("mu_cprime_H_bound", mu_cpH, "<=", Fraction(N + low, 3 * low)),
    ]
    if thm6:
        checks.append(Check("mu_c_H_bound", mu_cH, "<=",
                            ratio * Fraction(n + 2 * high - low, 3 * low)))
    else:
        checks.append(Check("mu_c_H_bound", mu_cH, "<=",
                            ratio * Fraction(n + 2 * Delta, 3 * (delta + 1))))
    checks.append(Check("mu_G<=bound", mu_G, "<=", bound))

    return Certificate(
        variant=variant, n=n, delta=delta, Delta=Delta,
        packing=list(A),
        tree_edges=list(t.edges()),
        weights_c=c,
        contracted_vertices=order,
        weights_cprime=list(cpH.weights),
        contracted_edges=list(h.edges()),
        line_graph_order=None,
        quantities=q,
        checks=checks,
        options=options,
    )


def _certify_matching(g: Graph, delta: int, Delta: int, options: PipelineOptions) -> Certificate:
    n = g.n
    M = greedy_edge_packing(g)
    e1 = M[0]
    t = build_spanning_tree(g, M, "thm5")
    centers = _centers(M, "thm5")
    c = assign_weights(t, centers)
    L, tree_edges = line_graph(t)
    cbar = lift_to_line_graph(c, tree_edges, M)
    lindex = {e: i for i, e in enumerate(tree_edges)}
    h, index = contract(L, [lindex[e] for e in M], 4)
    order = sorted(index, key=index.get)  # line-graph labels of the matching edges
    order_edges = [tree_edges[i] for i in order]

    N = n - Delta + delta
    bound = evaluate_bound("thm5_upper", BoundParams(n, delta, Delta)).value
    q, checks, g_rows = _tree_quantities(g, t, centers, c, radius=3, preserve=True)

    k = len(M)
    if k > 1:
        sep = min(
            min(g_rows[a][b] for a in M[i].as_tuple() for b in M[j].as_tuple())
            for i in range(k) for j in range(i + 1, k)
        )
    else:
        sep = 3
    cover = max(min(min(g_rows[a][x], g_rows[a][y]) for e in M for a in e.as_tuple())
                for x, y in g.edges())
    checks[:0] = [
        Check("matching_min_edge_separation", Fraction(sep), ">=", Fraction(3)),
        Check("matching_edge_coverage_radius", Fraction(cover), "<=", Fraction(2)),
        Check("contracted_graph_connected", Fraction(1 if is_connected(h) else 0), "==", Fraction(1)),
    ]

    l_rows = _int_distance_rows(L)
    q["mu_cbar_L"] = weighted_average_from_rows(l_rows, cbar)
    cH = WeightFunction(tuple(cbar[i] for i in order))
    he1 = index[lindex[e1]]
    cpH = WeightFunction(tuple(w - (Delta - delta) if i == he1 else w for i, w in enumerate(cH.weights)))
    h_rows = _int_distance_rows(h)
    S = sum((cH[i] * h_rows[he1][i] for i in range(h.n) if i != he1), Fraction(0))
    q["mu_cbar_H"] = weighted_average_from_rows(h_rows, cH)
    q["mu_cprime_H"] = weighted_average_from_rows(h_rows, cpH) if cpH.total > 1 else Fraction(0)
    q["weighted_distance_to_e1"] = S
    q["N"] = cpH.total
    q["bound"] = bound
    ratio = Fraction(N * (N - 1), n * (n - 1))

    others = [cH[i] for i in range(h.n) if i != he1]
    mu_G, mu_T, mu_cT = q["mu_G"], q["mu_T"], q["mu_c_T"]
    mu_L, mu_H, mu_cpH = q["mu_cbar_L"], q["mu_cbar_H"], q["mu_cprime_H"]
    checks += [
        Check("cbar(e1)>=Delta+delta", cH[he1], ">=", Fraction(Delta + delta)),
        Check("min_cbar(e_i)>=2delta", min(others) if others else Fraction(2 * delta), ">=", Fraction(2 * delta)),
        Check("k_upper", Fraction(k), "<=", Fraction(N, 2 * delta)),
        Check("N_equals_sum_cprime", cpH.total, "==", Fraction(N)),
        Check("mu_T<=mu_c_T+6", mu_T, "<=", mu_cT + 6),
        Check("mu_c_T<=mu_cbar_L+1", mu_cT, "<=", mu_L + 1),
        Check("mu_cbar_L<=4*mu_cbar_H", mu_L, "<=", 4 * mu_H),
        Check("mu_cbar_H_decomposition", mu_H, "==",
              ratio * mu_cpH + Fraction(2 * (Delta - delta), n * (n - 1)) * S),
        Check("weighted_distance_to_e1_bound", S, "<=", Fraction(N * (N - 2 * delta), 4 * delta)),
        Check("weighted_distance_to_e1_strict", S, "<", Fraction(N * (N - 1), 4 * delta)),
        Check("mu_cprime_H_bound", mu_cpH, "<=", Fraction(N + 2 * delta, 6 * delta)),
        Check("mu_cbar_H_bound", mu_H, "<=", ratio * Fraction(n + 2 * Delta, 6 * delta)),
        Check("mu_G<=bound", mu_G, "<=", bound),
    ]

    return Certificate(
        variant="thm5", n=n, delta=delta, Delta=Delta,
        packing=list(M),
        tree_edges=list(t.edges()),
        weights_c=c,
        contracted_vertices=order_edges,
        weights_cprime=list(cpH.weights),
        contracted_edges=list(h.edges()),
        line_graph_order=L.n,
        quantities=q,
        checks=checks,
        options=options,
    )
