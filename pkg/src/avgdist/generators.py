"""Seeded random graphs with prescribed minimum and maximum degree."""

from __future__ import annotations

from .graph import Graph, build_graph, degree_stats, is_connected
from .rng import SplitMix64

MAX_RETRIES = 64


class GenerationError(ValueError):
    pass


def havel_hakimi(degrees: list[int]) -> list[tuple[int, int]] | None:
    """Realise a degree sequence, or None if it is not graphical.

    The vertex with the largest residual degree (lowest label on ties) is
    joined to the next-largest ones.
    """
    residual = list(degrees)
    edges = []
    while True:
        order = sorted(range(len(residual)), key=lambda v: (-residual[v], v))
        v = order[0]
        d = residual[v]
        if d == 0:
            return edges
        targets = order[1:d + 1]
        if len(targets) < d or residual[targets[-1]] == 0:
            return None
        residual[v] = 0
        for w in targets:
            residual[w] -= 1
            edges.append((min(v, w), max(v, w)))


def gale_ryser(left: list[int], right: list[int]) -> list[tuple[int, int]] | None:
    """Bipartite realisation (left indices, right indices) or None."""
    if sum(left) != sum(right):
        return None
    residual = list(right)
    edges = []
    for u in sorted(range(len(left)), key=lambda x: (-left[x], x)):
        order = sorted(range(len(residual)), key=lambda w: (-residual[w], w))
        targets = order[:left[u]]
        if len(targets) < left[u] or (targets and residual[targets[-1]] == 0):
            return None
        for w in targets:
            residual[w] -= 1
            edges.append((u, w))
    return edges if not any(residual) else None


def _components(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    g = build_graph(n, edges)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _swap_randomise(edges: list[tuple[int, int]], rng: SplitMix64, attempts: int,
                    oriented: bool) -> None:
    """Degree-preserving double edge swaps, in place.

    With ``oriented`` the edges are (left, right) pairs and only the
    bipartition-preserving swap ``(a,b),(c,d) -> (a,d),(c,b)`` is tried.
    """
    present = {frozenset(e) for e in edges}
    m = len(edges)
    if m < 2:
        return
    for _ in range(attempts):
        i, j = rng.below(m), rng.below(m)
        if i == j:
            continue
        a, b = edges[i]
        c, d = edges[j]
        if not oriented and rng.below(2):
            c, d = d, c
        if len({a, b, c, d}) < 4:
            continue
        e1, e2 = frozenset((a, d)), frozenset((c, b))
        if e1 in present or e2 in present:
            continue
        present -= {frozenset((a, b)), frozenset((c, d))}
        present |= {e1, e2}
        edges[i], edges[j] = (a, d), (c, b)


def _connect(n: int, edges: list[tuple[int, int]]) -> bool:
    """Merge components by swapping a non-bridge edge with an edge of another component."""
    while True:
        comps = _components(n, edges)
        if len(comps) == 1:
            return True
        first, second = (set(c) for c in comps[:2])
        swap = None
        for src, dst in ((first, second), (second, first)):
            inside = [i for i, (a, _) in enumerate(edges) if a in src]
            other = next((i for i, (a, _) in enumerate(edges) if a in dst), None)
            if other is None:
                continue
            for i in inside:
                trial = edges[:i] + edges[i + 1:]
                sub = [e for e in trial if e[0] in src]
                if len(_components_of(src, sub)) == 1:
                    swap = (i, other)
                    break
            if swap:
                break
        if swap is None:
            return False
        i, j = swap
        (a, b), (c, d) = edges[i], edges[j]
        edges[i], edges[j] = (a, d), (c, b)


def _components_of(vertices: set[int], edges: list[tuple[int, int]]) -> list[set[int]]:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    roots: dict[int, set[int]] = {}
    for v in vertices:
        roots.setdefault(find(v), set()).add(v)
    return list(roots.values())


def _audit(g: Graph, delta: int, Delta: int) -> None:
    mn, mx, _ = degree_stats(g)
    if (mn, mx) != (delta, Delta) or not is_connected(g):
        raise GenerationError(
            f"generated graph failed its audit: degrees [{mn}, {mx}], connected={is_connected(g)}"
        )


def _degree_sequence(rng: SplitMix64, size: int, lo: int, hi: int,
                     pins: tuple[int, ...]) -> tuple[list[int], set[int]]:
    """Random degrees in ``[lo, hi]`` with the values in ``pins`` fixed at distinct random positions."""
    degs = [rng.randint(lo, hi) for _ in range(size)]
    pinned: set[int] = set()
    for value in pins:
        i = rng.below(size)
        while i in pinned:
            i = (i + 1) % size
        degs[i] = value
        pinned.add(i)
    return degs, pinned


def _fix_parity(degs: list[int], pinned: set[int], lo: int, hi: int) -> bool:
    if sum(degs) % 2 == 0:
        return True
    for v in range(len(degs)):
        if v not in pinned and degs[v] < hi:
            degs[v] += 1
            return True
        if v not in pinned and degs[v] > lo:
            degs[v] -= 1
            return True
    return False


def infeasibility(n: int, delta: int, Delta: int, bipartite: bool) -> str | None:
    """Why no generator output exists for these parameters, or None."""
    if bipartite:
        big, small = (n + 1) // 2, n // 2
        if not (3 <= delta <= Delta <= big and delta <= small):
            return f"need 3 <= delta <= n//2 and delta <= Delta <= ceil(n/2); got n={n}, delta={delta}, Delta={Delta}"
        if delta == Delta and n % 2:
            return f"no {delta}-regular bipartite graph with sides {big} and {small}"
        return None
    if not 3 <= delta <= Delta <= n - 1:
        return f"need 3 <= delta <= Delta <= n-1, got n={n}, delta={delta}, Delta={Delta}"
    if delta == Delta and n * delta % 2:
        return f"no {delta}-regular graph on {n} vertices (odd degree sum)"
    return None


def random_graph_with_degrees(n: int, delta: int, Delta: int, seed: int) -> Graph:
    """Connected random graph with minimum degree ``delta`` and maximum ``Delta``.

    A random degree sequence is realised by Havel-Hakimi, shuffled by
    ``10 * |E|`` double-edge-swap attempts and made connected by swaps that
    merge components.
    """
    reason = infeasibility(n, delta, Delta, bipartite=False)
    if reason:
        raise GenerationError(reason)
    rng = SplitMix64(seed)
    for _ in range(MAX_RETRIES):
        degs, pinned = _degree_sequence(rng, n, delta, Delta, (Delta, delta))
        if not _fix_parity(degs, pinned, delta, Delta):
            continue
        edges = havel_hakimi(degs)
        if edges is None:
            continue
        _swap_randomise(edges, rng, 10 * len(edges), oriented=False)
        if not _connect(n, edges):
            continue
        g = build_graph(n, edges)
        _audit(g, delta, Delta)
        return g
    raise GenerationError(f"no graph found for n={n}, delta={delta}, Delta={Delta} after {MAX_RETRIES} tries")


def random_bipartite_with_degrees(n: int, delta: int, Delta: int, seed: int) -> Graph:
    """Connected random bipartite (hence triangle-free) graph with degree range [delta, Delta].

    The larger side holds ``ceil(n/2)`` vertices; ``Delta`` is pinned on the
    smaller side and ``delta`` on the larger one, which always leaves room to
    balance the two degree sums.  Labels are
    shuffled at the end.
    """
    big, small = (n + 1) // 2, n // 2
    reason = infeasibility(n, delta, Delta, bipartite=True)
    if reason:
        raise GenerationError(reason)
    rng = SplitMix64(seed)
    for _ in range(MAX_RETRIES):
        left, lp = _degree_sequence(rng, small, delta, min(Delta, big), (Delta,))
        right, rp = _degree_sequence(rng, big, delta, min(Delta, small), (delta,))
        if not _balance(left, right, lp, rp, delta, min(Delta, big), min(Delta, small)):
            continue
        pairs = gale_ryser(left, right)
        if pairs is None:
            continue
        edges = [(u, small + w) for u, w in pairs]
        _swap_randomise(edges, rng, 10 * len(edges), oriented=True)
        if not _connect(n, edges):
            continue
        perm = list(range(n))
        rng.shuffle(perm)
        g = build_graph(n, [(perm[a], perm[b]) for a, b in edges])
        _audit(g, delta, Delta)
        return g
    raise GenerationError(f"no bipartite graph found for n={n}, delta={delta}, Delta={Delta}")


def _balance(left, right, lp, rp, delta, left_hi, right_hi) -> bool:
    """Nudge unpinned degrees until both sides have the same total."""
    while sum(left) != sum(right):
        if sum(left) < sum(right):
            side, pins, hi, other, opins = left, lp, left_hi, right, rp
        else:
            side, pins, hi, other, opins = right, rp, right_hi, left, lp
        up = next((v for v in range(len(side)) if v not in pins and side[v] < hi), None)
        if up is not None:
            side[up] += 1
            continue
        down = next((v for v in range(len(other)) if v not in opins and other[v] > delta), None)
        if down is None:
            return False
        other[down] -= 1
    return True
