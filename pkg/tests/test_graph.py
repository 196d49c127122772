import networkx as nx
import pytest
from hypothesis import given

from avgdist.constructions import c4_chain, clique_chain, complete, cycle, path, polarity_graph, star
from avgdist.graph import (
    INF,
    DisconnectedGraphError,
    EdgeRef,
    GraphError,
    bfs_distances,
    build_graph,
    degree_stats,
    disjoint_union,
    distance_matrix,
    edge_distance,
    induced_subgraph,
    is_connected,
    line_graph,
    power_graph,
    require_connected,
    second_neighborhood,
    structural_predicates,
)
from avgdist.bounds import epsilon

from conftest import graphs, to_nx


def test_build_small_graphs():
    k2 = build_graph(2, [(0, 1)])
    assert k2.edge_count == 1
    p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert p4.degrees() == [1, 2, 2, 1]
    c5 = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert c5.degrees() == [2] * 5


def test_build_rejects_bad_input():
    with pytest.raises(GraphError, match="self-loop"):
        build_graph(3, [(1, 1)])
    with pytest.raises(GraphError, match="outside"):
        build_graph(3, [(0, 3)])


def test_build_merges_parallel_edges():
    g = build_graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.edge_count == 1
    assert g.adj == ((1,), (0,), ())


def test_bfs_distances():
    assert bfs_distances(path(4), 0) == [0, 1, 2, 3]
    assert bfs_distances(cycle(5), 0) == [0, 1, 2, 2, 1]
    assert bfs_distances(build_graph(3, [(0, 1)]), 0) == [0, 1, INF]


def test_inf_is_not_a_number():
    with pytest.raises(TypeError):
        INF + 1
    with pytest.raises(TypeError):
        INF < 3


def test_distance_matrix():
    dm = distance_matrix(complete(3))
    assert all(dm[u, v] == (u != v) for u in range(3) for v in range(3))
    assert distance_matrix(path(4))[0, 3] == 3


def test_clique_chain_28_8_3_diameter():
    # the longest distance is 15, from the far end of the K_8 block to the last block
    g, _ = clique_chain(28, 8, 3)
    assert distance_matrix(g).max_finite() == 15 == nx.diameter(to_nx(g))


def test_degree_stats():
    assert degree_stats(complete(4))[:2] == (3, 3)
    assert degree_stats(clique_chain(28, 8, 3)[0])[:2] == (3, 8)
    assert degree_stats(star(5))[:2] == (1, 4)
    with pytest.raises(GraphError):
        degree_stats(build_graph(0, []))


def test_is_connected():
    assert is_connected(path(4))
    assert not is_connected(build_graph(4, [(0, 1), (2, 3)]))
    assert is_connected(polarity_graph(2))
    assert is_connected(build_graph(1, []))
    with pytest.raises(DisconnectedGraphError):
        require_connected(build_graph(2, []))


def test_induced_subgraph():
    h, m = induced_subgraph(complete(4), {0, 1, 2})
    assert h == complete(3) and m == {0: 0, 1: 1, 2: 2}
    h, m = induced_subgraph(path(4), {0, 2})
    assert h.edge_count == 0 and m == {0: 0, 2: 1}
    h, _ = induced_subgraph(cycle(5), {0, 1, 2})
    assert h == path(3)
    with pytest.raises(GraphError):
        induced_subgraph(path(3), {5})


def test_power_graph():
    assert sorted(power_graph(path(4), 2).edges()) == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    assert power_graph(cycle(6), 1) == cycle(6)
    assert power_graph(path(4), 3) == complete(4)


def test_line_graph():
    lg, order = line_graph(path(4))
    assert lg == path(3)
    assert order == [EdgeRef(0, 1), EdgeRef(1, 2), EdgeRef(2, 3)]
    assert line_graph(complete(3))[0] == complete(3)
    assert line_graph(star(4))[0] == complete(3)
    with pytest.raises(GraphError):
        line_graph(build_graph(3, []))


def test_edge_distance():
    p6 = path(6)
    assert edge_distance(p6, EdgeRef(0, 1), EdgeRef(4, 5)) == 3
    assert edge_distance(p6, EdgeRef(0, 1), EdgeRef(1, 2)) == 0
    assert edge_distance(p6, EdgeRef(2, 3), EdgeRef(2, 3)) == 0
    with pytest.raises(GraphError):
        edge_distance(p6, EdgeRef(0, 2), EdgeRef(4, 5))


def test_edge_ref_normalises():
    assert EdgeRef.of(5, 2) == EdgeRef(2, 5)
    with pytest.raises(GraphError):
        EdgeRef(3, 1)


def test_structural_predicates():
    assert structural_predicates(cycle(5)) == (True, True)
    assert structural_predicates(build_graph(6, [(a, b) for a in range(3) for b in range(3, 6)])) == (True, False)
    assert structural_predicates(polarity_graph(3)) == (False, True)


def test_second_neighborhood():
    assert len(second_neighborhood(path(5), 0)) == 3
    assert second_neighborhood(complete(4), 2) == {0, 1, 2, 3}
    h = polarity_graph(3)
    for v in range(h.n):
        if h.degree(v) == 4:
            assert len(second_neighborhood(h, v)) >= epsilon(4, 3) == 9


def test_disjoint_union():
    g, offsets = disjoint_union([path(2), cycle(3)])
    assert g.n == 5 and offsets == [0, 2]
    assert sorted(g.edges()) == [(0, 1), (2, 3), (2, 4), (3, 4)]


def test_c4_chain_packing_far_apart():
    g, labels = c4_chain(1, 2, 4)
    assert labels.num_blocks == 2 and g.n == 41


# -- properties ------------------------------------------------------------

@given(graphs())
def test_adjacency_invariants(g):
    for v in range(g.n):
        assert list(g.adj[v]) == sorted(set(g.adj[v]))
        assert v not in g.adj[v]
        assert all(v in g.adj[w] for w in g.adj[v])
    assert 2 * g.edge_count == sum(g.degrees())


@given(graphs())
def test_distances_match_networkx(g):
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    dm = distance_matrix(g)
    for u in range(g.n):
        for v in range(g.n):
            assert dm[u, v] == ref[u].get(v, INF)
    assert dm.connected == (g.n <= 1 or nx.is_connected(to_nx(g)))


@given(graphs(min_n=2, connected=True))
def test_triangle_inequality_and_symmetry(g):
    dm = distance_matrix(g)
    n = g.n
    for u in range(n):
        for v in range(n):
            assert dm[u, v] == dm[v, u]
            for w in range(n):
                assert dm[u, w] <= dm[u, v] + dm[v, w]


@given(graphs(), graphs())
def test_power_and_line_graph_match_networkx(g, _):
    ng = to_nx(g)
    for k in (1, 2, 3):
        ref = nx.power(ng, k) if g.n else ng
        assert sorted(power_graph(g, k).edges()) == sorted(tuple(sorted(e)) for e in ref.edges())
    if g.edge_count:
        lg, order = line_graph(g)
        ref = nx.line_graph(ng)
        got = {frozenset((order[a].as_tuple(), order[b].as_tuple())) for a, b in lg.edges()}
        want = {frozenset((tuple(sorted(a)), tuple(sorted(b)))) for a, b in ref.edges()}
        assert got == want


def _brute_predicates(g):
    import itertools
    tri = not any(g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
                  for a, b, c in itertools.combinations(range(g.n), 3))
    c4 = True
    for a, b, c, d in itertools.permutations(range(g.n), 4):
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d) and g.has_edge(d, a):
            c4 = False
            break
    return tri, c4


@given(graphs(max_n=7))
def test_predicates_match_subgraph_search(g):
    assert structural_predicates(g) == _brute_predicates(g)
