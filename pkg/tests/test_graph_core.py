import pytest

from Source.Services.graph_core import (
    DisconnectedGraphError,
    GraphError,
    build_graph,
    classify,
    closed_neighborhood,
    diameter,
    edge_set,
    is_independent,
    is_k_packing,
    is_star,
    subdivide,
)
from Source.Services.families import make_cycle, make_path, make_star


def test_build_graph_basic_shapes():
    k2 = build_graph(2, [(0, 1)])
    assert k2.n == 2 and k2.edges == ((0, 1),)
    p5 = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert p5.adjacency[2] == (1, 3)
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert all(c4.degree(v) == 2 for v in c4.vertices())


@pytest.mark.parametrize("n, edges", [
    (3, [(0, 3)]),
    (3, [(1, 1)]),
    (3, [(0, 1), (1, 0)]),
    (-1, []),
])
def test_build_graph_rejects_invalid_input(n, edges):
    with pytest.raises(GraphError):
        build_graph(n, edges)


def test_edge_set_rejects_non_edges_and_repeats():
    p4 = make_path(4)
    assert edge_set(p4, [(1, 0), (2, 3)]) == frozenset({(0, 1), (2, 3)})
    with pytest.raises(GraphError):
        edge_set(p4, [(0, 2)])
    with pytest.raises(GraphError):
        edge_set(p4, [(0, 1), (1, 0)])


def test_subdivide_every_edge_of_p4_gives_p7():
    result = subdivide(make_path(4), make_path(4).edges)
    g = result.graph
    assert (g.n, g.m) == (7, 6)
    assert result.new_vertex_of == {(0, 1): 4, (1, 2): 5, (2, 3): 6}
    assert g.has_edge(0, 4) and g.has_edge(4, 1) and not g.has_edge(0, 1)
    assert g.is_tree() and diameter(g) == 6
    assert result.origin[4] == (0, 1) and result.origin[2] == 2


def test_subdivide_one_cycle_edge_gives_c5():
    g = subdivide(make_cycle(4), [(0, 1)]).graph
    assert g.n == 5 and g.m == 5 and g.is_connected()
    assert all(g.degree(v) == 2 for v in g.vertices())


def test_subdivide_two_star_edges_gives_wounded_spider():
    g = subdivide(make_star(3), [(0, 1), (0, 2)]).graph
    assert (g.n, g.m) == (6, 5)
    assert sorted(g.degree(v) for v in g.vertices()) == [1, 1, 1, 2, 2, 3]


def test_subdivide_rejects_non_edge():
    with pytest.raises(GraphError):
        subdivide(make_path(4), [(0, 3)])


def test_closed_neighborhood():
    assert closed_neighborhood(make_path(5), {2}) == {1, 2, 3}
    assert closed_neighborhood(make_path(5), set()) == frozenset()
    assert closed_neighborhood(make_cycle(4), {0}) == {0, 1, 3}
    with pytest.raises(GraphError):
        closed_neighborhood(make_path(5), {5})


def test_is_independent():
    p5 = make_path(5)
    assert is_independent(p5, {0, 2, 4})
    assert not is_independent(p5, {0, 1})
    assert is_independent(p5, {3})


def test_is_k_packing():
    assert is_k_packing(make_path(9), {0, 4}, 3)
    assert not is_k_packing(make_path(5), {1, 3}, 3)
    assert is_k_packing(make_cycle(6), {2}, 10)
    two_edges = build_graph(4, [(0, 1), (2, 3)])
    assert is_k_packing(two_edges, {0, 2}, 5)
    with pytest.raises(GraphError):
        is_k_packing(make_path(3), {0}, 0)


def test_one_packing_is_independent():
    g = make_cycle(7)
    for mask in range(1 << g.n):
        chosen = {v for v in range(g.n) if mask >> v & 1}
        if is_k_packing(g, chosen, 1):
            assert is_independent(g, chosen)


def test_classify_star_path_cycle():
    star = classify(make_star(4))
    assert star.is_star and star.is_tree and star.diameter == 2

    path = classify(make_path(5))
    assert not path.is_star and path.is_tree
    assert path.leaves == [0, 4] and path.supports == [1, 3] and path.diameter == 4

    cycle = classify(make_cycle(6))
    assert not cycle.is_star and not cycle.is_tree and cycle.connected and cycle.diameter == 3
    assert cycle.bipartite


def test_classify_disconnected_graph_has_no_diameter():
    report = classify(build_graph(4, [(0, 1), (2, 3)]))
    assert not report.connected and report.components == 2 and report.is_forest
    assert report.diameter is None
    with pytest.raises(DisconnectedGraphError):
        diameter(build_graph(4, [(0, 1), (2, 3)]))


def test_star_boundary_cases():
    assert is_star(make_star(0))
    assert is_star(make_path(2))
    assert is_star(make_path(3))
    assert not is_star(make_path(4))
    assert not is_star(build_graph(0, []))


def test_induced_subgraph_and_union():
    g = make_cycle(5)
    sub, mapping = g.induced_subgraph({1, 2, 3})
    assert mapping == {1: 0, 2: 1, 3: 2}
    assert sub.edges == ((0, 1), (1, 2))
    rest, _ = g.remove_vertices({0})
    assert rest.n == 4 and rest.m == 3
    union = make_path(2).disjoint_union(make_path(3))
    assert union.edges == ((0, 1), (2, 3), (3, 4))
    assert len(union.components()) == 2


def test_networkx_conversion_round_trip():
    g = make_cycle(6)
    assert type(g).from_networkx(g.to_networkx()) == g


def test_distances_and_components_with_isolated_vertices():
    g = build_graph(6, [(0, 1), (1, 2), (4, 5)])
    assert g.distances_from(0) == [0, 1, 2, None, None, None]
    assert g.distances_from(5) == [None, None, None, None, 1, 0]
    assert g.components() == [[0, 1, 2], [3], [4, 5]]
    assert not g.is_connected() and g.is_forest() and not g.is_tree()


def test_null_graph_is_a_forest_but_not_a_tree():
    null = build_graph(0, [])
    assert null.is_forest() and not null.is_tree() and not null.is_connected()
    assert null.components() == []
