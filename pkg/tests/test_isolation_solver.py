import itertools
import math

import pytest

from Source.Services.enumeration import connected_graphs, free_trees
from Source.Services.families import make_cycle, make_path, make_spider, make_star, make_wounded_spider
from Source.Services.graph_core import NotAForestError, build_graph, subdivide
from Source.Services.isolation_solver import (
    IsolationSearch,
    MinSetFamily,
    TreeIsolationSolver,
    enumerate_min_dominating_sets,
    enumerate_min_isolating_sets,
    gamma,
    iota,
    iota_bruteforce,
    iota_tree,
    is_dominating,
    is_isolating,
    subdivided_search,
)


def test_is_isolating_examples():
    p5 = make_path(5)
    assert is_isolating(p5, {2})
    assert not is_isolating(p5, {1})
    assert is_isolating(build_graph(3, []), set())


@pytest.mark.parametrize("n", range(1, 41))
def test_path_isolation_number(n):
    expected = math.ceil((n - 1) / 4)
    assert iota_tree(make_path(n)) == expected
    if n <= 20:
        assert iota_bruteforce(make_path(n)) == expected


@pytest.mark.parametrize("n", range(3, 41))
def test_cycle_isolation_number(n):
    assert iota(make_cycle(n)) == math.ceil(n / 4)


def test_named_examples():
    assert iota_bruteforce(make_path(5)) == 1
    assert iota_bruteforce(make_cycle(9)) == 3
    assert iota_bruteforce(make_spider(3)) == 1
    assert iota_tree(make_path(9)) == 2
    assert iota_tree(make_wounded_spider(5, 3)) == 1


def test_forest_sums_components():
    forest = make_path(5).disjoint_union(make_path(5))
    assert iota_tree(forest) == 2
    assert iota_bruteforce(forest) == 2


def test_tree_solver_rejects_cycles():
    with pytest.raises(NotAForestError):
        iota_tree(make_cycle(4))


@pytest.mark.parametrize("n", range(1, 11))
def test_tree_solver_matches_search_on_all_trees(n):
    for tree in free_trees(n):
        assert iota_tree(tree) == iota_bruteforce(tree)


@pytest.mark.parametrize("n", range(2, 8))
def test_tree_solver_with_subdivided_edges(n):
    for tree in free_trees(n):
        solver = TreeIsolationSolver(tree)
        for mask in range(1 << tree.m):
            chosen = [e for i, e in enumerate(tree.edges) if mask >> i & 1]
            assert solver.iota(mask) == iota_bruteforce(subdivide(tree, chosen).graph)


@pytest.mark.parametrize("n", range(3, 6))
def test_subdivided_search_matches_materialised_graph(n):
    for g in connected_graphs(n):
        for mask in range(1 << g.m):
            chosen = [e for i, e in enumerate(g.edges) if mask >> i & 1]
            assert subdivided_search(g, mask).minimum() == iota_bruteforce(subdivide(g, chosen).graph)


@pytest.mark.parametrize("n", range(1, 7))
def test_isolation_number_at_most_a_third(n):
    for g in connected_graphs(n):
        assert iota(g) <= math.ceil(n / 3)


def test_min_isolating_set_families():
    assert enumerate_min_isolating_sets(make_path(5)).as_lists() == [[2]]
    assert enumerate_min_isolating_sets(make_cycle(4)).as_lists() == [[0], [1], [2], [3]]
    assert enumerate_min_isolating_sets(make_path(2)).as_lists() == [[0], [1]]


@pytest.mark.parametrize("g", [make_cycle(6), make_path(7), make_spider(3), make_star(4)])
def test_min_isolating_sets_are_complete(g):
    family = enumerate_min_isolating_sets(g)
    expected = [
        frozenset(combo)
        for combo in itertools.combinations(range(g.n), family.iota)
        if is_isolating(g, combo)
    ]
    assert list(family.sets) == expected
    smaller = itertools.combinations(range(g.n), family.iota - 1)
    assert not any(is_isolating(g, combo) for combo in smaller)


def test_min_set_family_validation():
    with pytest.raises(ValueError):
        MinSetFamily(sets=(frozenset({1, 2}),), iota=1)
    with pytest.raises(ValueError):
        MinSetFamily(sets=(frozenset({1}), frozenset({1})), iota=1)


def test_domination_examples():
    c3 = make_cycle(3)
    assert gamma(c3) == 1
    assert enumerate_min_dominating_sets(c3).as_lists() == [[0], [1], [2]]
    assert gamma(make_path(5)) == 2
    assert gamma(make_cycle(4)) == 2
    assert is_dominating(make_path(5), {1, 3})
    assert not is_dominating(make_path(5), {2})


def test_search_on_edgeless_graph():
    search = IsolationSearch.for_graph(build_graph(4, []))
    assert search.minimum() == 0
    assert search.minimum_dominating() == 4
