import itertools

import pytest

from Source.Services.criticality import (
    CritReport,
    SearchBudgetExceeded,
    StarGraphError,
    SubdivisionSearch,
    check_tripartition,
    crit_index,
    crit_report,
    has_unique_min_isolating_set,
    is_gamma1_critical,
    is_gamma1_critical_direct,
    is_iota1_critical,
    is_q_critical,
    iota_after_subdivision,
    max_safe_set_size,
    subdivision_number,
    tripartition_of,
)
from Source.Services.enumeration import connected_graphs, free_trees
from Source.Services.families import (
    fiota_membership,
    make_cycle,
    make_path,
    make_qk,
    make_star,
    make_wounded_spider,
)
from Source.Services.graph_core import DisconnectedGraphError, GraphError, build_graph, is_star
from Source.Services.isolation_solver import enumerate_min_dominating_sets, enumerate_min_isolating_sets, iota

PATH_SD = {1: 1, 0: 2, 3: 3, 2: 4}
CYCLE_SD = {0: 1, 3: 2, 2: 3, 1: 4}


def test_subdivision_number_examples():
    assert subdivision_number(make_path(9)) == 1
    assert subdivision_number(make_cycle(8)) == 1
    assert subdivision_number(make_path(6)) == 4
    assert subdivision_number(make_star(4)) is None


@pytest.mark.parametrize("n", range(4, 25))
def test_path_subdivision_table(n):
    assert subdivision_number(make_path(n)) == PATH_SD[n % 4]
    assert crit_index(make_path(n)) == PATH_SD[n % 4]


@pytest.mark.parametrize("n", range(3, 25))
def test_cycle_subdivision_table(n):
    assert subdivision_number(make_cycle(n)) == CYCLE_SD[n % 4]


@pytest.mark.parametrize("n", range(3, 25))
def test_cycle_index_equals_subdivision_number(n):
    assert crit_index(make_cycle(n)) == CYCLE_SD[n % 4]


def test_max_safe_set_examples():
    assert max_safe_set_size(make_path(5)) == (0, [])
    assert max_safe_set_size(make_path(6))[0] == 3
    assert max_safe_set_size(make_wounded_spider(3, 2)) == (2, [(0, 1), (0, 2)])


def test_crit_report_of_the_fork():
    report = crit_report(make_wounded_spider(3, 2))
    assert report.iota == 1
    assert report.sd_iota == 2 and report.crit_q == 3
    assert report.max_safe_set == [(0, 1), (0, 2)]
    assert report.min_unsafe_witness == [(0, 1), (0, 3)]
    assert report.evaluations > 0


def test_crit_report_of_a_star_is_undefined():
    report = crit_report(make_star(3))
    assert report.is_star and report.iota == 1
    assert report.crit_q is None and report.sd_iota is None


def test_crit_index_examples():
    assert crit_index(make_path(5)) == 1
    assert crit_index(make_cycle(7)) == 2
    assert crit_index(make_wounded_spider(4, 2)) == 3
    assert crit_index(make_qk(2).graph) == 7


def test_is_q_critical():
    assert is_q_critical(make_cycle(4), 1)
    assert is_q_critical(make_path(7), 3)
    assert not is_q_critical(make_path(7), 1)
    with pytest.raises(StarGraphError):
        is_q_critical(make_star(5), 1)
    with pytest.raises(GraphError):
        is_q_critical(make_path(7), 0)


def test_disconnected_graphs_are_rejected():
    forest = make_path(5).disjoint_union(make_path(5))
    with pytest.raises(DisconnectedGraphError):
        crit_index(forest)
    with pytest.raises(DisconnectedGraphError):
        subdivision_number(forest)
    with pytest.raises(DisconnectedGraphError):
        is_iota1_critical(forest)


def test_search_budget():
    with pytest.raises(SearchBudgetExceeded):
        crit_report(make_path(6), budget=1)
    assert crit_report(make_path(6), budget=0).crit_q == 4


def test_crit_report_rejects_inconsistent_values():
    with pytest.raises(ValueError):
        CritReport(iota=1, m=4, is_star=False, sd_iota=2, crit_q=3,
                   max_safe_set=[(0, 1)], min_unsafe_witness=[(0, 1), (0, 3)])


@pytest.mark.parametrize("t, d", [(t, d) for t in range(2, 7) for d in range(1, t)])
def test_wounded_spider_index(t, d):
    assert crit_index(make_wounded_spider(t, d)) == d + 1


def test_tripartition_examples():
    p5 = make_path(5)
    report = check_tripartition(p5, {2}, {1, 3}, {0, 4})
    assert report.passed and report.first_violation is None
    assert report.leaves_in_c and report.no_odd_cycle and report.no_support_in_ac

    report = check_tripartition(p5, {0}, {1}, {2, 3, 4})
    assert not report.passed and report.first_violation == "independent"

    assert check_tripartition(make_cycle(4), {0}, {1, 3}, {2}).passed


def test_tripartition_structural_failures():
    p5 = make_path(5)
    assert check_tripartition(p5, {2}, {1, 3}, {0}).first_violation == "partition"
    assert check_tripartition(p5, {2}, {1, 3}, {0, 4, 7}).first_violation == "partition"
    assert check_tripartition(make_path(3), {0, 1, 2}, set(), set()).first_violation == "non_empty"
    report = check_tripartition(make_path(2), {0}, {1}, set())
    assert not report.passed and report.first_violation == "non_empty"
    odd = check_tripartition(make_cycle(5), {0}, {1, 4}, {2, 3})
    assert not odd.no_odd_cycle and not odd.passed


def test_tripartition_of():
    assert tripartition_of(make_path(5), {2}) == (frozenset({2}), frozenset({1, 3}), frozenset({0, 4}))


@pytest.mark.parametrize("g, expected", [
    (make_path(5), True),
    (make_cycle(4), True),
    (make_path(6), False),
    (make_path(9), True),
    (make_star(3), False),
])
def test_iota1_criticality_routes_agree(g, expected):
    for method in ("structural", "brute", "both"):
        assert is_iota1_critical(g, method=method).critical is expected


def test_iota1_verdict_names_failing_set():
    verdict = is_iota1_critical(make_path(6), method="structural")
    assert verdict.failing_set is not None and verdict.failing_condition is not None
    with pytest.raises(GraphError):
        is_iota1_critical(make_path(6), method="fast")


def test_unique_min_isolating_set():
    assert has_unique_min_isolating_set(make_path(5))
    assert not has_unique_min_isolating_set(make_cycle(4))
    assert not has_unique_min_isolating_set(make_path(2))


@pytest.mark.parametrize("g, expected", [
    (make_cycle(3), True),
    (make_cycle(4), False),
    (make_path(2), False),
])
def test_gamma1_criticality(g, expected):
    assert is_gamma1_critical(g) is expected
    assert is_gamma1_critical_direct(g) is expected


def test_single_edge_is_not_gamma1_critical():
    k2 = build_graph(2, [(0, 1)])
    # Both singletons are gamma-sets and 2-packings
    assert all(len(s) == 1 for s in enumerate_min_dominating_sets(k2).sets)
    assert not is_gamma1_critical(k2)
    assert not is_gamma1_critical_direct(k2)


@pytest.mark.parametrize("n", range(1, 7))
def test_gamma1_characterisation_matches_definition(n):
    for g in connected_graphs(n):
        assert is_gamma1_critical(g) == is_gamma1_critical_direct(g)


def _non_star_connected(max_n):
    for n in range(3, max_n + 1):
        for g in connected_graphs(n):
            if not is_star(g):
                yield g


def _check_index_bounds(g):
    report = crit_report(g, budget=0)
    assert 1 <= report.sd_iota <= report.crit_q <= g.m - 1
    assert iota_after_subdivision(g, report.max_safe_set) == report.iota
    assert iota_after_subdivision(g, report.min_unsafe_witness) > report.iota


def test_index_bounds_on_small_graphs():
    for g in _non_star_connected(6):
        _check_index_bounds(g)


@pytest.mark.slow
def test_index_bounds_on_seven_vertices():
    for g in connected_graphs(7):
        if not is_star(g):
            _check_index_bounds(g)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(5, 13))
def test_index_bounds_on_trees(n):
    for tree in free_trees(n):
        if not is_star(tree):
            report = crit_report(tree, budget=0)
            assert 1 <= report.crit_q <= tree.m - 1


def _check_near_full_subdivisions(g):
    base = iota(g)
    for size in (g.m - 1, g.m):
        for chosen in itertools.combinations(g.edges, size):
            assert iota_after_subdivision(g, chosen) >= base + 1


def test_near_full_subdivision_raises_iota():
    for g in _non_star_connected(6):
        _check_near_full_subdivisions(g)


@pytest.mark.slow
def test_near_full_subdivision_raises_iota_on_seven_vertices():
    for g in connected_graphs(7):
        if not is_star(g):
            _check_near_full_subdivisions(g)


def _check_downward_closure(g):
    base = iota(g)
    safe = set()
    for mask in range(1 << g.m):
        chosen = [e for i, e in enumerate(g.edges) if mask >> i & 1]
        if iota_after_subdivision(g, chosen) == base:
            safe.add(mask)
    for mask in safe:
        sub = mask
        while sub:
            sub = (sub - 1) & mask
            assert sub in safe


def test_safe_sets_are_downward_closed():
    for n in range(3, 6):
        for g in connected_graphs(n):
            if g.m <= 7:
                _check_downward_closure(g)


def _three_way(n):
    for tree in free_trees(n):
        if is_star(tree):
            continue
        brute = is_iota1_critical(tree, method="brute").critical
        structural = is_iota1_critical(tree, method="structural").critical
        member = fiota_membership(tree).member
        assert brute == structural == member, tree.edges
        assert brute == (crit_index(tree) == 1)
        if brute:
            assert len(enumerate_min_isolating_sets(tree).sets) == 1


@pytest.mark.parametrize("n", range(5, 10))
def test_three_way_iota1_equivalence(n):
    _three_way(n)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(10, 13))
def test_three_way_iota1_equivalence_large(n):
    _three_way(n)


def test_search_single_edge_check():
    assert not SubdivisionSearch(make_path(5)).single_edge_safe()
    assert SubdivisionSearch(make_path(6)).single_edge_safe()


def test_disconnected_edgeless_input():
    with pytest.raises(DisconnectedGraphError):
        crit_report(build_graph(2, []))
