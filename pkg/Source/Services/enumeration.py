"""
Enumeration
Isomorph-free generation of free trees and small connected graphs, with
centre-rooted canonical forms for trees
"""

from collections import defaultdict
from functools import lru_cache
from typing import Dict, List, Tuple

import networkx as nx

from Config.config import CONNECTED_GRAPHS_MAX_N
from Source.Services.graph_core import Graph, GraphError, NotAForestError, build_graph
from Source.Services.graph_io import encode_graph6
from Config.logging_config import setup_logging

logger = setup_logging()

# Free trees by order (OEIS A000055)
TREE_COUNTS: Dict[int, int] = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106,
    11: 235, 12: 551, 13: 1301, 14: 3159, 15: 7741, 16: 19320,
}

# Connected graphs by order (OEIS A001349)
CONNECTED_GRAPH_COUNTS: Dict[int, int] = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def tree_centres(g: Graph) -> List[int]:
    """The one or two centre vertices of a tree"""
    if not g.is_tree():
        raise NotAForestError(f"Graph with {g.n} vertices and {g.m} edges is not a tree")
    return sorted(nx.center(g.to_networkx()))


def _rooted_codes(g: Graph, root: int) -> Tuple[Dict[int, str], Dict[int, List[int]]]:
    """AHU codes of every rooted subtree, with children sorted by code"""
    bfs_edges = list(nx.bfs_edges(g.to_networkx(), root))
    order = [root] + [child for _, child in bfs_edges]
    children: Dict[int, List[int]] = defaultdict(list)
    for parent, child in bfs_edges:
        children[parent].append(child)
    # Children before parents, so every child code exists when its parent is coded
    codes: Dict[int, str] = {}
    for v in reversed(order):
        children[v].sort(key=lambda c: codes[c])
        codes[v] = "(" + "".join(codes[c] for c in children[v]) + ")"
    return codes, children


def canonical_tree(g: Graph) -> Graph:
    """
    Relabel a tree canonically: root at the centre with the smaller AHU code,
    order children by their codes and number vertices in preorder.
    Isomorphic trees map to identical graphs.
    """
    best = None
    for root in tree_centres(g):
        codes, children = _rooted_codes(g, root)
        if best is None or codes[root] < best[0]:
            best = (codes[root], root, children)
    _, root, children = best

    labels: Dict[int, int] = {}
    stack = [root]
    while stack:
        v = stack.pop()
        labels[v] = len(labels)
        stack.extend(reversed(children[v]))
    return build_graph(g.n, [(labels[u], labels[v]) for u, v in g.edges])


def canonical_code(g: Graph) -> str:
    """graph6 code of the canonical relabelling, equal for isomorphic trees"""
    return encode_graph6(canonical_tree(g))


def free_trees(n: int) -> List[Graph]:
    """
    One canonically labelled representative per isomorphism class of trees on n vertices

    Args:
        n: Order (n >= 1)

    Returns:
        Trees sorted by canonical graph6 code
    """
    if n < 1:
        raise GraphError(f"Tree order must be at least 1, got {n}")
    if n == 1:
        return [build_graph(1, [])]
    if n == 2:
        return [build_graph(2, [(0, 1)])]
    # Canonical graph6 codes key the classes, so duplicates surface here
    coded = {}
    for nx_tree in nx.nonisomorphic_trees(n):
        tree = canonical_tree(Graph.from_networkx(nx_tree))
        code = encode_graph6(tree)
        if code in coded:
            raise GraphError(f"Tree generator produced the isomorphism class {code} twice")
        coded[code] = tree
    logger.info(f"Generated {len(coded)} free trees on {n} vertices")
    return [coded[code] for code in sorted(coded)]


def brute_force_free_trees(n: int) -> List[Graph]:
    """
    Independent enumerator: grow every tree of order k by one pendant vertex
    at each position and keep one graph per isomorphism class
    """
    if n < 1:
        raise GraphError(f"Tree order must be at least 1, got {n}")
    level = [nx.empty_graph(1)]
    for k in range(1, n):
        buckets: Dict[Tuple[int, ...], List[nx.Graph]] = defaultdict(list)
        for tree in level:
            for v in range(k):
                grown = tree.copy()
                grown.add_edge(v, k)
                key = tuple(sorted(d for _, d in grown.degree()))
                # Isomorphism is only tested within a degree-sequence bucket
                if not any(nx.is_isomorphic(grown, rep) for rep in buckets[key]):
                    buckets[key].append(grown)
        level = [g for key in sorted(buckets) for g in buckets[key]]
    return [Graph.from_networkx(tree) for tree in level]


@lru_cache(maxsize=None)
def _connected_graphs(n: int) -> Tuple[Graph, ...]:
    if n == 1:
        return (build_graph(1, []),)
    buckets: Dict[str, List[nx.Graph]] = defaultdict(list)
    new = n - 1
    for base in _connected_graphs(n - 1):
        base_nx = base.to_networkx()
        # Every non-empty neighbourhood of the new vertex keeps the graph connected
        for subset in range(1, 1 << new):
            grown = base_nx.copy()
            grown.add_node(new)
            grown.add_edges_from((v, new) for v in range(new) if subset >> v & 1)
            key = nx.weisfeiler_lehman_graph_hash(grown)
            if not any(nx.is_isomorphic(grown, rep) for rep in buckets[key]):
                buckets[key].append(grown)
    result = tuple(Graph.from_networkx(g) for key in sorted(buckets) for g in buckets[key])
    logger.info(f"Generated {len(result)} connected graphs on {n} vertices")
    return result


def connected_graphs(n: int) -> List[Graph]:
    """One representative per isomorphism class of connected graphs on n vertices (1 <= n <= 8)"""
    if not 1 <= n <= CONNECTED_GRAPHS_MAX_N:
        raise GraphError(f"Connected graphs are enumerated for 1 <= n <= {CONNECTED_GRAPHS_MAX_N}, got {n}")
    return list(_connected_graphs(n))
