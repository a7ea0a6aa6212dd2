"""
Isolation Solver
Exact isolation number iota(G) and domination number gamma(G):
branching search over the edge-cover reformulation for any graph,
and a rooted-tree dynamic program for forests
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from Source.Services.graph_core import Edge, Graph, NotAForestError
from Config.logging_config import setup_logging

logger = setup_logging()

# Larger than any reachable state cost
INF = 1 << 30

VertexSets = Tuple[FrozenSet[int], ...]


@dataclass(frozen=True)
class MinSetFamily:
    """All minimum sets of a graph in lexicographic order of their sorted members"""
    sets: VertexSets
    iota: int

    def __post_init__(self):
        if any(len(s) != self.iota for s in self.sets):
            raise ValueError("Every set of the family must have size iota")
        if len(set(self.sets)) != len(self.sets):
            raise ValueError("Minimum-set family contains duplicates")

    @property
    def count(self) -> int:
        return len(self.sets)

    def as_lists(self) -> List[List[int]]:
        return [sorted(s) for s in self.sets]


def _canonical_order(found: Iterable[FrozenSet[int]]) -> VertexSets:
    return tuple(sorted(set(found), key=lambda s: tuple(sorted(s))))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class IsolationSearch:
    """
    Exact search on a graph given as adjacency lists.

    A set D isolates G iff every edge has an endpoint in N[D]. The search picks
    the first edge with no endpoint covered and branches on the vertices of
    N[u] | N[v]; a branch is cut when the uncovered edges cannot be covered by
    the remaining budget even if every choice covered the best possible count.
    """

    def __init__(self, n: int, adjacency: Sequence[Sequence[int]], edges: Sequence[Edge]):
        self.n = n
        self.closed = []
        for v in range(n):
            mask = 1 << v
            for w in adjacency[v]:
                mask |= 1 << w
            self.closed.append(mask)
        self.edges = list(edges)
        self.edge_masks = [(1 << u) | (1 << v) for u, v in self.edges]
        self.full = (1 << n) - 1
        # edges touching N[w]: the most one chosen vertex can ever cover
        self.max_cover = max(
            (sum(1 for em in self.edge_masks if em & self.closed[w]) for w in range(n)),
            default=0,
        )
        self.max_closed = max((bin(c).count("1") for c in self.closed), default=0)

    @classmethod
    def for_graph(cls, g: Graph) -> "IsolationSearch":
        return cls(g.n, g.adjacency, g.edges)

    def _uncovered(self, covered: int) -> Tuple[int, int]:
        count = 0
        first = -1
        for i, em in enumerate(self.edge_masks):
            if not em & covered:
                if first < 0:
                    first = i
                count += 1
        return count, first

    def covers(self, vertices: Iterable[int]) -> bool:
        covered = 0
        for v in vertices:
            covered |= self.closed[v]
        return self._uncovered(covered)[0] == 0

    def exists(self, k: int, covered: int = 0) -> bool:
        """True iff some set of at most k further vertices isolates the graph"""
        count, first = self._uncovered(covered)
        if count == 0:
            return True
        if k == 0 or count > k * self.max_cover:
            return False
        # Some vertex of N[u] | N[v] must be chosen to cover edge uv
        u, v = self.edges[first]
        for w in _bits(self.closed[u] | self.closed[v]):
            if self.exists(k - 1, covered | self.closed[w]):
                return True
        return False

    def minimum(self) -> int:
        """Smallest k admitting an isolating set, by iterative deepening"""
        k = 0
        while not self.exists(k):
            k += 1
        return k

    def collect(self, k: int) -> VertexSets:
        """All isolating sets of size exactly k, assuming k is the optimum"""
        found: Set[FrozenSet[int]] = set()
        self._collect(k, 0, frozenset(), found)
        return _canonical_order(found)

    def _collect(self, k: int, covered: int, chosen: FrozenSet[int], found: Set[FrozenSet[int]]) -> None:
        count, first = self._uncovered(covered)
        if count == 0:
            found.add(chosen)
            return
        if k == 0 or count > k * self.max_cover:
            return
        u, v = self.edges[first]
        for w in _bits(self.closed[u] | self.closed[v]):
            if w not in chosen:
                self._collect(k - 1, covered | self.closed[w], chosen | {w}, found)

    # Domination (K_1-isolation)

    def _first_undominated(self, covered: int) -> Tuple[int, int]:
        rest = self.full & ~covered
        if not rest:
            return 0, -1
        return bin(rest).count("1"), (rest & -rest).bit_length() - 1

    def dominates_within(self, k: int, covered: int = 0) -> bool:
        count, u = self._first_undominated(covered)
        if count == 0:
            return True
        if k == 0 or count > k * self.max_closed:
            return False
        return any(self.dominates_within(k - 1, covered | self.closed[w]) for w in _bits(self.closed[u]))

    def minimum_dominating(self) -> int:
        k = 0
        while not self.dominates_within(k):
            k += 1
        return k

    def collect_dominating(self, k: int) -> VertexSets:
        """All dominating sets of size exactly k, assuming k is the optimum"""
        found: Set[FrozenSet[int]] = set()
        self._collect_dominating(k, 0, frozenset(), found)
        return _canonical_order(found)

    def _collect_dominating(self, k: int, covered: int, chosen: FrozenSet[int], found: Set[FrozenSet[int]]) -> None:
        count, u = self._first_undominated(covered)
        if count == 0:
            found.add(chosen)
            return
        if k == 0 or count > k * self.max_closed:
            return
        for w in _bits(self.closed[u]):
            if w not in chosen:
                self._collect_dominating(k - 1, covered | self.closed[w], chosen | {w}, found)


def subdivided_search(g: Graph, edge_mask: int) -> IsolationSearch:
    """IsolationSearch on G_F where F is given as a bitmask over g.edges"""
    n = g.n
    adjacency: List[List[int]] = [list(g.adjacency[v]) for v in range(n)]
    edges: List[Edge] = []
    for i, (u, v) in enumerate(g.edges):
        if edge_mask >> i & 1:
            w = n
            n += 1
            adjacency[u].remove(v)
            adjacency[v].remove(u)
            adjacency[u].append(w)
            adjacency[v].append(w)
            adjacency.append([u, v])
            edges.append((u, w))
            edges.append((v, w))
        else:
            edges.append((u, v))
    return IsolationSearch(n, adjacency, edges)


class TreeIsolationSolver:
    """
    Rooted-tree dynamic program for iota on forests.

    Per vertex v (relative to its own subtree and its parent) the states are
      a: v in D
      b: v not in D, dominated by a child in D
      c: v not in D, undominated below, parent must be in D
      d: v not in D and never dominated, so every neighbour must be dominated
    A subdivided edge contributes a virtual vertex with the child as its only child.
    """

    def __init__(self, g: Graph):
        if not g.is_forest():
            raise NotAForestError(f"Graph with {g.n} vertices and {g.m} edges is not a forest")
        self.graph = g
        self.order: List[int] = []
        self.parent = [-1] * g.n
        self.parent_edge = [-1] * g.n
        self.roots: List[int] = []
        forest = g.to_networkx()
        seen = [False] * g.n
        # BFS from the least unseen vertex of each component, parents before children
        for root in range(g.n):
            if seen[root]:
                continue
            seen[root] = True
            self.roots.append(root)
            self.order.append(root)
            for v, w in nx.bfs_edges(forest, root):
                seen[w] = True
                self.parent[w] = v
                self.parent_edge[w] = g.edge_index[(min(v, w), max(v, w))]
                self.order.append(w)

    def iota(self, edge_mask: int = 0) -> int:
        """iota of the forest with the edges in edge_mask subdivided"""
        n = self.graph.n
        a_acc = [0] * n
        b_sum = [0] * n
        b_delta = [INF] * n
        c_acc = [0] * n
        d_acc = [0] * n
        total = 0
        # Leaves first, so every child is folded into its parent's accumulators
        for v in reversed(self.order):
            a = 1 + a_acc[v]
            b = b_sum[v] + b_delta[v]
            c = c_acc[v]
            d = d_acc[v]
            p = self.parent[v]
            if p < 0:
                total += min(a, b, d)
                continue
            # Route the child through the virtual vertex on a subdivided edge
            if edge_mask >> self.parent_edge[v] & 1:
                a, b, c, d = 1 + min(a, b, c), a, min(b, d), b
            # b needs at least one child in D, tracked as the cheapest upgrade
            a_acc[p] += min(a, b, c)
            m = min(a, b, d)
            b_sum[p] += m
            if a - m < b_delta[p]:
                b_delta[p] = a - m
            c_acc[p] += min(b, d)
            d_acc[p] += b
        return total


def _check_set(g: Graph, vertices: Iterable[int]) -> FrozenSet[int]:
    return g.check_vertices(vertices)


def is_isolating(g: Graph, vertices: Iterable[int]) -> bool:
    """E(G - N[D]) is empty"""
    chosen = _check_set(g, vertices)
    return IsolationSearch.for_graph(g).covers(chosen)


def is_dominating(g: Graph, vertices: Iterable[int]) -> bool:
    """N[D] is the whole vertex set"""
    chosen = _check_set(g, vertices)
    covered = 0
    for v in chosen:
        covered |= g.closed_masks[v]
    return covered == (1 << g.n) - 1


def iota_bruteforce(g: Graph) -> int:
    """iota by exact branching search, valid for any graph"""
    return IsolationSearch.for_graph(g).minimum()


def iota_tree(g: Graph) -> int:
    return TreeIsolationSolver(g).iota()


def iota(g: Graph) -> int:
    """Tree dynamic program when g is a forest, exact search otherwise"""
    if g.is_forest():
        return iota_tree(g)
    logger.debug(f"Exact isolation search on n={g.n}, m={g.m}")
    return iota_bruteforce(g)


def enumerate_min_isolating_sets(g: Graph, known_iota: Optional[int] = None) -> MinSetFamily:
    """
    Every minimum isolating set, canonically ordered

    Args:
        g: Any graph
        known_iota: iota(g) if already computed

    Returns:
        MinSetFamily with all sets of size iota(g) that isolate g
    """
    search = IsolationSearch.for_graph(g)
    k = known_iota if known_iota is not None else search.minimum()
    sets = search.collect(k)
    logger.debug(f"Found {len(sets)} minimum isolating sets of size {k} (n={g.n}, m={g.m})")
    return MinSetFamily(sets=sets, iota=k)


def gamma(g: Graph) -> int:
    """
    Domination number of g

    Args:
        g: Any graph

    Returns:
        Size of a smallest vertex set D with N[D] = V(G)
    """
    return IsolationSearch.for_graph(g).minimum_dominating()


def enumerate_min_dominating_sets(g: Graph) -> MinSetFamily:
    """Every minimum dominating set, canonically ordered; the family's iota field holds gamma"""
    search = IsolationSearch.for_graph(g)
    k = search.minimum_dominating()
    sets = search.collect_dominating(k)
    logger.debug(f"Found {len(sets)} minimum dominating sets of size {k} (n={g.n}, m={g.m})")
    return MinSetFamily(sets=sets, iota=k)
