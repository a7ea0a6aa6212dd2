"""
Graph Core
Immutable simple-graph value type, structural predicates and edge subdivision
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
from pydantic import BaseModel

Edge = Tuple[int, int]
EdgeSet = FrozenSet[Edge]


class GraphError(ValueError):
    """Invalid graph construction or an argument that does not fit the graph"""


class NotAForestError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


def normalize_edge(u: int, v: int) -> Edge:
    """Order an unordered pair as (min, max)"""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Undirected simple graph on the dense vertex ids 0..n-1.

    Edges are stored sorted with u < v, so the position of an edge in
    ``edges`` is a stable index used by bitmask searches.
    """
    n: int
    edges: Tuple[Edge, ...]
    adjacency: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {self.n}")
        neighbours: List[List[int]] = [[] for _ in range(self.n)]
        previous = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise GraphError(f"Edge ({u}, {v}) is not a normalized pair inside 0..{self.n - 1}")
            if previous is not None and (u, v) <= previous:
                raise GraphError(f"Edges must be sorted and distinct, got {(u, v)} after {previous}")
            previous = (u, v)
            neighbours[u].append(v)
            neighbours[v].append(u)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(nbrs)) for nbrs in neighbours))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> EdgeSet:
        return frozenset(self.edges)

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def closed_masks(self) -> Tuple[int, ...]:
        """Bitmask of N[v] for every vertex v"""
        masks = []
        for v in range(self.n):
            mask = 1 << v
            for w in self.adjacency[v]:
                mask |= 1 << w
            masks.append(mask)
        return tuple(masks)

    def vertices(self) -> range:
        return range(self.n)

    def neighbours(self, v: int) -> Tuple[int, ...]:
        self._check_vertex(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edge_set

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise GraphError(f"Vertex {v!r} is out of range 0..{self.n - 1}")

    def check_vertices(self, vertices: Iterable[int]) -> FrozenSet[int]:
        """Frozen copy of the vertices, raising GraphError for any vertex out of range"""
        result = frozenset(vertices)
        for v in result:
            self._check_vertex(v)
        return result

    @cached_property
    def _nx(self) -> nx.Graph:
        # Read-only view shared by the structural queries below
        return self.to_networkx()

    def distances_from(self, source: int) -> List[Optional[int]]:
        """Shortest-path distances from source; None marks unreachable vertices"""
        self._check_vertex(source)
        dist: List[Optional[int]] = [None] * self.n
        for v, d in nx.single_source_shortest_path_length(self._nx, source).items():
            dist[v] = d
        return dist

    def components(self) -> List[List[int]]:
        """Connected components as sorted vertex lists, ordered by their smallest vertex"""
        return sorted(sorted(c) for c in nx.connected_components(self._nx))

    def is_connected(self) -> bool:
        # networkx rejects the null graph, which is not connected here
        return self.n > 0 and nx.is_connected(self._nx)

    def is_forest(self) -> bool:
        return self.n == 0 or nx.is_forest(self._nx)

    def is_tree(self) -> bool:
        return self.n > 0 and nx.is_tree(self._nx)

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["Graph", Dict[int, int]]:
        """
        Induced subgraph G[X] relabelled densely in increasing vertex order

        Returns:
            The subgraph and the map from old to new vertex ids
        """
        kept = sorted(self.check_vertices(vertices))
        mapping = {v: i for i, v in enumerate(kept)}
        edges = [(mapping[u], mapping[v]) for u, v in self.edges if u in mapping and v in mapping]
        return build_graph(len(kept), edges), mapping

    def remove_vertices(self, vertices: Iterable[int]) -> Tuple["Graph", Dict[int, int]]:
        """G - S, relabelled densely, with the old-to-new vertex map"""
        removed = self.check_vertices(vertices)
        return self.induced_subgraph(v for v in range(self.n) if v not in removed)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shifted = [(u + self.n, v + self.n) for u, v in other.edges]
        return build_graph(self.n + other.n, list(self.edges) + shifted)

    def add_pendant_vertex(self, anchor: int) -> "Graph":
        """New leaf n attached to anchor"""
        self._check_vertex(anchor)
        return build_graph(self.n + 1, list(self.edges) + [(anchor, self.n)])

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges)
        return nx_graph

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "Graph":
        """Convert a networkx graph, relabelling nodes densely in sorted order"""
        nodes = sorted(nx_graph.nodes())
        mapping = {node: i for i, node in enumerate(nodes)}
        edges = [(mapping[u], mapping[v]) for u, v in nx_graph.edges()]
        return build_graph(len(nodes), edges)


@dataclass(frozen=True)
class SubdivisionResult:
    graph: Graph
    new_vertex_of: Dict[Edge, int]
    origin: Tuple[Union[int, Edge], ...]


class StructureReport(BaseModel):
    n: int
    m: int
    connected: bool
    components: int
    is_forest: bool
    is_tree: bool
    is_star: bool
    bipartite: bool
    leaves: List[int]
    supports: List[int]
    diameter: Optional[int] = None


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """
    Build a graph from a vertex count and a list of pairs

    Args:
        n: Number of vertices; ids are 0..n-1
        edges: Unordered pairs of vertex ids

    Returns:
        The immutable Graph

    Raises:
        GraphError: out-of-range id, self-loop or duplicate edge
    """
    if not isinstance(n, int) or n < 0:
        raise GraphError(f"Vertex count must be a non-negative integer, got {n!r}")
    seen = set()
    for pair in edges:
        if len(pair) != 2:
            raise GraphError(f"Edge {tuple(pair)!r} is not a pair")
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"Edge ({u}, {v}) references a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"Self-loop at vertex {u} is not allowed")
        edge = normalize_edge(u, v)
        if edge in seen:
            raise GraphError(f"Duplicate edge {edge}")
        seen.add(edge)
    return Graph(n, tuple(sorted(seen)))


def edge_set(g: Graph, pairs: Iterable[Sequence[int]]) -> EdgeSet:
    """Validate a collection of pairs as a subset of E(g), each edge at most once"""
    result = set()
    for pair in pairs:
        u, v = pair
        edge = normalize_edge(u, v)
        if edge not in g.edge_set:
            raise GraphError(f"{edge} is not an edge of the graph")
        if edge in result:
            raise GraphError(f"Edge {edge} listed more than once")
        result.add(edge)
    return frozenset(result)


def subdivide(g: Graph, subdivided: Iterable[Sequence[int]]) -> SubdivisionResult:
    """
    Subdivide every edge of F once; new vertices get ids n, n+1, ... in sorted edge order

    Args:
        g: Host graph
        subdivided: The edge set F (each edge of g at most once)

    Returns:
        SubdivisionResult with G_F, the subdivision vertex of each edge and the origin of every vertex
    """
    chosen = sorted(edge_set(g, subdivided))
    new_vertex_of = {e: g.n + i for i, e in enumerate(chosen)}
    edges = []
    # Replace each chosen edge uv by the path u-w-v
    for u, v in g.edges:
        w = new_vertex_of.get((u, v))
        if w is None:
            edges.append((u, v))
        else:
            edges.append((u, w))
            edges.append((v, w))
    # Original vertices map to themselves, subdivision vertices to their edge
    origin: List[Union[int, Edge]] = list(range(g.n)) + chosen
    return SubdivisionResult(
        graph=build_graph(g.n + len(chosen), edges),
        new_vertex_of=new_vertex_of,
        origin=tuple(origin),
    )


def closed_neighborhood(g: Graph, vertices: Iterable[int]) -> FrozenSet[int]:
    """N[S]: the vertices of S together with all their neighbours"""
    chosen = g.check_vertices(vertices)
    result = set(chosen)
    for v in chosen:
        result.update(g.adjacency[v])
    return frozenset(result)


def open_neighborhood(g: Graph, vertices: Iterable[int]) -> FrozenSet[int]:
    """Union of N(v) over the given vertices (may intersect the set itself)"""
    chosen = g.check_vertices(vertices)
    result = set()
    for v in chosen:
        result.update(g.adjacency[v])
    return frozenset(result)


def is_independent(g: Graph, vertices: Iterable[int]) -> bool:
    """No edge of g has both endpoints in the set"""
    chosen = g.check_vertices(vertices)
    return all(w not in chosen for v in chosen for w in g.adjacency[v])


def is_k_packing(g: Graph, vertices: Iterable[int], k: int) -> bool:
    """
    Pairwise distances inside the set all exceed k (unreachable pairs count as infinite)
    """
    if k < 1:
        raise GraphError(f"Packing parameter must be positive, got {k}")
    chosen = sorted(g.check_vertices(vertices))
    for i, v in enumerate(chosen):
        # Everything within distance k of v, unreachable vertices never appear
        near = nx.single_source_shortest_path_length(g._nx, v, cutoff=k)
        if any(w in near for w in chosen[i + 1:]):
            return False
    return True


def is_star(g: Graph) -> bool:
    """K_{1,k} for some k >= 0, so K_1 and K_2 count as stars"""
    if g.n == 0:
        return False
    if g.m != g.n - 1:
        return False
    return any(len(g.adjacency[v]) == g.n - 1 for v in range(g.n))


def is_bipartite(g: Graph) -> bool:
    """Two-colourable, i.e. no odd cycle in any component"""
    return nx.is_bipartite(g._nx)


def leaves(g: Graph) -> List[int]:
    """Degree-one vertices in increasing order"""
    return [v for v in range(g.n) if len(g.adjacency[v]) == 1]


def support_vertices(g: Graph) -> List[int]:
    """Vertices adjacent to at least one leaf"""
    leaf_set = set(leaves(g))
    return [v for v in range(g.n) if any(w in leaf_set for w in g.adjacency[v])]


def diameter(g: Graph) -> int:
    """Largest eccentricity of a connected graph (0 for K_1)"""
    if not g.is_connected():
        raise DisconnectedGraphError("Diameter is only defined for connected graphs")
    return nx.diameter(g._nx)


def classify(g: Graph) -> StructureReport:
    """Structural summary of g: connectivity, tree and star status, leaves, supports and diameter"""
    connected = g.is_connected()
    components = nx.number_connected_components(g._nx)
    return StructureReport(
        n=g.n,
        m=g.m,
        connected=connected,
        components=components,
        is_forest=g.is_forest(),
        is_tree=g.is_tree(),
        is_star=is_star(g),
        bipartite=is_bipartite(g),
        leaves=leaves(g),
        supports=support_vertices(g),
        diameter=diameter(g) if connected else None,
    )


def require_connected(g: Graph) -> None:
    """Raise DisconnectedGraphError unless g is connected (K_1 counts as connected)"""
    if not g.is_connected():
        raise DisconnectedGraphError(f"Graph with {g.n} vertices and {g.m} edges is not connected")
