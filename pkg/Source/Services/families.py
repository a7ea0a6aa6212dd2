"""
Families
Generators for paths, cycles, stars, spiders, wounded spiders and Q_k, and the
recursive tree family built from P_5 by the status operations O1, O2 and O3
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from Source.Services.graph_core import (
    Edge,
    EdgeSet,
    Graph,
    GraphError,
    build_graph,
    is_independent,
    is_k_packing,
    leaves,
    support_vertices,
)
from Source.Services.isolation_solver import is_isolating
from Config.logging_config import setup_logging

logger = setup_logging()


class FamilyParameterError(GraphError):
    pass


class StatusMismatchError(GraphError):
    """The anchor of an operation does not carry the status the operation requires"""


class StatusInvariantError(GraphError):
    pass


class Status(str, Enum):
    A = "A"
    B = "B"
    C = "C"


class Operation(str, Enum):
    O1 = "O1"
    O2 = "O2"
    O3 = "O3"


# Status the anchor must have, and statuses given to the new vertices outward from it
OPERATION_RULES: Dict[Operation, Tuple[Status, Tuple[Status, ...]]] = {
    Operation.O1: (Status.B, (Status.C,)),
    Operation.O2: (Status.A, (Status.B, Status.C)),
    Operation.O3: (Status.C, (Status.B, Status.A, Status.B, Status.C)),
}


# Generators

def make_path(n: int) -> Graph:
    """P_n on 0..n-1 in path order"""
    if n < 1:
        raise FamilyParameterError(f"Path needs n >= 1, got {n}")
    return Graph.from_networkx(nx.path_graph(n))


def make_cycle(n: int) -> Graph:
    """C_n on 0..n-1 in cyclic order"""
    if n < 3:
        raise FamilyParameterError(f"Cycle needs n >= 3, got {n}")
    return Graph.from_networkx(nx.cycle_graph(n))


def make_star(k: int) -> Graph:
    """K_{1,k} with centre 0 and leaves 1..k"""
    if k < 0:
        raise FamilyParameterError(f"Star needs k >= 0, got {k}")
    return Graph.from_networkx(nx.star_graph(k))


def make_spider(t: int) -> Graph:
    """K_{1,t} with every edge subdivided; leg i is 2i-1 (middle) then 2i (foot)"""
    if t < 2:
        raise FamilyParameterError(f"Spider needs t >= 2, got {t}")
    edges = []
    for i in range(1, t + 1):
        edges.append((0, 2 * i - 1))
        edges.append((2 * i - 1, 2 * i))
    return build_graph(2 * t + 1, edges)


def make_wounded_spider(t: int, d: int) -> Graph:
    """
    d-wounded spider S_{t,t-d}: K_{1,t} with t-d of its edges subdivided

    Args:
        t: Number of legs (t >= 2)
        d: Number of legs left unsubdivided (1 <= d <= t-1)

    Returns:
        Graph on 2t-d+1 vertices: centre 0, the d short legs 1..d, then each
        long leg as its middle vertex followed by its foot
    """
    if t < 2 or not 1 <= d <= t - 1:
        raise FamilyParameterError(f"Wounded spider needs t >= 2 and 1 <= d <= t-1, got t={t}, d={d}")
    edges = [(0, i) for i in range(1, d + 1)]
    next_id = d + 1
    for _ in range(t - d):
        edges.append((0, next_id))
        edges.append((next_id, next_id + 1))
        next_id += 2
    return build_graph(next_id, edges)


def wounded_spider_q_values(n: int) -> List[int]:
    """Criticality indices d+1 = n-2(t-d) realised by wounded spiders of order n = 2t-d+1"""
    values = set()
    for t in range(2, n):
        d = 2 * t + 1 - n
        if 1 <= d <= t - 1:
            values.add(d + 1)
    return sorted(values)


@dataclass(frozen=True)
class QkResult:
    graph: Graph
    a_k: EdgeSet
    v: int
    x: int
    y: int
    u: Tuple[int, ...]

    def __post_init__(self):
        k = len(self.u)
        if self.graph.n != 3 + 3 * k:
            raise FamilyParameterError(f"Q_{k} must have {3 + 3 * k} vertices, got {self.graph.n}")
        if len(self.a_k) != self.graph.m - 2:
            raise FamilyParameterError("A_k must omit exactly the edges vx and xy")


def make_qk(k: int) -> QkResult:
    """
    Q_1 is the path 0-1-2-3-4-5 with u_0 = 2, v = 3, x = 4 and the leaf y = 5.
    Q_{i+1} adds a path (u_i, middle, foot) and the edge v u_i.
    """
    if k < 1:
        raise FamilyParameterError(f"Q_k needs k >= 1, got {k}")
    edges: List[Edge] = [(i, i + 1) for i in range(5)]
    u = [2]
    v, x, y = 3, 4, 5
    for i in range(1, k):
        base = 3 + 3 * i
        u.append(base)
        edges.extend([(v, base), (base, base + 1), (base + 1, base + 2)])
    graph = build_graph(3 + 3 * k, edges)
    a_k = frozenset(e for e in graph.edges if e not in {(v, x), (x, y)})
    return QkResult(graph=graph, a_k=a_k, v=v, x=x, y=y, u=tuple(u))


# Status trees

@dataclass(frozen=True)
class TraceStep:
    op: Operation
    anchor: int
    new_vertices: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.op.value}@{self.anchor}->{','.join(str(w) for w in self.new_vertices)}"


@dataclass(frozen=True)
class StatusTree:
    tree: Graph
    status: Tuple[Status, ...]
    trace: Tuple[TraceStep, ...] = ()

    def __post_init__(self):
        if len(self.status) != self.tree.n:
            raise StatusInvariantError(f"{len(self.status)} statuses for {self.tree.n} vertices")

    def vertices_with(self, status: Status) -> FrozenSet[int]:
        return frozenset(v for v, s in enumerate(self.status) if s == status)

    def status_string(self) -> str:
        return "".join(s.value for s in self.status)


def validate_status_tree(t: StatusTree) -> List[str]:
    """Names of the violated status-tree properties; empty when all hold"""
    g = t.tree
    problems = []
    if not g.is_tree():
        return ["not a tree"]
    a_set = t.vertices_with(Status.A)
    b_set = t.vertices_with(Status.B)
    c_set = t.vertices_with(Status.C)
    leaf_list = leaves(g)
    # Forced statuses at the leaves and their supports
    if any(t.status[v] != Status.C for v in leaf_list):
        problems.append("leaf without status C")
    if any(t.status[v] != Status.B for v in support_vertices(g)):
        problems.append("support vertex without status B")
    # Status-A vertices isolate the tree and are pairwise at distance above 3
    if not is_isolating(g, a_set):
        problems.append("status-A vertices do not isolate")
    if not is_k_packing(g, a_set, 3):
        problems.append("status-A vertices are not a 3-packing")
    if not (is_independent(g, a_set | c_set) and is_independent(g, b_set)):
        problems.append("A u C or B is not independent")
    # Leaves sit in one colour class of the bipartition
    for i, v in enumerate(leaf_list):
        dist = g.distances_from(v)
        if any(dist[w] % 2 for w in leaf_list[i + 1:]):
            problems.append("two leaves at odd distance")
            break
    return problems


def _checked(t: StatusTree) -> StatusTree:
    problems = validate_status_tree(t)
    if problems:
        raise StatusInvariantError(f"Status tree invariants fail: {'; '.join(problems)}")
    return t


def fiota_base() -> StatusTree:
    """P_5 with statuses C, B, A, B, C along the path"""
    return _checked(StatusTree(
        tree=make_path(5),
        status=(Status.C, Status.B, Status.A, Status.B, Status.C),
    ))


def fiota_apply(t: StatusTree, op: Operation, anchor: int) -> StatusTree:
    """
    Attach the path of an operation at anchor; new vertices get ids n, n+1, ...

    Args:
        t: Current status tree
        op: O1 (leaf at a B vertex), O2 (2-path at an A vertex) or O3 (4-path at a C vertex)
        anchor: Vertex receiving the new path

    Returns:
        The extended StatusTree with the step appended to its trace

    Raises:
        StatusMismatchError: anchor status does not fit the operation
        StatusInvariantError: the result breaks a status-tree property
    """
    op = Operation(op)
    required, new_statuses = OPERATION_RULES[op]
    if not 0 <= anchor < t.tree.n:
        raise GraphError(f"Anchor {anchor} is out of range 0..{t.tree.n - 1}")
    if t.status[anchor] != required:
        raise StatusMismatchError(
            f"{op.value} needs an anchor with status {required.value}, vertex {anchor} has {t.status[anchor].value}"
        )
    n = t.tree.n
    new_vertices = tuple(range(n, n + len(new_statuses)))
    # The new path hangs off the anchor in id order
    chain = (anchor,) + new_vertices
    edges = list(t.tree.edges) + list(zip(chain, chain[1:]))
    step = TraceStep(op=op, anchor=anchor, new_vertices=new_vertices)
    logger.debug(f"Applying {step} to status tree on {n} vertices")
    return _checked(StatusTree(
        tree=build_graph(n + len(new_vertices), edges),
        status=t.status + new_statuses,
        trace=t.trace + (step,),
    ))


def _resolve_anchor(t: StatusTree, selector: str) -> int:
    if selector.isdigit():
        return int(selector)
    if selector == "leaf":
        candidates = leaves(t.tree)
    elif selector in Status.__members__:
        candidates = sorted(t.vertices_with(Status(selector)))
    else:
        raise FamilyParameterError(f"Unknown anchor selector {selector!r}, expected an id, 'leaf', 'A', 'B' or 'C'")
    if not candidates:
        raise FamilyParameterError(f"No vertex matches anchor selector {selector!r}")
    return candidates[0]


def fiota_build(script: str) -> StatusTree:
    """Apply an operation script such as "O3@leaf O1@1" to the base P_5"""
    t = fiota_base()
    for token in script.replace(",", " ").split():
        op_name, sep, selector = token.partition("@")
        if not sep or op_name not in Operation.__members__:
            raise FamilyParameterError(f"Malformed operation {token!r}, expected e.g. O1@3 or O3@leaf")
        t = fiota_apply(t, Operation(op_name), _resolve_anchor(t, selector))
    return t


# Membership by reverse deconstruction

@dataclass(frozen=True)
class MembershipResult:
    member: bool
    trace: Tuple[TraceStep, ...]
    status_tree: Optional[StatusTree] = None
    reason: Optional[str] = None


class _Deconstruction:
    """Peels operations off a tree along its lexicographically least diametral path"""

    def __init__(self, g: Graph):
        self.graph = g
        # Working copy; stripped vertices keep their original ids in the rest
        self.tree = g.to_networkx()
        self.steps: List[TraceStep] = []

    @property
    def order(self) -> int:
        return self.tree.number_of_nodes()

    def degree(self, v: int) -> int:
        return self.tree.degree(v)

    def diametral_path(self) -> List[int]:
        """Path between the lexicographically least pair (u, w) at maximum distance"""
        best = (-1, 0, 0)
        for u, lengths in sorted(nx.all_pairs_shortest_path_length(self.tree), key=lambda item: item[0]):
            for w, dist in lengths.items():
                if u < w and (dist > best[0] or (dist == best[0] and (u, w) < best[1:])):
                    best = (dist, u, w)
        _, start, end = best
        return nx.shortest_path(self.tree, start, end)

    def strip(self, op: Operation, anchor: int, outward: Tuple[int, ...]) -> None:
        self.tree.remove_nodes_from(outward)
        self.steps.append(TraceStep(op=op, anchor=anchor, new_vertices=outward))
        logger.debug(f"Stripped {self.steps[-1]}, {self.order} vertices left")

    def _smallest_leaf(self, centre: int, exclude: Set[int]) -> Optional[int]:
        found = sorted(w for w in self.tree[centre] if w not in exclude and self.degree(w) == 1)
        return found[0] if found else None

    def step(self) -> Optional[str]:
        """Remove one operation; returns a rejection reason or None"""
        path = self.diametral_path()
        d = len(path) - 1
        # Family members have even diameter of at least 4
        if d % 2:
            return f"diameter {d} is odd"
        if d < 4:
            return f"diameter {d} is below 4"
        v0, v1, v2, v3, v4 = path[:5]

        # Extra leaf at the support vertex next to the end: undo an O1
        if self.degree(v1) >= 3:
            x = self._smallest_leaf(v1, {v0, v2})
            self.strip(Operation.O1, v1, (x,))
            return None

        # Branch at v2: a pendant 2-path (O2) or a second support vertex (O1)
        if self.degree(v2) >= 3:
            others = sorted(w for w in self.tree[v2] if w not in (v1, v3))
            if any(self.degree(y) == 1 for y in others):
                return f"vertex {v2} next to the diametral end is a support vertex"
            y = others[0]
            if self.degree(y) >= 3:
                x = self._smallest_leaf(y, {v2})
                self.strip(Operation.O1, y, (x,))
            else:
                x = next(w for w in self.tree[y] if w != v2)
                self.strip(Operation.O2, v2, (y, x))
            return None

        # Branch at v3 may only carry leaves
        if self.degree(v3) >= 3:
            others = [w for w in self.tree[v3] if w not in (v2, v4)]
            if any(self.degree(w) != 1 for w in others):
                return f"vertex {v3} carries a branch deeper than a leaf"
            self.strip(Operation.O1, v3, (min(others),))
            return None

        # Bare 4-path hanging from v4: undo an O3
        self.strip(Operation.O3, v4, (v3, v2, v1, v0))
        return None


def _base_statuses(tree: nx.Graph) -> Optional[Dict[int, Status]]:
    """Statuses of a 5-vertex path, or None when the remainder is not P_5"""
    if tree.number_of_nodes() != 5 or not nx.is_tree(tree):
        return None
    if sorted(d for _, d in tree.degree()) != [1, 1, 2, 2, 2]:
        return None
    statuses = {}
    for v in tree:
        if tree.degree(v) == 1:
            statuses[v] = Status.C
        elif any(tree.degree(w) == 1 for w in tree[v]):
            statuses[v] = Status.B
        else:
            statuses[v] = Status.A
    return statuses


def fiota_membership(g: Graph) -> MembershipResult:
    """
    Decide whether a tree belongs to the O1/O2/O3 family grown from P_5

    The tree is peeled down to P_5 along diametral paths, then the removed
    operations are replayed forward with their anchor statuses checked.

    Args:
        g: A tree

    Returns:
        MembershipResult with the removal trace; members also carry their StatusTree
        in the input labelling and the forward construction trace

    Raises:
        GraphError: g is not a tree
    """
    if not g.is_tree():
        raise GraphError(f"Membership is decided for trees only (n={g.n}, m={g.m})")
    work = _Deconstruction(g)

    def reject(reason: str) -> MembershipResult:
        logger.debug(f"Tree with edges {list(g.edges)} rejected: {reason}")
        return MembershipResult(member=False, trace=tuple(work.steps), reason=reason)

    while work.order > 5:
        reason = work.step()
        if reason is not None:
            return reject(reason)
    if work.order < 5:
        return reject(f"reduced to {work.order} vertices, below P_5")
    statuses = _base_statuses(work.tree)
    if statuses is None:
        return reject("the 5-vertex remainder is not P_5")

    forward = tuple(reversed(work.steps))
    for step in forward:
        required, new_statuses = OPERATION_RULES[step.op]
        if statuses[step.anchor] != required:
            return reject(
                f"{step.op.value} anchor {step.anchor} has status {statuses[step.anchor].value}, "
                f"needs {required.value}"
            )
        statuses.update(zip(step.new_vertices, new_statuses))

    status_tree = StatusTree(tree=g, status=tuple(statuses[v] for v in range(g.n)), trace=forward)
    problems = validate_status_tree(status_tree)
    if problems:
        return reject(f"replayed statuses break {problems[0]}")
    return MembershipResult(member=True, trace=tuple(work.steps), status_tree=status_tree)
