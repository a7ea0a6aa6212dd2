"""
Criticality
Subdivision number, criticality index q, the critical-tripartition test for
(iota,1)-criticality and the 2-packing test for (gamma,1)-criticality
"""

from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, model_validator

from Config.config import CRIT_EVAL_BUDGET
from Source.Services.graph_core import (
    Edge,
    Graph,
    GraphError,
    is_bipartite,
    is_independent,
    is_k_packing,
    is_star,
    leaves,
    open_neighborhood,
    require_connected,
    subdivide,
    support_vertices,
)
from Source.Services.isolation_solver import (
    TreeIsolationSolver,
    enumerate_min_dominating_sets,
    enumerate_min_isolating_sets,
    gamma,
    iota,
    subdivided_search,
)
from Config.logging_config import setup_logging

logger = setup_logging()

METHODS = ("structural", "brute", "both")


class StarGraphError(GraphError):
    """Criticality is undefined for stars K_{1,k}"""


class SearchBudgetExceeded(GraphError):
    def __init__(self, evaluations: int, budget: int):
        super().__init__(f"Criticality search stopped after {evaluations} evaluations (budget {budget})")
        self.evaluations = evaluations
        self.budget = budget


class CriticalityDivergence(GraphError):
    """The structural and brute-force (iota,1) decisions disagree"""


class CritReport(BaseModel):
    iota: int
    m: int
    is_star: bool
    sd_iota: Optional[int] = None
    crit_q: Optional[int] = None
    max_safe_set: Optional[List[Edge]] = None
    min_unsafe_witness: Optional[List[Edge]] = None
    evaluations: int = 0

    @model_validator(mode="after")
    def check_consistency(self):
        if self.is_star:
            if self.crit_q is not None or self.sd_iota is not None:
                raise ValueError("Stars have no criticality index")
            return self
        if self.crit_q is None or self.max_safe_set is None or self.min_unsafe_witness is None:
            raise ValueError("Non-star reports need crit_q and both witnesses")
        if self.crit_q != len(self.max_safe_set) + 1:
            raise ValueError(f"crit_q={self.crit_q} but the safe witness has {len(self.max_safe_set)} edges")
        if not 1 <= self.sd_iota <= self.crit_q <= self.m - 1:
            raise ValueError(f"Expected 1 <= sd={self.sd_iota} <= q={self.crit_q} <= m-1={self.m - 1}")
        if len(self.min_unsafe_witness) != self.sd_iota:
            raise ValueError("The unsafe witness must have sd_iota edges")
        return self


class TripartitionReport(BaseModel):
    passed: bool
    non_empty: bool
    partition: bool
    independent: bool = Field(description="A u C and B are independent")
    neighbourhoods: bool = Field(description="N(A) = B = N(C)")
    a_three_packing: bool
    a_has_no_leaf: bool
    first_violation: Optional[str] = None
    # Informational consequences of a critical tripartition
    no_support_in_ac: bool
    no_odd_cycle: bool
    leaves_in_c: bool
    ac_even_distances: bool


class Iota1Verdict(BaseModel):
    method: str
    critical: bool
    structural: Optional[bool] = None
    brute: Optional[bool] = None
    min_sets_checked: int = 0
    failing_set: Optional[List[int]] = None
    failing_condition: Optional[str] = None


def _mask_key(mask: int) -> Tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


class SubdivisionSearch:
    """
    Level-wise search over edge subsets F of a connected non-star graph.

    F is safe when iota(G_F) = iota(G). Safe sets are closed under taking
    subsets, so a candidate of size s is only evaluated when all of its
    (s-1)-subsets are safe. The first level holding an unsafe candidate gives
    sd_iota; the last non-empty level gives the largest safe size q - 1.
    """

    def __init__(self, g: Graph, budget: Optional[int] = None):
        require_connected(g)
        if is_star(g):
            raise StarGraphError(f"Criticality is undefined for the star on {g.n} vertices")
        self.graph = g
        self.budget = CRIT_EVAL_BUDGET if budget is None else budget
        self.evaluations = 0
        if g.is_tree():
            solver = TreeIsolationSolver(g)
            self.iota = solver.iota()
            self._safe: Callable[[int], bool] = lambda mask: solver.iota(mask) == self.iota
        else:
            self.iota = iota(g)
            self._safe = lambda mask: subdivided_search(g, mask).exists(self.iota)

    def is_safe(self, mask: int) -> bool:
        self.evaluations += 1
        if self.budget and self.evaluations > self.budget:
            raise SearchBudgetExceeded(self.evaluations, self.budget)
        return self._safe(mask)

    def edges_of(self, mask: int) -> List[Edge]:
        return [self.graph.edges[i] for i in _mask_key(mask)]

    def single_edge_safe(self) -> bool:
        """True iff some single subdivision keeps iota, i.e. q > 1"""
        return any(self.is_safe(1 << e) for e in range(self.graph.m))

    def _search(self, stop_at_unsafe: bool) -> Tuple[Optional[int], Optional[int], Optional[int], Optional[int]]:
        m = self.graph.m
        level: List[int] = [0]
        size = 0
        sd: Optional[int] = None
        unsafe_witness: Optional[int] = None
        while True:
            safe_level = set(level)
            next_level: List[int] = []
            least_unsafe: Optional[int] = None
            for mask in level:
                # Extend only by higher edge indices so each subset is built once
                for e in range(mask.bit_length(), m):
                    candidate = mask | (1 << e)
                    # Skip candidates with an unsafe (s-1)-subset
                    if any((candidate ^ (1 << b)) not in safe_level for b in _mask_key(mask)):
                        continue
                    if self.is_safe(candidate):
                        next_level.append(candidate)
                    elif least_unsafe is None or _mask_key(candidate) < _mask_key(least_unsafe):
                        least_unsafe = candidate
            # First level with an unsafe candidate fixes sd_iota
            if sd is None and least_unsafe is not None:
                sd = size + 1
                unsafe_witness = least_unsafe
                if stop_at_unsafe:
                    return sd, unsafe_witness, None, None
            if not next_level:
                return sd, unsafe_witness, size + 1, min(level, key=_mask_key)
            level = next_level
            size += 1

    def subdivision_number(self) -> Tuple[int, List[Edge]]:
        sd, unsafe_witness, _, _ = self._search(stop_at_unsafe=True)
        return sd, self.edges_of(unsafe_witness)

    def run(self) -> CritReport:
        sd, unsafe_witness, q, safe_witness = self._search(stop_at_unsafe=False)
        logger.debug(
            f"Criticality search n={self.graph.n} m={self.graph.m}: iota={self.iota} sd={sd} "
            f"q={q} after {self.evaluations} evaluations"
        )
        return CritReport(
            iota=self.iota,
            m=self.graph.m,
            is_star=False,
            sd_iota=sd,
            crit_q=q,
            max_safe_set=self.edges_of(safe_witness),
            min_unsafe_witness=self.edges_of(unsafe_witness),
            evaluations=self.evaluations,
        )


def crit_report(g: Graph, budget: Optional[int] = None) -> CritReport:
    """
    Full criticality report of a connected graph

    Args:
        g: Connected graph
        budget: Maximum number of iota evaluations (None uses GRAPHCRIT_EVAL_BUDGET, 0 is unlimited)

    Returns:
        CritReport; stars get the undefined variant with only iota filled in

    Raises:
        DisconnectedGraphError: g is not connected
        SearchBudgetExceeded: the search needed more evaluations than allowed
    """
    require_connected(g)
    if is_star(g):
        return CritReport(iota=iota(g), m=g.m, is_star=True)
    return SubdivisionSearch(g, budget).run()


def subdivision_number(g: Graph, budget: Optional[int] = None) -> Optional[int]:
    """Smallest |F| with iota(G_F) > iota(G); None for stars"""
    require_connected(g)
    if is_star(g):
        return None
    return SubdivisionSearch(g, budget).subdivision_number()[0]


def max_safe_set_size(g: Graph, budget: Optional[int] = None) -> Tuple[int, List[Edge]]:
    """Largest |F| with iota(G_F) = iota(G) and the lexicographically least such F"""
    report = SubdivisionSearch(g, budget).run()
    return len(report.max_safe_set), report.max_safe_set


def crit_index(g: Graph, budget: Optional[int] = None) -> Optional[int]:
    """Criticality index q of g, None for stars"""
    return crit_report(g, budget).crit_q


def is_q_critical(g: Graph, q: int, budget: Optional[int] = None) -> bool:
    """
    Check whether g is (iota, q)-critical

    Args:
        g: Connected non-star graph
        q: Candidate index, at least 1
        budget: Maximum number of iota evaluations

    Returns:
        True iff the criticality index of g equals q
    """
    if q < 1:
        raise GraphError(f"Criticality index must be positive, got {q}")
    return SubdivisionSearch(g, budget).run().crit_q == q


def iota_after_subdivision(g: Graph, subdivided: Iterable[Sequence[int]]) -> int:
    """iota of g with every listed edge subdivided once"""
    return iota(subdivide(g, subdivided).graph)


def _as_vertex_set(g: Graph, vertices: Iterable[int]) -> Optional[FrozenSet[int]]:
    result = frozenset(vertices)
    if all(isinstance(v, int) and 0 <= v < g.n for v in result):
        return result
    return None


def check_tripartition(g: Graph, a: Iterable[int], b: Iterable[int], c: Iterable[int]) -> TripartitionReport:
    """
    Check whether (A, B, C) is a critical tripartition of g

    Args:
        g: Any graph
        a, b, c: The three vertex sets

    Returns:
        TripartitionReport with one flag per condition; violations are reported, never raised
    """
    sets = [list(a), list(b), list(c)]
    a_set, b_set, c_set = (_as_vertex_set(g, s) for s in sets)
    in_range = a_set is not None and b_set is not None and c_set is not None
    non_empty = all(sets)
    partition = (
        in_range
        and sum(len(s) for s in sets) == g.n
        and len(a_set | b_set | c_set) == g.n
    )
    if not partition:
        # Remaining conditions only make sense on a genuine partition
        checks: Dict[str, bool] = {
            "independent": False, "neighbourhoods": False,
            "a_three_packing": False, "a_has_no_leaf": False,
        }
        flags = {"no_support_in_ac": False, "no_odd_cycle": is_bipartite(g),
                 "leaves_in_c": False, "ac_even_distances": False}
    else:
        ac = a_set | c_set
        leaf_set = set(leaves(g))
        checks = {
            "independent": is_independent(g, ac) and is_independent(g, b_set),
            "neighbourhoods": open_neighborhood(g, a_set) == b_set == open_neighborhood(g, c_set),
            "a_three_packing": is_k_packing(g, a_set, 3),
            "a_has_no_leaf": not (a_set & leaf_set),
        }
        flags = {
            "no_support_in_ac": not (ac & set(support_vertices(g))),
            "no_odd_cycle": is_bipartite(g),
            "leaves_in_c": leaf_set <= c_set,
            "ac_even_distances": _even_distances(g, ac),
        }

    order = [("partition", partition), ("non_empty", non_empty),
             ("independent", checks["independent"]), ("neighbourhoods", checks["neighbourhoods"]),
             ("a_three_packing", checks["a_three_packing"]), ("a_has_no_leaf", checks["a_has_no_leaf"])]
    first_violation = next((name for name, ok in order if not ok), None)
    return TripartitionReport(
        passed=first_violation is None,
        non_empty=non_empty,
        partition=partition,
        first_violation=first_violation,
        **checks,
        **flags,
    )


def _even_distances(g: Graph, vertices: FrozenSet[int]) -> bool:
    chosen = sorted(vertices)
    for i, v in enumerate(chosen):
        dist = g.distances_from(v)
        if any(dist[w] is not None and dist[w] % 2 for w in chosen[i + 1:]):
            return False
    return True


def tripartition_of(g: Graph, dominating: Iterable[int]) -> Tuple[FrozenSet[int], FrozenSet[int], FrozenSet[int]]:
    """(D, N(D), V - N[D]) for a vertex set D"""
    a = g.check_vertices(dominating)
    b = open_neighborhood(g, a)
    c = frozenset(v for v in range(g.n) if v not in a and v not in b)
    return a, b, c


def _structural_iota1(g: Graph) -> Iota1Verdict:
    family = enumerate_min_isolating_sets(g)
    logger.debug(f"Checking tripartitions of {family.count} minimum isolating sets (n={g.n}, m={g.m})")
    # Every minimum isolating set must induce a critical tripartition
    for min_set in family.sets:
        report = check_tripartition(g, *tripartition_of(g, min_set))
        if not report.passed:
            return Iota1Verdict(
                method="structural",
                critical=False,
                structural=False,
                min_sets_checked=family.count,
                failing_set=sorted(min_set),
                failing_condition=report.first_violation,
            )
    return Iota1Verdict(method="structural", critical=True, structural=True, min_sets_checked=family.count)


def _brute_iota1(g: Graph, budget: Optional[int]) -> bool:
    if is_star(g):
        return False
    return not SubdivisionSearch(g, budget).single_edge_safe()


def is_iota1_critical(g: Graph, method: str = "both", budget: Optional[int] = None) -> Iota1Verdict:
    """
    Decide (iota,1)-criticality

    Args:
        g: Connected graph
        method: "structural" (every minimum isolating set D gives a critical tripartition
            (D, N(D), V - N[D])), "brute" (no single subdivision keeps iota) or "both"
        budget: Evaluation budget of the brute-force route

    Returns:
        Iota1Verdict with the per-route answers

    Raises:
        CriticalityDivergence: method "both" and the two routes disagree
    """
    if method not in METHODS:
        raise GraphError(f"Unknown method {method!r}, expected one of {', '.join(METHODS)}")
    require_connected(g)

    if method == "brute":
        brute = _brute_iota1(g, budget)
        return Iota1Verdict(method="brute", critical=brute, brute=brute)

    verdict = _structural_iota1(g)
    if method == "structural":
        return verdict

    brute = _brute_iota1(g, budget)
    if brute != verdict.structural:
        logger.error(f"(iota,1) routes disagree on n={g.n} edges={list(g.edges)}: structural={verdict.structural} brute={brute}")
        raise CriticalityDivergence(
            f"Structural route says {verdict.structural}, brute-force route says {brute} for graph with edges {list(g.edges)}"
        )
    return verdict.model_copy(update={"method": "both", "brute": brute})


def has_unique_min_isolating_set(g: Graph) -> bool:
    """True iff g has exactly one minimum isolating set"""
    return enumerate_min_isolating_sets(g).count == 1


def is_gamma1_critical(g: Graph) -> bool:
    """
    Every minimum dominating set is a 2-packing

    The packing test only characterises graphs on at least three vertices.
    K_2 has singleton gamma-sets, which are trivially 2-packings, yet
    subdividing its edge gives P_3 with the same gamma, so it is not critical.

    Args:
        g: Connected graph

    Returns:
        True iff subdividing any single edge raises gamma
    """
    require_connected(g)
    if g.n == 2:
        return False
    return all(is_k_packing(g, s, 2) for s in enumerate_min_dominating_sets(g).sets)


def is_gamma1_critical_direct(g: Graph) -> bool:
    """Subdividing any single edge increases gamma"""
    require_connected(g)
    base = gamma(g)
    return all(gamma(subdivide(g, [e]).graph) > base for e in g.edges)
