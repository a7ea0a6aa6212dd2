"""
Analysis
Single-graph analysis document combining structure, isolation, criticality,
tripartition verdicts, family membership and optionally domination
"""

from typing import List, Optional

from pydantic import BaseModel

from Config.config import ANALYSIS_MAX_SETS
from Source.Services.criticality import (
    CriticalityDivergence,
    SearchBudgetExceeded,
    check_tripartition,
    crit_report,
    is_gamma1_critical,
    tripartition_of,
)
from Source.Services.families import fiota_membership
from Source.Services.graph_core import Edge, Graph, StructureReport, classify
from Source.Services.graph_io import encode_graph6
from Source.Services.isolation_solver import enumerate_min_isolating_sets, gamma
from Config.logging_config import setup_logging

logger = setup_logging()


class TripartitionVerdict(BaseModel):
    min_set: List[int]
    passed: bool
    first_violation: Optional[str] = None


class AnalysisDocument(BaseModel):
    graph6: str
    n: int
    m: int
    structure: StructureReport
    iota: int
    min_isolating_set_count: int
    min_isolating_sets: List[List[int]]
    min_isolating_sets_truncated: bool
    criticality: str
    sd_iota: Optional[int] = None
    crit_q: Optional[int] = None
    max_safe_set: Optional[List[Edge]] = None
    min_unsafe_witness: Optional[List[Edge]] = None
    tripartitions: List[TripartitionVerdict]
    is_iota1: Optional[bool] = None
    fiota_member: Optional[bool] = None
    fiota_trace: Optional[List[str]] = None
    fiota_reason: Optional[str] = None
    gamma: Optional[int] = None
    gamma1_critical: Optional[bool] = None


def analyze_graph(
    g: Graph,
    include_gamma: bool = False,
    max_sets: int = ANALYSIS_MAX_SETS,
    budget: Optional[int] = None,
) -> AnalysisDocument:
    """
    Build the analysis document of a graph

    Args:
        g: Graph to analyse; criticality fields stay empty when it is disconnected
        include_gamma: Add gamma and the (gamma,1) verdict
        max_sets: Longest minimum-set list written out (the count is always complete)
        budget: Evaluation budget of the criticality search

    Returns:
        AnalysisDocument

    Raises:
        CriticalityDivergence: the tripartition verdicts contradict the computed index
    """
    logger.info(f"Analysing graph with n={g.n}, m={g.m}")
    structure = classify(g)
    family = enumerate_min_isolating_sets(g)
    # One tripartition verdict per minimum isolating set
    verdicts = []
    for min_set in family.sets:
        report = check_tripartition(g, *tripartition_of(g, min_set))
        verdicts.append(TripartitionVerdict(
            min_set=sorted(min_set), passed=report.passed, first_violation=report.first_violation,
        ))

    fields = {}
    if not structure.connected:
        fields["criticality"] = "undefined (disconnected)"
    elif structure.is_star:
        fields["criticality"] = "undefined (star)"
        fields["is_iota1"] = False
    else:
        try:
            crit = crit_report(g, budget)
        except SearchBudgetExceeded as e:
            logger.warning(f"Analysis of {encode_graph6(g)}: {e}")
            fields["criticality"] = "budget exceeded"
        else:
            fields.update(
                criticality="defined",
                sd_iota=crit.sd_iota,
                crit_q=crit.crit_q,
                max_safe_set=crit.max_safe_set,
                min_unsafe_witness=crit.min_unsafe_witness,
                is_iota1=crit.crit_q == 1,
            )
            # q = 1 exactly when every tripartition is critical
            if (crit.crit_q == 1) != all(v.passed for v in verdicts):
                raise CriticalityDivergence(
                    f"crit_q={crit.crit_q} contradicts the tripartition verdicts for {encode_graph6(g)}"
                )

    if structure.is_tree:
        membership = fiota_membership(g)
        fields.update(
            fiota_member=membership.member,
            fiota_trace=[str(step) for step in membership.trace],
            fiota_reason=membership.reason,
        )
    if include_gamma:
        fields["gamma"] = gamma(g)
        if structure.connected:
            fields["gamma1_critical"] = is_gamma1_critical(g)

    return AnalysisDocument(
        graph6=encode_graph6(g),
        n=g.n,
        m=g.m,
        structure=structure,
        iota=family.iota,
        min_isolating_set_count=family.count,
        min_isolating_sets=family.as_lists()[:max_sets],
        min_isolating_sets_truncated=family.count > max_sets,
        tripartitions=verdicts[:max_sets],
        **fields,
    )
