"""
Survey
Criticality survey over all non-star trees (or small connected graphs) up to a
given order, its CSV persistence, spot re-verification and the gap report of
realised and unrealised criticality indices
"""

import csv
import os
import random
from functools import partial
from itertools import combinations
from multiprocessing import Pool
from typing import Dict, Iterable, List, Optional

from pydantic import BaseModel, field_serializer, model_validator
from tqdm import tqdm

from Config.config import (
    CRIT_EVAL_BUDGET,
    DEFAULT_WORKERS,
    RECHECK_FRACTION,
    SURVEY_DEFAULT_MAX_N,
    SURVEY_LARGE_MAX_N,
    SURVEY_MIN_N,
    CONNECTED_GRAPHS_MAX_N,
)
from Source.Services.criticality import SearchBudgetExceeded, crit_report, iota_after_subdivision
from Source.Services.enumeration import TREE_COUNTS, connected_graphs, free_trees
from Source.Services.families import wounded_spider_q_values
from Source.Services.graph_core import GraphError, is_star
from Source.Services.graph_io import decode_graph6, encode_graph6
from Source.Services.isolation_solver import iota
from Config.logging_config import setup_logging

logger = setup_logging()

CSV_HEADER = ["n", "m", "graph6", "iota", "crit_q", "parity_gap", "is_iota1"]


class SurveyIntegrityError(GraphError):
    """A survey row or the gap-report bookkeeping fails re-verification"""


class SurveyRecord(BaseModel):
    n: int
    m: int
    graph6: str
    iota: int
    crit_q: Optional[int] = None
    parity_gap: Optional[int] = None
    is_iota1: Optional[bool] = None

    @model_validator(mode="after")
    def check_row(self):
        if self.crit_q is None:
            if self.parity_gap is not None or self.is_iota1 is not None:
                raise ValueError("Budget-flagged rows carry no parity gap or (iota,1) verdict")
            return self
        if not 1 <= self.crit_q <= self.m - 1:
            raise ValueError(f"crit_q={self.crit_q} outside [1, m-1] for m={self.m}")
        if self.parity_gap != self.m - self.crit_q:
            raise ValueError(f"parity_gap must be m - crit_q = {self.m - self.crit_q}")
        if self.is_iota1 != (self.crit_q == 1):
            raise ValueError("is_iota1 must equal crit_q == 1")
        return self

    @property
    def flagged(self) -> bool:
        return self.crit_q is None

    def csv_row(self) -> List[str]:
        def cell(value) -> str:
            if value is None:
                return ""
            if isinstance(value, bool):
                return "true" if value else "false"
            return str(value)
        return [cell(getattr(self, name)) for name in CSV_HEADER]


class SurveyOptions(BaseModel):
    workers: int = DEFAULT_WORKERS
    allow_large: bool = False
    tree_only: bool = True
    eval_budget: int = CRIT_EVAL_BUDGET
    chunksize: int = 16
    progress: bool = True


def check_survey_order(n_max: int, allow_large: bool) -> None:
    """Reject survey orders outside 5..cap, where the cap rises only with allow_large"""
    if n_max < SURVEY_MIN_N:
        raise GraphError(f"Survey order must be at least {SURVEY_MIN_N}, got {n_max}")
    if n_max > SURVEY_LARGE_MAX_N:
        raise GraphError(f"Survey order is capped at {SURVEY_LARGE_MAX_N}, got {n_max}")
    if n_max > SURVEY_DEFAULT_MAX_N and not allow_large:
        raise GraphError(f"Survey order {n_max} exceeds {SURVEY_DEFAULT_MAX_N}; pass allow_large to opt in")


def survey_record(code: str, budget: int) -> SurveyRecord:
    """Survey one graph given by its graph6 code; budget overruns give a flagged row"""
    g = decode_graph6(code)
    try:
        report = crit_report(g, budget)
    except SearchBudgetExceeded as e:
        logger.warning(f"Flagging {code} (n={g.n}): {e}")
        return SurveyRecord(n=g.n, m=g.m, graph6=code, iota=iota(g))
    return SurveyRecord(
        n=g.n,
        m=g.m,
        graph6=code,
        iota=report.iota,
        crit_q=report.crit_q,
        parity_gap=g.m - report.crit_q,
        is_iota1=report.crit_q == 1,
    )


def survey_codes(n_max: int, tree_only: bool = True) -> List[str]:
    """graph6 codes of every non-star tree (or connected graph) of order 5..n_max"""
    codes = []
    if tree_only:
        # Stars have no defined criticality index
        for n in range(SURVEY_MIN_N, n_max + 1):
            codes.extend(encode_graph6(t) for t in free_trees(n) if not is_star(t))
    else:
        for n in range(SURVEY_MIN_N, min(n_max, CONNECTED_GRAPHS_MAX_N) + 1):
            codes.extend(encode_graph6(g) for g in connected_graphs(n) if not is_star(g))
    return codes


def survey(n_max: int, options: Optional[SurveyOptions] = None, out_path: Optional[str] = None) -> List[SurveyRecord]:
    """
    Run the criticality survey

    Args:
        n_max: Largest order surveyed (5..14, up to 16 with allow_large)
        options: Worker count, budget and graph-class selection
        out_path: CSV destination, skipped when None

    Returns:
        Records sorted by order, then graph6 code
    """
    options = options or SurveyOptions()
    check_survey_order(n_max, options.allow_large)
    codes = survey_codes(n_max, options.tree_only)
    kind = "trees" if options.tree_only else "connected graphs"
    logger.info(f"Surveying {len(codes)} non-star {kind} of order {SURVEY_MIN_N}..{n_max} with {options.workers} worker(s)")

    work = partial(survey_record, budget=options.eval_budget)
    progress = dict(total=len(codes), desc="Surveying", unit="graph", disable=not options.progress)
    if options.workers > 1 and len(codes) > 1:
        with Pool(processes=options.workers) as pool:
            records = list(tqdm(pool.imap_unordered(work, codes, chunksize=options.chunksize), **progress))
    else:
        records = [work(code) for code in tqdm(codes, **progress)]

    records.sort(key=lambda r: (r.n, r.graph6))
    flagged = sum(1 for r in records if r.flagged)
    if flagged:
        logger.warning(f"{flagged} survey rows exceeded the evaluation budget and are flagged")
    logger.info(f"Surveyed {len(records)} graphs, {len(records) - flagged} resolved")
    if out_path is not None:
        write_survey_csv(records, out_path)
    return records


def write_survey_csv(records: Iterable[SurveyRecord], path: str) -> None:
    """
    Write survey rows as CSV, creating the parent directory if needed

    Args:
        records: Survey rows in output order
        path: Destination file, overwritten
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    rows = 0
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow(record.csv_row())
            rows += 1
    logger.info(f"Wrote {rows} survey rows to {path}")


def read_survey_csv(path: str) -> List[SurveyRecord]:
    """
    Load survey rows written by write_survey_csv

    Args:
        path: Survey CSV file

    Returns:
        Validated records in file order

    Raises:
        SurveyIntegrityError: wrong header or a row that fails validation
    """
    with open(path, "r", newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise SurveyIntegrityError(f"{path} does not start with the header {','.join(CSV_HEADER)}")
        records = []
        for line_number, row in enumerate(reader, start=2):
            if not row:
                continue
            values = dict(zip(CSV_HEADER, row))
            try:
                records.append(SurveyRecord(
                    n=int(values["n"]),
                    m=int(values["m"]),
                    graph6=values["graph6"],
                    iota=int(values["iota"]),
                    crit_q=int(values["crit_q"]) if values["crit_q"] else None,
                    parity_gap=int(values["parity_gap"]) if values["parity_gap"] else None,
                    is_iota1={"true": True, "false": False}.get(values["is_iota1"]),
                ))
            except (KeyError, ValueError) as e:
                raise SurveyIntegrityError(f"{path}:{line_number}: malformed survey row: {e}") from e
    logger.debug(f"Read {len(records)} survey rows from {path}")
    return records


def recheck_records(
    records: List[SurveyRecord],
    fraction: float = RECHECK_FRACTION,
    seed: int = 0,
    samples_per_row: int = 8,
) -> int:
    """
    Re-verify a random fraction of survey rows

    For each sampled row the criticality search is rerun, the stored iota and q
    must match, the safe witness of size q-1 must keep iota and sampled
    q-subsets must raise it.

    Returns:
        Number of rows re-verified

    Raises:
        SurveyIntegrityError: a sampled row does not re-verify
    """
    candidates = [r for r in records if not r.flagged]
    if not candidates or fraction <= 0:
        return 0
    rng = random.Random(seed)
    count = min(len(candidates), max(1, round(fraction * len(candidates))))
    for record in rng.sample(candidates, count):
        g = decode_graph6(record.graph6)
        report = crit_report(g, budget=0)
        if report.iota != record.iota or report.crit_q != record.crit_q:
            raise SurveyIntegrityError(
                f"{record.graph6}: stored iota={record.iota}, q={record.crit_q} but recomputed "
                f"iota={report.iota}, q={report.crit_q}"
            )
        if iota_after_subdivision(g, report.max_safe_set) != record.iota:
            raise SurveyIntegrityError(f"{record.graph6}: safe witness of size {record.crit_q - 1} changes iota")
        q_subsets = list(combinations(g.edges, record.crit_q))
        for subset in rng.sample(q_subsets, min(samples_per_row, len(q_subsets))):
            if iota_after_subdivision(g, subset) <= record.iota:
                raise SurveyIntegrityError(f"{record.graph6}: subdividing {list(subset)} keeps iota={record.iota}")
    logger.info(f"Re-verified {count} of {len(records)} survey rows")
    return count


class OrderGap(BaseModel):
    n: int
    trees: int
    surveyed: int
    unresolved: int
    realised: Dict[int, int]
    unrealised: List[int]
    absent_k: List[int]
    parity_gap: Dict[str, int]
    wounded_spider_q: List[int]

    # JSON objects only have string keys, which sort as 10 < 2
    @field_serializer("realised", when_used="json")
    def realised_as_list(self, realised: Dict[int, int]) -> List[Dict[str, int]]:
        return [{"crit_q": q, "count": count} for q, count in sorted(realised.items())]


class GapReport(BaseModel):
    n_min: int
    n_max: int
    orders: Dict[int, OrderGap]
    note: str = "Finite verification over the enumerated orders only"

    @field_serializer("orders", when_used="json")
    def orders_as_list(self, orders: Dict[int, OrderGap]) -> List[OrderGap]:
        return [orders[n] for n in sorted(orders)]


def gap_report(records: Iterable[SurveyRecord], n_max: int) -> GapReport:
    """Summarise tree rows of orders 5..n_max into realised and unrealised q values"""
    by_order: Dict[int, List[SurveyRecord]] = {n: [] for n in range(SURVEY_MIN_N, n_max + 1)}
    for record in records:
        if record.n in by_order and record.m == record.n - 1:
            by_order[record.n].append(record)

    orders = {}
    for n, rows in by_order.items():
        # Every non-star tree of the order must be present, flagged or not
        if len(rows) != TREE_COUNTS[n] - 1:
            raise SurveyIntegrityError(
                f"Order {n} has {len(rows)} tree rows, expected {TREE_COUNTS[n] - 1} non-star trees"
            )
        realised: Dict[int, int] = {}
        parity = {"even": 0, "odd": 0}
        for row in rows:
            if row.flagged:
                continue
            realised[row.crit_q] = realised.get(row.crit_q, 0) + 1
            parity["odd" if row.parity_gap % 2 else "even"] += 1
        unresolved = sum(1 for row in rows if row.flagged)
        if sum(realised.values()) + unresolved != TREE_COUNTS[n] - 1:
            raise SurveyIntegrityError(f"Order {n}: realised counts do not add up to the non-star trees")
        orders[n] = OrderGap(
            n=n,
            trees=TREE_COUNTS[n],
            surveyed=len(rows),
            unresolved=unresolved,
            realised=dict(sorted(realised.items())),
            unrealised=[q for q in range(1, n - 1) if q not in realised],
            absent_k=[k for k in range(1, (n - 2) // 2 + 1) if (n - 1) - 2 * k not in realised],
            parity_gap=parity,
            wounded_spider_q=wounded_spider_q_values(n),
        )
    logger.info(f"Gap report over orders {SURVEY_MIN_N}..{n_max}: {sum(len(o.unrealised) for o in orders.values())} unrealised q values")
    return GapReport(n_min=SURVEY_MIN_N, n_max=n_max, orders=orders)


def verify_open_problem(
    n_max: int,
    records: Optional[List[SurveyRecord]] = None,
    options: Optional[SurveyOptions] = None,
) -> GapReport:
    """Gap report from given survey rows, or from a fresh tree survey when none are given"""
    if records is None:
        records = survey(n_max, (options or SurveyOptions()).model_copy(update={"tree_only": True}))
    return gap_report(records, n_max)

