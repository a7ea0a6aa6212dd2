"""
Isolation Criticality Toolkit - command line

Graph arguments are inline graph6, @path for a file (graph6 or edge list) or
"-" for standard input, so commands can be piped:

    python main.py gen wounded-spider 4 2 | python main.py crit-index

Optional environment settings (see Config/config.py):
- GRAPHCRIT_WORKERS (default survey worker count)
- GRAPHCRIT_EVAL_BUDGET, GRAPHCRIT_RECHECK_FRACTION, GRAPHCRIT_ANALYSIS_MAX_SETS
- GRAPHCRIT_LOG_DIR, GRAPHCRIT_LOG_LEVEL
"""

import functools
import json
import sys

import click

from Config.logging_config import setup_logging
from Config.config import ANALYSIS_MAX_SETS, DEFAULT_WORKERS, RECHECK_FRACTION, SURVEY_DEFAULT_MAX_N
from Source.Services.analysis import analyze_graph
from Source.Services.criticality import METHODS, crit_report, is_iota1_critical, subdivision_number
from Source.Services.enumeration import free_trees
from Source.Services.families import (
    FamilyParameterError,
    fiota_build,
    make_cycle,
    make_path,
    make_qk,
    make_spider,
    make_star,
    make_wounded_spider,
)
from Source.Services.graph_core import Graph, GraphError, is_star
from Source.Services.graph_io import encode_graph6, format_edge_list, read_graph_argument
from Source.Services.isolation_solver import iota as compute_iota
from Source.Services.survey import (
    SurveyOptions,
    read_survey_csv,
    recheck_records,
    survey as run_survey,
    verify_open_problem,
)

# Initialize logger
logger = setup_logging()

STAR_UNDEFINED = "undefined (star)"

# Family name -> (generator, number of integer parameters)
FAMILIES = {
    "path": (make_path, 1),
    "cycle": (make_cycle, 1),
    "star": (make_star, 1),
    "spider": (make_spider, 1),
    "wounded-spider": (make_wounded_spider, 2),
    "qk": (lambda k: make_qk(k).graph, 1),
}


def domain_errors(command):
    """Report domain and I/O failures as a one-line error with exit code 1"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (GraphError, OSError) as e:
            logger.error(f"{command.__name__.replace('_', '-')} failed: {e}")
            raise click.ClickException(str(e)) from e
    return wrapper


def load_graph(argument: str) -> Graph:
    return read_graph_argument(argument, sys.stdin)


def emit_json(model) -> None:
    click.echo(json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2))


def exit_for_star() -> None:
    click.echo(STAR_UNDEFINED)
    click.get_current_context().exit(2)


graph_argument = click.argument("graph", default="-", required=False)


@click.group()
def cli():
    """Isolation numbers, subdivision criticality and the tree survey."""


@cli.command()
@graph_argument
@click.option("--gamma", "include_gamma", is_flag=True, help="Also report gamma and the (gamma,1) verdict.")
@click.option("--max-sets", default=ANALYSIS_MAX_SETS, show_default=True, type=click.IntRange(min=1),
              help="Longest minimum isolating set list to print.")
@domain_errors
def analyze(graph: str, include_gamma: bool, max_sets: int):
    """Full analysis of GRAPH as JSON."""
    emit_json(analyze_graph(load_graph(graph), include_gamma=include_gamma, max_sets=max_sets))


@cli.command()
@graph_argument
@domain_errors
def iota(graph: str):
    """Isolation number of GRAPH."""
    click.echo(compute_iota(load_graph(graph)))


@cli.command()
@graph_argument
@domain_errors
def sd(graph: str):
    """Isolation subdivision number of a connected GRAPH."""
    g = load_graph(graph)
    value = subdivision_number(g)
    if value is None:
        exit_for_star()
    click.echo(value)


@cli.command("crit-index")
@graph_argument
@domain_errors
def crit_index(graph: str):
    """Criticality index q of a connected GRAPH."""
    report = crit_report(load_graph(graph))
    if report.is_star:
        exit_for_star()
    click.echo(report.crit_q)


@cli.command("check-crit1")
@graph_argument
@click.option("--method", type=click.Choice(METHODS), default="both", show_default=True,
              help="structural: critical tripartitions; brute: single subdivisions; both: cross-check.")
@domain_errors
def check_crit1(graph: str, method: str):
    """Decide whether GRAPH is (iota,1)-critical."""
    verdict = is_iota1_critical(load_graph(graph), method=method)
    click.echo("true" if verdict.critical else "false")


@cli.command()
@click.argument("family", type=click.Choice(sorted(list(FAMILIES) + ["fiota"])))
@click.argument("params", nargs=-1)
@click.option("--graph6", "output", flag_value="graph6", default=True, help="Write graph6 (default).")
@click.option("--edgelist", "output", flag_value="edgelist", help="Write the 'n m' edge-list format.")
@domain_errors
def gen(family: str, params, output: str):
    """Generate a member of FAMILY; fiota takes an operation script such as 'O3@leaf O1@1'."""
    if family == "fiota":
        g = fiota_build(" ".join(params)).tree
    else:
        generator, arity = FAMILIES[family]
        if len(params) != arity:
            raise FamilyParameterError(f"{family} takes {arity} integer parameter(s), got {len(params)}")
        try:
            values = [int(p) for p in params]
        except ValueError:
            raise FamilyParameterError(f"{family} parameters must be integers, got {' '.join(params)}")
        g = generator(*values)
    if output == "edgelist":
        click.echo(format_edge_list(g), nl=False)
    else:
        click.echo(encode_graph6(g))


@cli.command("enum-trees")
@click.option("--n", "order", required=True, type=click.IntRange(min=1), help="Tree order.")
@click.option("--non-star", is_flag=True, help="Skip the star K_{1,n-1}.")
@domain_errors
def enum_trees(order: int, non_star: bool):
    """Print every tree of the given order once, as canonical graph6."""
    for tree in free_trees(order):
        if non_star and is_star(tree):
            continue
        click.echo(encode_graph6(tree))


@cli.command()
@click.option("--max-n", required=True, type=int, help="Largest order surveyed.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False), help="CSV destination.")
@click.option("--workers", default=DEFAULT_WORKERS, show_default=True, envvar="GRAPHCRIT_WORKERS",
              show_envvar=True, type=click.IntRange(min=1), help="Worker processes.")
@click.option("--allow-large", is_flag=True, help=f"Allow orders above {SURVEY_DEFAULT_MAX_N} (up to 16).")
@click.option("--include-graphs", is_flag=True, help="Survey all connected non-star graphs (orders up to 8).")
@click.option("--recheck-fraction", default=RECHECK_FRACTION, show_default=True, type=click.FloatRange(0, 1),
              help="Fraction of rows re-verified after the run.")
@domain_errors
def survey(max_n: int, out_path: str, workers: int, allow_large: bool, include_graphs: bool, recheck_fraction: float):
    """Criticality survey of all non-star trees of order 5..MAX_N into a CSV."""
    options = SurveyOptions(workers=workers, allow_large=allow_large, tree_only=not include_graphs)
    records = run_survey(max_n, options, out_path)
    checked = recheck_records(records, recheck_fraction)
    flagged = sum(1 for r in records if r.flagged)
    click.echo(f"{len(records)} rows written to {out_path} ({flagged} flagged, {checked} re-verified)", err=True)


@cli.command("gap-report")
@click.option("--max-n", required=True, type=int, help="Largest order reported.")
@click.option("--from", "from_csv", type=click.Path(exists=True, dir_okay=False), help="Reuse a survey CSV.")
@click.option("--workers", default=DEFAULT_WORKERS, show_default=True, envvar="GRAPHCRIT_WORKERS",
              show_envvar=True, type=click.IntRange(min=1), help="Worker processes when surveying.")
@click.option("--allow-large", is_flag=True, help=f"Allow orders above {SURVEY_DEFAULT_MAX_N} (up to 16).")
@domain_errors
def gap_report(max_n: int, from_csv: str, workers: int, allow_large: bool):
    """Realised and unrealised criticality indices per order, as JSON."""
    records = read_survey_csv(from_csv) if from_csv else None
    options = SurveyOptions(workers=workers, allow_large=allow_large)
    emit_json(verify_open_problem(max_n, records=records, options=options))


if __name__ == "__main__":
    cli()
