import json

import pytest
from click.testing import CliRunner

from main import cli
from Source.Services.families import make_cycle, make_path, make_star
from Source.Services.graph_io import decode_graph6, encode_graph6


@pytest.fixture
def runner():
    return CliRunner()


def test_crit_index_of_five_path(runner):
    result = runner.invoke(cli, ["crit-index", encode_graph6(make_path(5))])
    assert result.exit_code == 0
    assert result.stdout == "1\n"


def test_generated_graph_pipes_into_crit_index(runner):
    generated = runner.invoke(cli, ["gen", "wounded-spider", "4", "2"])
    assert generated.exit_code == 0
    result = runner.invoke(cli, ["crit-index"], input=generated.stdout)
    assert result.exit_code == 0
    assert result.stdout.strip() == "3"


def test_dash_reads_graph_from_stdin(runner):
    result = runner.invoke(cli, ["iota", "-"], input=encode_graph6(make_path(6)) + "\n")
    assert result.exit_code == 0
    assert result.stdout == "2\n"


def test_iota_and_sd(runner):
    six_path = encode_graph6(make_path(6))
    assert runner.invoke(cli, ["iota", six_path]).stdout == "2\n"
    assert runner.invoke(cli, ["sd", six_path]).stdout == "4\n"


def test_check_crit1(runner):
    assert runner.invoke(cli, ["check-crit1", encode_graph6(make_cycle(4))]).stdout == "true\n"
    result = runner.invoke(cli, ["check-crit1", "--method", "brute", encode_graph6(make_path(6))])
    assert result.stdout == "false\n"


@pytest.mark.parametrize("command", ["crit-index", "sd"])
def test_star_is_undefined(runner, command):
    result = runner.invoke(cli, [command, encode_graph6(make_star(4))])
    assert result.exit_code == 2
    assert result.stdout == "undefined (star)\n"


@pytest.mark.parametrize("args", [
    ["iota", "~~bad"],
    ["crit-index", encode_graph6(make_path(5).disjoint_union(make_path(5)))],
    ["gen", "path", "0"],
    ["gen", "path", "three"],
    ["gen", "wounded-spider", "4"],
    ["gen", "fiota", "O3@leaf", "O1@2"],
    ["iota", "@does-not-exist.g6"],
])
def test_domain_errors_exit_with_one(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 1
    assert "Error" in result.output


def test_analyze_emits_json(runner):
    result = runner.invoke(cli, ["analyze", "--gamma", encode_graph6(make_path(5))])
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert document["iota"] == 1 and document["crit_q"] == 1
    assert document["min_isolating_sets"] == [[2]]
    assert document["is_iota1"] is True and document["fiota_member"] is True
    assert document["gamma"] == 2


def test_gen_edge_list(runner):
    result = runner.invoke(cli, ["gen", "--edgelist", "path", "3"])
    assert result.stdout == "3 2\n0 1\n1 2\n"


def test_gen_fiota_script(runner):
    result = runner.invoke(cli, ["gen", "fiota", "O3@leaf", "O1@1"])
    assert result.exit_code == 0
    assert decode_graph6(result.stdout.strip()).n == 10


def test_enum_trees(runner):
    result = runner.invoke(cli, ["enum-trees", "--n", "5", "--non-star"])
    assert result.exit_code == 0
    assert len(result.stdout.splitlines()) == 2
    assert len(runner.invoke(cli, ["enum-trees", "--n", "6"]).stdout.splitlines()) == 6


def test_graph_file_argument(runner, tmp_path):
    path = tmp_path / "p5.txt"
    path.write_text("5 4\n0 1\n1 2\n2 3\n3 4\n", encoding="utf-8")
    result = runner.invoke(cli, ["crit-index", f"@{path}"])
    assert result.stdout == "1\n"


def test_survey_then_gap_report(runner, tmp_path):
    out = tmp_path / "survey.csv"
    result = runner.invoke(cli, ["survey", "--max-n", "5", "--out", str(out), "--workers", "1"])
    assert result.exit_code == 0
    assert len(out.read_text(encoding="utf-8").splitlines()) == 3

    report = runner.invoke(cli, ["gap-report", "--max-n", "5", "--from", str(out)])
    assert report.exit_code == 0
    (order,) = json.loads(report.stdout)["orders"]
    assert order["n"] == 5
    assert order["realised"] == [{"crit_q": 1, "count": 1}, {"crit_q": 3, "count": 1}]
    assert order["unrealised"] == [2]


def test_survey_refuses_large_orders_without_opt_in(runner, tmp_path):
    result = runner.invoke(cli, ["survey", "--max-n", "15", "--out", str(tmp_path / "x.csv")])
    assert result.exit_code == 1
