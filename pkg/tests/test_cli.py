import json
from pathlib import Path

import pytest

from netan import read_graph, write_graph
from netan.cli import main

from conftest import path_graph, two_cliques_bridge


@pytest.fixture
def graph_file(tmp_path):
    g = two_cliques_bridge(5)
    f = tmp_path / "g.edges"
    write_graph(g, f)
    return str(f)


def test_generate_and_read_back(tmp_path):
    out = tmp_path / "g.edges"
    code = main(["generate", "--model", "gnp", "--n", "50", "--p", "0.1",
                 "--seed", "3", "--out", str(out)])
    assert code == 0
    g = read_graph(out)
    assert g.n == 50


def test_generate_planted_partition_writes_ground_truth(tmp_path):
    out = tmp_path / "g.edges"
    pout = tmp_path / "truth.csv"
    code = main(["generate", "--model", "plantedpartition", "--blocks", "10,10",
                 "--p-in", "0.8", "--p-out", "0.05", "--seed", "1",
                 "--out", str(out), "--partition-out", str(pout)])
    assert code == 0
    lines = pout.read_text().strip().splitlines()
    assert lines[0] == "vertex,community"
    assert len(lines) == 21


def test_centrality_csv(tmp_path, graph_file):
    out = tmp_path / "scores.csv"
    code = main(["centrality", "--measure", "betweenness", "--input", graph_file,
                 "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "vertex,score"
    assert len(lines) == 11


def test_centrality_topk(tmp_path, graph_file, capsys):
    out = tmp_path / "scores.csv"
    code = main(["centrality", "--measure", "top-k-closeness", "--k", "3",
                 "--input", graph_file, "--out", str(out)])
    assert code == 0
    assert len(out.read_text().strip().splitlines()) == 4
    assert "completed_sssps=" in capsys.readouterr().out


def test_group_json(tmp_path, graph_file):
    out = tmp_path / "grp.json"
    code = main(["group", "--measure", "degree", "--k", "2",
                 "--input", graph_file, "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["measure"] == "group_degree"
    assert len(data["members"]) == 2


def test_community_csv(tmp_path, graph_file, capsys):
    out = tmp_path / "part.csv"
    code = main(["community", "--algo", "plm", "--seed", "1",
                 "--input", graph_file, "--out", str(out)])
    assert code == 0
    assert "communities=2" in capsys.readouterr().out


def test_community_seed_expansion(tmp_path, graph_file):
    out = tmp_path / "com.json"
    code = main(["community", "--seed-vertex", "0", "--strategy", "greedy",
                 "--input", graph_file, "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert set(data["members"]) == {0, 1, 2, 3, 4}


def test_sparsify_roundtrip(tmp_path, graph_file):
    out = tmp_path / "sub.edges"
    scores = tmp_path / "scores.csv"
    code = main(["sparsify", "--scorer", "triangles", "--fraction", "0.5",
                 "--input", graph_file, "--out", str(out),
                 "--scores-out", str(scores)])
    assert code == 0
    g = read_graph(out)
    import math

    assert g.m == math.ceil(0.5 * 21)
    assert scores.read_text().startswith("edge,u,v,score")


def test_profile_json(tmp_path, graph_file):
    out = tmp_path / "report.json"
    code = main(["profile", "--input", graph_file, "--seed", "1",
                 "--no-timestamp", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["global"]["n"] == 10


def test_profile_html(tmp_path, graph_file):
    out = tmp_path / "report.html"
    code = main(["profile", "--input", graph_file, "--seed", "1",
                 "--render", "html", "--no-timestamp", "--out", str(out)])
    assert code == 0
    assert out.read_text().startswith("<!DOCTYPE html>")


# -- exit codes -----------------------------------------------------------------


def test_exit_code_usage_error():
    assert main(["centrality", "--measure", "nope"]) == 1
    assert main(["centrality", "--measure", "degree"]) == 1  # missing --input


def test_exit_code_parse_error(tmp_path):
    bad = tmp_path / "bad.edges"
    bad.write_text("0 x\n")
    assert main(["centrality", "--measure", "degree", "--input", str(bad)]) == 2


def test_exit_code_missing_file(tmp_path):
    assert main(["centrality", "--measure", "degree",
                 "--input", str(tmp_path / "nope.edges")]) == 2


def test_exit_code_precondition(tmp_path):
    g = path_graph(4)
    g.remove_edge(1, 2)
    f = tmp_path / "disc.edges"
    write_graph(g, f)
    out = tmp_path / "x.csv"
    assert main(["centrality", "--measure", "closeness", "--input", str(f),
                 "--out", str(out)]) == 3


# -- determinism -------------------------------------------------------------------


def _run_twice(argv_builder, tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"run{i}.txt"
        code = main(argv_builder(str(out)))
        assert code == 0
        outs.append(out.read_bytes())
    return outs


def test_byte_identical_reruns_every_subcommand(tmp_path, graph_file):
    cases = {
        "generate": lambda o: ["generate", "--model", "gnp", "--n", "40", "--p",
                               "0.1", "--seed", "5", "--out", o],
        "centrality": lambda o: ["centrality", "--measure", "betweenness-approx",
                                 "--epsilon", "0.1", "--seed", "5",
                                 "--input", graph_file, "--out", o],
        "group": lambda o: ["group", "--measure", "gedwalk", "--k", "2",
                            "--input", graph_file, "--out", o],
        "community": lambda o: ["community", "--algo", "plm", "--seed", "2",
                                "--input", graph_file, "--out", o],
        "sparsify": lambda o: ["sparsify", "--scorer", "random", "--fraction",
                               "0.5", "--seed", "3", "--input", graph_file,
                               "--out", o],
        "profile": lambda o: ["profile", "--input", graph_file, "--seed", "4",
                              "--no-timestamp", "--out", o],
    }
    for name, builder in cases.items():
        a, b = _run_twice(builder, tmp_path)
        assert a == b, f"{name} output changed between identical runs"
