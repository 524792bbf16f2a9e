import numpy as np
import pytest

from netan import Graph, ParseError, read_graph, write_graph
from netan.graph import connected_components

from conftest import path_graph


def edge_set(g):
    return {tuple(sorted(g.edge_endpoints(e))) for e in range(g.m)}


def test_metis_p3(tmp_path):
    f = tmp_path / "p3.metis"
    f.write_text("3 2\n2\n1 3\n2\n")
    g = read_graph(f, fmt="metis")
    assert g.n == 3 and g.m == 2
    assert edge_set(g) == {(0, 1), (1, 2)}


def test_metis_comments_skipped(tmp_path):
    f = tmp_path / "c.metis"
    f.write_text("% a comment\n3 2\n% another\n2\n1 3\n2\n")
    g = read_graph(f, fmt="metis")
    assert g.m == 2


def test_metis_header_mismatch(tmp_path):
    f = tmp_path / "bad.metis"
    f.write_text("4 5\n2\n1 3\n2 4\n3\n")
    with pytest.raises(ParseError):
        read_graph(f, fmt="metis")


def test_metis_row_count_mismatch(tmp_path):
    f = tmp_path / "bad.metis"
    f.write_text("3 2\n2\n1 3\n")
    with pytest.raises(ParseError):
        read_graph(f, fmt="metis")


def test_metis_asymmetric_rows(tmp_path):
    f = tmp_path / "bad.metis"
    f.write_text("3 2\n2 3\n1 3\n1\n")
    with pytest.raises(ParseError):
        read_graph(f, fmt="metis")


def test_metis_weighted_roundtrip(tmp_path):
    g = Graph(4, weighted=True)
    g.add_edge(0, 1, 2.0)
    g.add_edge(1, 2, 0.5)
    g.add_edge(2, 3, 3.0)
    f = tmp_path / "w.metis"
    write_graph(g, f, fmt="metis")
    h = read_graph(f, fmt="metis")
    assert h.weighted and h.n == 4 and h.m == 3
    assert h.edge_weight(1, 2) == 0.5
    assert edge_set(h) == edge_set(g)


def test_metis_unsupported_fmt(tmp_path):
    f = tmp_path / "v.metis"
    f.write_text("2 1 10\n2\n1\n")
    with pytest.raises(ParseError):
        read_graph(f, fmt="metis")


def test_edgelist_roundtrip_with_isolated_vertex(tmp_path):
    g = Graph(5)
    g.add_edge(0, 1)
    g.add_edge(3, 1)
    f = tmp_path / "g.edges"
    write_graph(g, f)
    h = read_graph(f)
    assert h.n == 5 and h.m == 2
    assert edge_set(h) == edge_set(g)


def test_edgelist_declared_n_without_edges(tmp_path):
    f = tmp_path / "empty.edges"
    f.write_text("# n 4\n")
    g = read_graph(f)
    assert g.n == 4 and g.m == 0
    assert connected_components(g).k == 4


def test_edgelist_comments_and_weights(tmp_path):
    f = tmp_path / "w.edges"
    f.write_text("# n 3\n0 1 1.5  # inline note\n1 2 2.0\n")
    g = read_graph(f)
    assert g.weighted and g.edge_weight(0, 1) == 1.5


def test_edgelist_mixed_columns_error(tmp_path):
    f = tmp_path / "bad.edges"
    f.write_text("0 1\n1 2 2.0\n")
    with pytest.raises(ParseError):
        read_graph(f)


def test_edgelist_bad_token_reports_line(tmp_path):
    f = tmp_path / "bad.edges"
    f.write_text("0 1\nx 2\n")
    with pytest.raises(ParseError) as err:
        read_graph(f)
    assert err.value.line == 2


def test_roundtrip_identity_both_formats(tmp_path):
    from netan import gnp

    g = gnp(30, 0.15, seed=1)
    for fmt in ("edgelist", "metis"):
        f = tmp_path / f"g.{fmt}"
        write_graph(g, f, fmt=fmt)
        h = read_graph(f, fmt=fmt)
        assert h.n == g.n and h.m == g.m
        assert edge_set(h) == edge_set(g)


def test_weighted_roundtrip_preserves_weights(tmp_path):
    rng = np.random.default_rng(0)
    g = Graph(10, weighted=True)
    for _ in range(15):
        u, v = rng.integers(0, 10, 2)
        if u != v and not g.has_edge(u, v):
            g.add_edge(int(u), int(v), float(rng.random() * 3))
    for fmt in ("edgelist", "metis"):
        f = tmp_path / f"w.{fmt}"
        write_graph(g, f, fmt=fmt)
        h = read_graph(f, fmt=fmt)
        for e in range(g.m):
            u, v = g.edge_endpoints(e)
            assert h.edge_weight(u, v) == g.edge_weight(u, v)


def test_directed_edgelist(tmp_path):
    f = tmp_path / "d.edges"
    f.write_text("0 1\n1 2\n")
    g = read_graph(f, directed=True)
    assert g.directed
    assert g.degree(0) == 1 and g.degree(2) == 0
