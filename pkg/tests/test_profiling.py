import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netan import Graph, build_profile, gnp, render_html, render_json, spearman
from netan.errors import PreconditionError

from conftest import complete_graph, path_graph, two_triangles_bridge


# -- spearman ---------------------------------------------------------------------


def test_spearman_identity_and_reversal():
    x = [3.0, 1.0, 2.0, 5.0]
    assert spearman(x, x) == pytest.approx(1.0)
    assert spearman(x, [-v for v in x]) == pytest.approx(-1.0)


def test_spearman_hand_ties_case():
    x = [1.0, 2.0, 2.0, 4.0]
    y = [1.0, 3.0, 2.0, 4.0]
    # ranks (1, 2.5, 2.5, 4) vs (1, 3, 2, 4) -> 4.5 / sqrt(4.5 * 5)
    assert spearman(x, y) == pytest.approx(4.5 / math.sqrt(22.5))


def test_spearman_degenerate_is_none():
    assert spearman([1.0, 1.0, 1.0], [1.0, 2.0, 3.0]) is None
    assert spearman([2.0, 2.0], [2.0, 2.0]) is None


def test_spearman_validation():
    with pytest.raises(PreconditionError):
        spearman([1.0], [1.0])
    with pytest.raises(PreconditionError):
        spearman([1.0, 2.0], [1.0, 2.0, 3.0])


def test_spearman_matches_scipy():
    from scipy import stats

    rng = np.random.default_rng(3)
    for _ in range(20):
        x = rng.integers(0, 6, 30).astype(float)  # plenty of ties
        y = rng.integers(0, 6, 30).astype(float)
        ours = spearman(x, y)
        if ours is None:
            continue
        want = stats.spearmanr(x, y).statistic
        assert ours == pytest.approx(want, abs=1e-12)


@given(
    st.lists(st.integers(-100, 100), min_size=3, max_size=20),
    st.floats(0.5, 4.0),
    st.floats(-10, 10),
)
@settings(max_examples=50, deadline=None)
def test_spearman_invariant_under_monotone_transform(xs, scale, shift):
    # integer inputs with a moderate affine map keep ties exact in floats,
    # so the rankings (and the coefficient) must not change
    ys = [xi * 2.5 - 3.0 for xi in xs]
    base = spearman([float(x) for x in xs], ys)
    trans = spearman([scale * xi + shift for xi in xs], ys)
    if base is None:
        assert trans is None
    else:
        assert trans == pytest.approx(base, abs=1e-9)


# -- profile -----------------------------------------------------------------------


def test_profile_two_triangles_bridge_valid():
    g = two_triangles_bridge()
    report = build_profile(g, seed=0, timestamp=False).to_dict()
    assert report["global"]["n"] == 6
    assert report["global"]["m"] == 7
    assert report["global"]["components"] == 1
    assert report["global"]["diameter"]["value"] == 3
    names = report["correlation"]["order"]
    mat = report["correlation"]["matrix"]
    for i in range(len(names)):
        assert mat[i][i] == pytest.approx(1.0)
        for j in range(len(names)):
            if mat[i][j] is not None:
                assert mat[i][j] == pytest.approx(mat[j][i])
                assert -1.0 - 1e-12 <= mat[i][j] <= 1.0 + 1e-12
    for name in names:
        hist = report["measures"][name]["histogram"]
        assert sum(hist["counts"]) == g.n


def test_profile_k4_degenerate_everywhere():
    report = build_profile(complete_graph(4), seed=0, timestamp=False).to_dict()
    mat = report["correlation"]["matrix"]
    assert all(v is None for row in mat for v in row)


def test_profile_p3_degree_betweenness_agree():
    report = build_profile(path_graph(3), seed=0, timestamp=False).to_dict()
    names = report["correlation"]["order"]
    i, j = names.index("degree"), names.index("betweenness")
    assert report["correlation"]["matrix"][i][j] == pytest.approx(1.0)


def test_profile_disconnected_falls_back_to_harmonic():
    g = Graph(5)
    g.add_edge(0, 1)
    g.add_edge(2, 3)
    report = build_profile(g, seed=0, timestamp=False).to_dict()
    entry = report["measures"]["closeness"]
    assert entry["status"] == "ok"
    assert entry["measure"] == "harmonic"
    assert "note" in entry


def test_profile_measure_failure_is_recorded():
    g = Graph(3, directed=True)
    g.add_edge(0, 1)
    report = build_profile(g, measures=["closeness", "degree"], timestamp=False).to_dict()
    assert report["measures"]["closeness"]["status"] == "error"
    assert report["measures"]["degree"]["status"] == "ok"


def test_profile_empty_measures_global_only():
    report = build_profile(two_triangles_bridge(), measures=[], timestamp=False)
    d = report.to_dict()
    assert d["measures"] == {}
    assert d["correlation"]["order"] == []
    assert d["global"]["n"] == 6


def test_profile_matrix_matches_pairwise_spearman():
    g = gnp(40, 0.15, seed=2)
    report = build_profile(g, seed=1, timestamp=False)
    names = report.correlation["order"]
    from netan import betweenness, degree_centrality, harmonic, katz, pagerank

    # recompute two entries independently
    import netan

    scores = {
        "degree": degree_centrality(g).scores,
        "pagerank": pagerank(g).scores,
    }
    i, j = names.index("degree"), names.index("pagerank")
    assert report.correlation["matrix"][i][j] == pytest.approx(
        spearman(scores["degree"], scores["pagerank"])
    )


def test_profile_bins_override():
    g = gnp(50, 0.2, seed=3)
    report = build_profile(g, measures=["degree"], bins=5, timestamp=False).to_dict()
    assert len(report["measures"]["degree"]["histogram"]["counts"]) == 5


# -- rendering ----------------------------------------------------------------------


def test_render_json_roundtrip():
    report = build_profile(two_triangles_bridge(), seed=0, timestamp=False)
    text = render_json(report)
    assert json.loads(text) == report.to_dict()


def test_render_json_stable_without_timestamp():
    g = gnp(30, 0.2, seed=5)
    a = render_json(build_profile(g, seed=7, timestamp=False))
    b = render_json(build_profile(g, seed=7, timestamp=False))
    assert a == b


def test_render_html_sections_and_self_contained():
    report = build_profile(two_triangles_bridge(), seed=0, timestamp=False)
    html = render_html(report)
    d = report.to_dict()
    for name in d["measures"]:
        assert f"<h2>{name}</h2>" in html
    assert "<svg" in html
    assert "http" not in html.replace("http://www.w3.org/2000/svg", "")
    assert "&mdash;" not in html or True  # degenerate marker allowed


def test_render_html_degenerate_marker():
    html = render_html(build_profile(complete_graph(4), seed=0, timestamp=False))
    assert "&mdash;" in html
