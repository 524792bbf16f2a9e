import math

import numpy as np
import pytest

from netan import (
    PreconditionError,
    barabasi_albert,
    chung_lu,
    connected_components,
    gnp,
    planted_partition,
    sssp,
    watts_strogatz,
)


def edge_set(g):
    return {tuple(sorted(g.edge_endpoints(e))) for e in range(g.m)}


def graph_invariants_hold(g):
    assert int(g.degrees().sum()) == 2 * g.m
    seen = set()
    for e in range(g.m):
        u, v = g.edge_endpoints(e)
        assert u != v
        key = (min(u, v), max(u, v))
        assert key not in seen
        seen.add(key)


# -- gnp ----------------------------------------------------------------------


def test_gnp_extremes():
    assert gnp(50, 0.0, seed=1).m == 0
    k5 = gnp(5, 1.0, seed=1)
    assert k5.m == 10
    graph_invariants_hold(k5)


def test_gnp_same_seed_identical():
    a = gnp(200, 0.03, seed=77)
    b = gnp(200, 0.03, seed=77)
    assert edge_set(a) == edge_set(b)
    assert a._nbr == b._nbr


def test_gnp_edge_count_within_4_sigma():
    n, p = 1000, 0.01
    total = n * (n - 1) / 2
    mean = total * p
    sigma = math.sqrt(total * p * (1 - p))
    for seed in range(5):
        m = gnp(n, p, seed=seed).m
        assert abs(m - mean) < 4 * sigma
        graph_invariants_hold(gnp(100, 0.05, seed=seed))


def test_gnp_edge_count_chi_squared():
    # binomial sanity: bin the standardized edge counts over many seeds
    n, p = 60, 0.1
    total = n * (n - 1) / 2
    mean, sd = total * p, math.sqrt(total * p * (1 - p))
    zs = [(gnp(n, p, seed=s).m - mean) / sd for s in range(60)]
    edges = [-np.inf, -1.0, -0.35, 0.0, 0.35, 1.0, np.inf]
    probs = np.diff([0.0, 0.1587, 0.3632, 0.5, 0.6368, 0.8413, 1.0])
    counts, _ = np.histogram(zs, bins=edges)
    expected = probs * len(zs)
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    # 5 dof, alpha = 0.001 -> 20.5
    assert chi2 < 20.5


# -- barabasi-albert -----------------------------------------------------------


def test_ba_edge_count_formula():
    for seed in range(10):
        n, k0 = 80, 3
        g = barabasi_albert(n, k0, seed=seed)
        assert g.m == k0 * (k0 + 1) // 2 + (n - k0 - 1) * k0
        graph_invariants_hold(g)


def test_ba_base_case_is_clique():
    g = barabasi_albert(4, 3, seed=0)
    assert g.m == 6


def test_ba_max_degree_grows_with_n():
    k0 = 2
    means = []
    for n in (50, 200, 800):
        tops = [int(barabasi_albert(n, k0, seed=s).degrees().max()) for s in range(20)]
        means.append(np.mean(tops))
    assert means[0] < means[1] < means[2]


def test_ba_validation():
    with pytest.raises(PreconditionError):
        barabasi_albert(3, 0, seed=1)
    with pytest.raises(PreconditionError):
        barabasi_albert(3, 3, seed=1)


# -- watts-strogatz --------------------------------------------------------------


def test_ws_lattice_degrees():
    g = watts_strogatz(12, 4, 0.0, seed=0)
    assert set(g.degrees().tolist()) == {4}
    graph_invariants_hold(g)


def test_ws_ring_diameter():
    g = watts_strogatz(10, 2, 0.0, seed=0)
    ecc = max(int(sssp(g, s).dist.max()) for s in range(g.n))
    assert ecc == 5


def test_ws_edge_count_preserved_under_rewiring():
    for beta in (0.0, 0.3, 1.0):
        g = watts_strogatz(40, 4, beta, seed=5)
        assert g.m == 40 * 4 // 2
        graph_invariants_hold(g)


def test_ws_validation():
    with pytest.raises(PreconditionError):
        watts_strogatz(10, 3, 0.1, seed=0)
    with pytest.raises(PreconditionError):
        watts_strogatz(4, 4, 0.1, seed=0)


# -- chung-lu --------------------------------------------------------------------


def test_chung_lu_zero_weights_edgeless():
    assert chung_lu([0, 0, 0, 0], seed=1).m == 0


def test_chung_lu_forced_edge():
    g = chung_lu([2.0, 2.0], seed=1)
    assert g.m == 1


def test_chung_lu_probability_overflow():
    with pytest.raises(PreconditionError):
        chung_lu([10.0, 10.0, 1.0], seed=1)


def test_chung_lu_expected_degrees_within_4_sigma():
    w = np.array([1.0, 2.0, 3.0, 4.0, 2.0, 1.0, 3.0, 2.0, 1.0, 1.0])
    total = w.sum()
    p = np.outer(w, w) / total
    np.fill_diagonal(p, 0.0)
    p = np.minimum(p, 1.0)
    mean_deg = p.sum(axis=1)
    var_one = (p * (1 - p)).sum(axis=1)
    reps = 50
    deg_sum = np.zeros(len(w))
    for s in range(reps):
        deg_sum += chung_lu(w, seed=s).degrees()
    avg = deg_sum / reps
    sd_mean = np.sqrt(var_one / reps)
    assert np.all(np.abs(avg - mean_deg) < 4 * np.maximum(sd_mean, 1e-9))


# -- planted partition -----------------------------------------------------------


def test_planted_partition_extremes():
    g, part = planted_partition([4, 4], 1.0, 0.0, seed=0)
    comps = connected_components(g)
    assert comps.k == 2
    assert g.m == 2 * 6
    # ground truth matches the components
    assert len({(comps.labels[v], part.labels[v]) for v in range(g.n)}) == 2


def test_planted_partition_equal_probs_is_gnp_in_mean():
    p = 0.15
    sizes = [30, 30]
    total = 60 * 59 / 2
    ms = [planted_partition(sizes, p, p, seed=s)[0].m for s in range(20)]
    sd = math.sqrt(total * p * (1 - p))
    assert abs(np.mean(ms) - total * p) < 4 * sd / math.sqrt(20)


def test_planted_partition_validation():
    with pytest.raises(PreconditionError):
        planted_partition([5, 5], 0.1, 0.5, seed=0)
    with pytest.raises(PreconditionError):
        planted_partition([], 0.5, 0.1, seed=0)


def test_all_generators_same_seed_bit_identical():
    for make in (
        lambda s: gnp(60, 0.1, seed=s),
        lambda s: barabasi_albert(50, 2, seed=s),
        lambda s: watts_strogatz(30, 4, 0.3, seed=s),
        lambda s: chung_lu([2.0] * 30, seed=s),
        lambda s: planted_partition([20, 20], 0.3, 0.05, seed=s)[0],
    ):
        a, b = make(9), make(9)
        assert a._nbr == b._nbr and a._eu == b._eu and a._ev == b._ev
