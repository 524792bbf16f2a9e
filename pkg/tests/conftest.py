import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from netan import Graph, gnp


def path_graph(n, weighted=False):
    g = Graph(n, weighted=weighted)
    for i in range(n - 1):
        g.add_edge(i, i + 1)
    return g


def cycle_graph(n):
    g = path_graph(n)
    g.add_edge(n - 1, 0)
    return g


def complete_graph(n):
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            g.add_edge(u, v)
    return g


def star_graph(leaves):
    g = Graph(leaves + 1)
    for v in range(1, leaves + 1):
        g.add_edge(0, v)
    return g


def two_triangles_bridge():
    # 0-1-2 triangle, 3-4-5 triangle, bridge 2-3
    g = Graph(6)
    for u, v in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]:
        g.add_edge(u, v)
    return g


def two_cliques_bridge(k):
    g = Graph(2 * k)
    for base in (0, k):
        for u in range(base, base + k):
            for v in range(u + 1, base + k):
                g.add_edge(u, v)
    g.add_edge(k - 1, k)
    return g


def shuffled_copy(g, seed=0):
    """Same graph, neighbor lists re-ordered: algorithms must not care."""
    rng = np.random.default_rng(seed)
    h = g.copy()
    for v in range(h.n):
        idx = rng.permutation(len(h._nbr[v]))
        h._nbr[v] = [h._nbr[v][i] for i in idx]
        h._wt[v] = [h._wt[v][i] for i in idx]
        h._eid[v] = [h._eid[v][i] for i in idx]
    h._invalidate()
    return h


def random_connected(n, p, seed):
    """G(n, p) resampled until connected (bounded attempts)."""
    from netan import is_connected

    for tries in range(200):
        g = gnp(n, p, seed=seed * 1000 + tries)
        if is_connected(g):
            return g
    raise RuntimeError("could not draw a connected graph")


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)
