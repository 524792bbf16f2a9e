"""Seeded random-graph generators.

All generators draw from a PCG64 stream fixed project-wide, so a given seed
reproduces the same graph bit-for-bit on any platform.  Generation is
single-threaded by design.
"""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError
from .graph import Graph
from .partition import Partition


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _check_prob(p: float, name: str = "p"):
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"{name} must lie in [0, 1], got {p}")


def _pair_offsets(u: np.ndarray, n: int) -> np.ndarray:
    # index of pair (u, u+1) in the lexicographic enumeration of u < v pairs
    return u * (2 * n - u - 1) // 2


def _index_to_pair(t: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    tn = 2.0 * n - 1.0
    u = np.floor((tn - np.sqrt(tn * tn - 8.0 * t)) / 2.0).astype(np.int64)
    u = np.clip(u, 0, n - 2)
    # float sqrt can land one row off; fix with exact integer offsets
    for _ in range(64):
        over = _pair_offsets(u, n) > t
        if not over.any():
            break
        u[over] -= 1
    for _ in range(64):
        under = _pair_offsets(u + 1, n) <= t
        if not under.any():
            break
        u[under] += 1
    v = t - _pair_offsets(u, n) + u + 1
    return u, v


def _sample_distinct(rng, total: int, m: int) -> np.ndarray:
    """A uniformly random m-subset of range(total), sorted."""
    if m == 0:
        return np.empty(0, np.int64)
    if m >= total:
        return np.arange(total, dtype=np.int64)
    pool = np.unique(rng.integers(0, total, size=m + m // 8 + 16))
    while pool.shape[0] < m:
        extra = rng.integers(0, total, size=2 * (m - pool.shape[0]) + 16)
        pool = np.union1d(pool, extra)
    if pool.shape[0] > m:
        pool = rng.choice(pool, size=m, replace=False)
    return np.sort(pool)


def gnp(n: int, p: float, seed=None) -> Graph:
    """Erdos-Renyi G(n, p): each unordered pair is an edge with probability p.

    Sampling draws the edge count from the exact binomial law and then a
    uniform subset of pair slots, which runs in O(n + m) for sparse p.
    """
    if n < 0:
        raise PreconditionError("n must be non-negative")
    _check_prob(p)
    total = n * (n - 1) // 2
    if total == 0 or p == 0.0:
        return Graph(n)
    rng = _rng(seed)
    if p == 1.0:
        idx = np.arange(total, dtype=np.int64)
    else:
        m = int(rng.binomial(total, p))
        idx = _sample_distinct(rng, total, m)
    us, vs = _index_to_pair(idx, n)
    return Graph.from_edges(n, us, vs)


def barabasi_albert(n: int, k0: int, seed=None) -> Graph:
    """Preferential attachment: start from a (k0+1)-clique, then attach each
    new vertex to k0 distinct existing vertices with degree-proportional
    probability (repeated draws from the edge-endpoint pool)."""
    if k0 < 1:
        raise PreconditionError("k0 must be >= 1")
    if n <= k0:
        raise PreconditionError("n must exceed k0")
    rng = _rng(seed)
    us: list[int] = []
    vs: list[int] = []
    pool: list[int] = []
    for u in range(k0 + 1):
        for v in range(u + 1, k0 + 1):
            us.append(u)
            vs.append(v)
            pool.append(u)
            pool.append(v)
    for new in range(k0 + 1, n):
        targets: set[int] = set()
        while len(targets) < k0:
            cand = pool[int(rng.integers(0, len(pool)))]
            if cand not in targets:
                targets.add(cand)
        for t in sorted(targets):
            us.append(new)
            vs.append(t)
            pool.append(new)
            pool.append(t)
    return Graph.from_edges(n, np.array(us), np.array(vs))


def watts_strogatz(n: int, ws_k: int, ws_beta: float, seed=None) -> Graph:
    """Ring lattice with k neighbors per vertex; each edge's far endpoint is
    rewired with probability beta to a uniform non-duplicate target."""
    if ws_k % 2 != 0:
        raise PreconditionError("ws_k must be even")
    if not 0 < ws_k < n:
        raise PreconditionError("need 0 < ws_k < n")
    _check_prob(ws_beta, "ws_beta")
    rng = _rng(seed)
    adj: list[set[int]] = [set() for _ in range(n)]
    edges: list[tuple[int, int]] = []
    for u in range(n):
        for j in range(1, ws_k // 2 + 1):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
            edges.append((u, v))
    out_u: list[int] = []
    out_v: list[int] = []
    for u, v in edges:
        if ws_beta > 0.0 and rng.random() < ws_beta and len(adj[u]) < n - 1:
            adj[u].discard(v)
            adj[v].discard(u)
            while True:
                w = int(rng.integers(0, n))
                if w != u and w not in adj[u]:
                    break
            adj[u].add(w)
            adj[w].add(u)
            v = w
        out_u.append(u)
        out_v.append(v)
    return Graph.from_edges(n, np.array(out_u), np.array(out_v))


def chung_lu(weights, seed=None) -> Graph:
    """Random graph with prescribed expected degrees: pair (i, j) is linked
    with probability w_i * w_j / sum(w)."""
    w = np.asarray(weights, dtype=np.float64)
    n = w.shape[0]
    if n and w.min() < 0:
        raise PreconditionError("expected degrees must be non-negative")
    total = w.sum()
    if n < 2 or total == 0.0:
        return Graph(n)
    top = np.sort(w)[-2:]
    if top[0] * top[1] / total > 1.0 + 1e-12:
        raise PreconditionError(
            "probability overflow: max_i!=j w_i*w_j / sum(w) exceeds 1"
        )
    rng = _rng(seed)
    us: list[np.ndarray] = []
    vs: list[np.ndarray] = []
    for u in range(n - 1):
        p_row = np.minimum(w[u] * w[u + 1 :] / total, 1.0)
        hit = np.flatnonzero(rng.random(n - 1 - u) < p_row)
        if hit.size:
            us.append(np.full(hit.size, u, np.int64))
            vs.append(hit + u + 1)
    if not us:
        return Graph(n)
    return Graph.from_edges(n, np.concatenate(us), np.concatenate(vs))


def planted_partition(
    blocks, p_in: float, p_out: float, seed=None
) -> tuple[Graph, Partition]:
    """Stochastic block model with uniform intra/inter probabilities.

    Returns the graph and the ground-truth block assignment.
    """
    sizes = np.asarray(blocks, dtype=np.int64)
    if sizes.size == 0 or sizes.min() <= 0:
        raise PreconditionError("block sizes must be positive")
    _check_prob(p_in, "p_in")
    _check_prob(p_out, "p_out")
    if p_in < p_out:
        raise PreconditionError("need p_in >= p_out")
    labels = np.repeat(np.arange(sizes.size), sizes)
    n = int(sizes.sum())
    rng = _rng(seed)
    us: list[np.ndarray] = []
    vs: list[np.ndarray] = []
    for u in range(n - 1):
        p_row = np.where(labels[u + 1 :] == labels[u], p_in, p_out)
        hit = np.flatnonzero(rng.random(n - 1 - u) < p_row)
        if hit.size:
            us.append(np.full(hit.size, u, np.int64))
            vs.append(hit + u + 1)
    if us:
        g = Graph.from_edges(n, np.concatenate(us), np.concatenate(vs))
    else:
        g = Graph(n)
    return g, Partition(labels, sizes.size)
