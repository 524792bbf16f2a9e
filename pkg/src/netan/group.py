"""Group centrality measures and their greedy/local-search maximizers.

The distance from a group S to a vertex v is min over members of d(u, v).
All optimizers break ties toward the smallest vertex id, so results do not
depend on adjacency order.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import PreconditionError
from .graph import Graph, is_connected


@dataclass
class VertexGroup:
    members: tuple
    score: float
    measure: str
    extras: dict = field(default_factory=dict)


def _members_array(members) -> np.ndarray:
    arr = np.unique(np.asarray(list(members), dtype=np.int64))
    if arr.size == 0:
        raise PreconditionError("group must be non-empty")
    return arr


def group_distances(g: Graph, members) -> np.ndarray:
    """d(S, v) for every vertex; +inf where unreachable."""
    arr = _members_array(members)
    if arr.min() < 0 or arr.max() >= g.n:
        raise PreconditionError("group member out of range")
    indptr, nbrs, wts, _ = g.csr()
    if g.weighted:
        return kernels.multisource_dijkstra(indptr, nbrs, wts, arr)
    return kernels.multisource_bfs(indptr, nbrs, arr)


def group_distance(g: Graph, members, v: int) -> float:
    g._check_vertex(v)
    return float(group_distances(g, members)[v])


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def group_closeness(g: Graph, members) -> float:
    """(n - |S|) / sum of distances from S to the rest; 0 when S = V."""
    if g.directed:
        raise PreconditionError("group closeness needs an undirected graph")
    if not is_connected(g):
        raise PreconditionError("group closeness needs a connected graph")
    arr = _members_array(members)
    if arr.size >= g.n:
        return 0.0
    dist = group_distances(g, arr)
    outside = np.ones(g.n, dtype=bool)
    outside[arr] = False
    return float((g.n - arr.size) / dist[outside].sum())


def group_harmonic(g: Graph, members) -> float:
    """Sum over v outside S of 1 / d(S, v); unreachable contributes 0."""
    arr = _members_array(members)
    dist = group_distances(g, arr)
    outside = np.ones(g.n, dtype=bool)
    outside[arr] = False
    d = dist[outside]
    return float((1.0 / d[np.isfinite(d)]).sum())


def group_degree(g: Graph, members) -> int:
    """Size of the neighborhood N(S) minus S itself."""
    arr = _members_array(members)
    covered = set()
    sset = set(int(v) for v in arr)
    for u in sset:
        covered.update(int(v) for v in g._nbr[u])
    return len(covered - sset)


# ---------------------------------------------------------------------------
# group closeness maximization
# ---------------------------------------------------------------------------


def group_closeness_greedy(g: Graph, k: int) -> VertexGroup:
    """Greedy marginal-gain maximization of group closeness.

    Keeps the d(S, .) array and evaluates a candidate with a truncated
    search that only expands strictly improving vertices; the improvement
    total directly gives the drop of the distance sum.
    """
    if g.directed:
        raise PreconditionError("group closeness needs an undirected graph")
    if not 1 <= k < g.n:
        raise PreconditionError("need 1 <= k < n")
    if not is_connected(g):
        raise PreconditionError("group closeness needs a connected graph")
    indptr, nbrs, wts, _ = g.csr()
    n = g.n
    members: list[int] = []
    dist_s = np.full(n, np.inf)
    trace: list[float] = []
    for _ in range(k):
        best_v, best_red = -1, -np.inf
        if not members:
            farn, _, _ = (
                kernels.farness_stats_weighted(indptr, nbrs, wts)
                if g.weighted
                else kernels.farness_stats(indptr, nbrs, max(1, min(n, 4)), True)
            )
            best_v = int(np.lexsort((np.arange(n), farn))[0])
        else:
            for v in range(n):
                if dist_s[v] == 0.0:
                    continue
                red = _improvement_total(g, indptr, nbrs, wts, v, dist_s)
                if red > best_red:
                    best_red, best_v = red, v
        members.append(best_v)
        dv = _candidate_dist(g, indptr, nbrs, wts, best_v, dist_s)
        np.minimum(dist_s, dv, out=dist_s)
        dist_s[best_v] = 0.0
        outside = dist_s > 0.0
        total = dist_s[outside].sum()
        trace.append(float((n - len(members)) / total) if total > 0 else 0.0)
    return VertexGroup(
        tuple(sorted(members)),
        trace[-1],
        "group_closeness",
        extras={"selection": members, "trace": trace},
    )


def _candidate_dist(g, indptr, nbrs, wts, v, cap):
    if g.weighted:
        return kernels.multisource_dijkstra(indptr, nbrs, wts, np.array([v], np.int64))
    return kernels.improvement_bfs(indptr, nbrs, v, cap)


def _improvement_total(g, indptr, nbrs, wts, v, dist_s):
    dv = _candidate_dist(g, indptr, nbrs, wts, v, dist_s)
    better = dv < dist_s
    return float((dist_s[better] - dv[better]).sum())


def group_closeness_local_search(g: Graph, k: int, seed=None, start=None) -> VertexGroup:
    """Best-improving-swap local search, by default from the top-k degree
    vertices (``start`` overrides the initial set).

    Swaps (u in S, v outside) are applied while one strictly lowers the
    distance sum; the result is swap-optimal.  The procedure is
    deterministic; ``seed`` is accepted for interface symmetry with the
    other randomized optimizers.
    """
    del seed
    if g.directed:
        raise PreconditionError("group closeness needs an undirected graph")
    if not 1 <= k < g.n:
        raise PreconditionError("need 1 <= k < n")
    if not is_connected(g):
        raise PreconditionError("group closeness needs a connected graph")
    n = g.n
    if start is None:
        start = np.lexsort((np.arange(n), -g.degrees()))[:k]
    elif len(set(int(v) for v in start)) != k:
        raise PreconditionError("start set must hold k distinct vertices")
    members = set(int(v) for v in start)

    def total_of(mem: set) -> float:
        dist = group_distances(g, mem)
        mask = np.ones(n, dtype=bool)
        mask[list(mem)] = False
        return float(dist[mask].sum())

    cur = total_of(members)
    swaps = 0
    improved = True
    while improved:
        improved = False
        best = (cur, None, None)
        for u in sorted(members):
            for v in range(n):
                if v in members:
                    continue
                cand = (members - {u}) | {v}
                t = total_of(cand)
                if t < best[0] - 1e-12:
                    best = (t, u, v)
        if best[1] is not None:
            members = (members - {best[1]}) | {best[2]}
            cur = best[0]
            swaps += 1
            improved = True
    score = (n - k) / cur if cur > 0 else 0.0
    return VertexGroup(
        tuple(sorted(members)),
        float(score),
        "group_closeness",
        extras={"swaps": swaps, "method": "local_search"},
    )


# ---------------------------------------------------------------------------
# group harmonic / group degree
# ---------------------------------------------------------------------------


def group_harmonic_greedy(g: Graph, k: int) -> VertexGroup:
    """Greedy maximization of the reciprocal-distance group score."""
    if k < 1 or k > g.n:
        raise PreconditionError("need 1 <= k <= n")
    indptr, nbrs, wts, _ = g.csr()
    n = g.n
    members: list[int] = []
    dist_s = np.full(n, np.inf)
    trace: list[float] = []

    def inv(x):
        return 1.0 / x if np.isfinite(x) and x > 0 else 0.0

    for _ in range(k):
        best_v, best_gain = -1, -np.inf
        for v in range(n):
            if dist_s[v] == 0.0:
                continue
            dv = _candidate_dist(g, indptr, nbrs, wts, v, dist_s)
            better = dv < dist_s
            gain = 0.0
            for w in np.flatnonzero(better):
                if w == v:
                    continue
                gain += 1.0 / dv[w] - inv(dist_s[w])
            gain -= inv(dist_s[v])
            if gain > best_gain:
                best_gain, best_v = gain, v
        members.append(best_v)
        dv = _candidate_dist(g, indptr, nbrs, wts, best_v, dist_s)
        np.minimum(dist_s, dv, out=dist_s)
        dist_s[best_v] = 0.0
        trace.append(group_harmonic(g, members))
    return VertexGroup(
        tuple(sorted(members)),
        trace[-1],
        "group_harmonic",
        extras={"selection": members, "trace": trace},
    )


def group_degree_greedy(g: Graph, k: int) -> VertexGroup:
    """Greedy neighborhood coverage |N(S) \\ S|.

    Stops early once no candidate has positive marginal gain, so the score
    trace is non-decreasing; classic submodular greedy otherwise.
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if g.n == 0:
        raise PreconditionError("graph has no vertices")
    n = g.n
    members: set[int] = set()
    covered: set[int] = set()
    gains: list[float] = []
    while len(members) < min(k, n):
        best_v, best_gain = -1, 0
        for v in range(n):
            if v in members:
                continue
            nv = set(int(x) for x in g._nbr[v])
            gain = len(nv - covered - members - {v}) - (1 if v in covered else 0)
            if gain > best_gain:  # ascending scan keeps the smallest id on ties
                best_gain, best_v = gain, v
        if best_v < 0 or best_gain <= 0:
            if not members:
                members.add(0)  # degenerate graph without coverage gains
                gains.append(0)
            break
        members.add(best_v)
        covered.update(int(x) for x in g._nbr[best_v])
        gains.append(best_gain)
    score = len(covered - members)
    return VertexGroup(
        tuple(sorted(members)),
        float(score),
        "group_degree",
        extras={"gains": gains},
    )


# ---------------------------------------------------------------------------
# GED walk
# ---------------------------------------------------------------------------


def _ged_defaults(g: Graph, alpha, length):
    maxdeg = float(g.weighted_degrees().max()) if g.n else 0.0
    if alpha is None:
        alpha = 0.5 / maxdeg if maxdeg > 0 else 0.5
    if maxdeg > 0 and not 0.0 < alpha < 1.0 / maxdeg:
        raise PreconditionError(
            f"alpha must lie in (0, 1/max_degree) = (0, {1.0 / maxdeg})"
        )
    if length is None:
        q = alpha * maxdeg
        if q == 0.0:
            length = 1
        else:
            # decayed tail below 1e-7: n * q^(K+1) / (1 - q) < 1e-7
            length = max(1, math.ceil(math.log(1e-7 * (1.0 - q) / max(g.n, 1)) / math.log(q)) - 1)
    return alpha, int(length)


def ged_walk_score(g: Graph, members, alpha=None, length=None) -> float:
    """Decayed count of walks that cross the group.

    sum over k of alpha^k * (walks_k(G) - walks_k(G - S)), computed with
    repeated adjacency products; the truncation length keeps the geometric
    tail below 1e-7 unless given explicitly.
    """
    alpha, length = _ged_defaults(g, alpha, length)
    arr = np.unique(np.asarray(list(members), dtype=np.int64)) if len(list(members)) else np.empty(0, np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= g.n):
        raise PreconditionError("group member out of range")
    if g.m == 0 or arr.size == 0:
        return 0.0
    indptr, nbrs, wts, _ = g.csr()
    mask = np.ones(g.n)
    mask[arr] = 0.0
    x = np.ones(g.n)
    y = mask.copy()
    total = 0.0
    for _ in range(length):
        x = alpha * kernels.matvec_gather(indptr, nbrs, wts, x)
        y = mask * (alpha * kernels.matvec_gather(indptr, nbrs, wts, y))
        total += x.sum() - y.sum()
    return float(total)


def ged_walk_greedy(
    g: Graph, k: int, alpha=None, length=None, lazy: bool = True
) -> VertexGroup:
    """Greedy GED-walk group maximization (lazy evaluation by default).

    The lazy variant keeps stale marginal gains as upper bounds (valid by
    submodularity) and re-evaluates only the heap top; it returns the same
    group as the eager sweep.
    """
    if k < 1 or k > g.n:
        raise PreconditionError("need 1 <= k <= n")
    alpha, length = _ged_defaults(g, alpha, length)
    members: list[int] = []
    trace: list[float] = []
    cur = 0.0

    def score_of(mem) -> float:
        return ged_walk_score(g, mem, alpha=alpha, length=length)

    if lazy:
        fresh_round = {v: -2 for v in range(g.n)}
        heap = [(-np.inf, v) for v in range(g.n)]
        heapq.heapify(heap)
        for rnd in range(k):
            while True:
                negg, v = heapq.heappop(heap)
                if fresh_round[v] == rnd:
                    break
                gain = score_of(members + [v]) - cur
                fresh_round[v] = rnd
                heapq.heappush(heap, (-gain, v))
            members.append(v)
            cur += -negg
            trace.append(cur)
    else:
        for _ in range(k):
            best_v, best_gain = -1, -np.inf
            for v in range(g.n):
                if v in members:
                    continue
                gain = score_of(members + [v]) - cur
                if gain > best_gain:
                    best_gain, best_v = gain, v
            members.append(best_v)
            cur += best_gain
            trace.append(cur)
    score = score_of(members)
    return VertexGroup(
        tuple(sorted(members)),
        float(score),
        "ged_walk",
        extras={"selection": members, "trace": trace, "alpha": alpha, "length": length},
    )
