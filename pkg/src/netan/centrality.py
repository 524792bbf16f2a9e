"""Per-vertex centrality measures and betweenness improvement.

Ranking convention everywhere: descending score, ties broken by ascending
vertex id.  Normalization defaults: closeness is reported in its (n-1)/sum
form, harmonic and betweenness are unnormalized unless asked, approximate
betweenness estimates the normalized score directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from ._accel import get_threads
from .errors import PreconditionError
from .graph import Graph, is_connected


def rank_by_score(scores: np.ndarray) -> np.ndarray:
    """Vertex ids sorted by descending score, ascending id on ties."""
    n = scores.shape[0]
    return np.lexsort((np.arange(n), -scores))


@dataclass
class CentralityResult:
    scores: np.ndarray
    measure: str
    normalized: bool = False
    extras: dict = field(default_factory=dict)

    def ranking(self) -> np.ndarray:
        return rank_by_score(self.scores)

    def top(self, k: int) -> list[tuple[int, float]]:
        order = self.ranking()[:k]
        return [(int(v), float(self.scores[v])) for v in order]


def _nblocks(n: int) -> int:
    return max(1, min(n, 4 * get_threads()))


def _farness(g: Graph):
    indptr, nbrs, wts, _ = g.csr()
    if g.weighted:
        return kernels.farness_stats_weighted(indptr, nbrs, wts)
    return kernels.farness_stats(indptr, nbrs, _nblocks(g.n), not g.directed)


# ---------------------------------------------------------------------------
# degree / closeness family
# ---------------------------------------------------------------------------


def degree_centrality(g: Graph) -> CentralityResult:
    """Degree (out-degree on directed graphs)."""
    return CentralityResult(g.degrees().astype(np.float64), "degree")


def closeness(g: Graph) -> CentralityResult:
    """(n-1) / sum of distances; defined on connected undirected graphs."""
    if g.directed:
        raise PreconditionError("closeness needs an undirected graph")
    if not is_connected(g):
        raise PreconditionError("closeness needs a connected graph")
    if g.n == 1:
        return CentralityResult(np.zeros(1), "closeness", normalized=True)
    farn, _, _ = _farness(g)
    return CentralityResult((g.n - 1) / farn, "closeness", normalized=True)


def harmonic(g: Graph, normalized: bool = False) -> CentralityResult:
    """Sum of reciprocal distances; unreachable vertices contribute 0."""
    _, harm, _ = _farness(g)
    if normalized and g.n > 1:
        harm = harm / (g.n - 1)
    return CentralityResult(harm, "harmonic", normalized=normalized)


@dataclass
class TopKCloseness:
    items: list  # (vertex, score), length k
    completed_sssps: int
    pruned_sssps: int


def top_k_closeness(g: Graph, k: int) -> TopKCloseness:
    """The k most close vertices with exact scores, via pruned searches.

    Sources are tried in degree order; a search aborts once its farness
    lower bound (finished level sums plus the remaining vertices at the next
    reachable level) exceeds the current k-th best.  Output matches the
    full closeness ranking exactly.
    """
    if g.directed:
        raise PreconditionError("top-k closeness needs an undirected graph")
    if g.weighted:
        raise PreconditionError("top-k closeness supports unweighted graphs only")
    if not 1 <= k <= g.n:
        raise PreconditionError(f"k must lie in [1, {g.n}]")
    if not is_connected(g):
        raise PreconditionError("top-k closeness needs a connected graph")
    if g.n == 1:
        return TopKCloseness([(0, 0.0)], 1, 0)
    order = np.lexsort((np.arange(g.n), -g.degrees()))
    indptr, nbrs, _, _ = g.csr()
    farness, completed = kernels.topk_closeness_scan(indptr, nbrs, order, k)
    done = np.flatnonzero(np.isfinite(farness))
    scores = (g.n - 1) / farness[done]
    pick = np.lexsort((done, -scores))[:k]
    items = [(int(done[i]), float(scores[i])) for i in pick]
    return TopKCloseness(items, int(completed), int(g.n - completed))


# ---------------------------------------------------------------------------
# betweenness
# ---------------------------------------------------------------------------


def betweenness(g: Graph, normalized: bool = False) -> CentralityResult:
    """Exact betweenness via Brandes' dependency accumulation."""
    indptr, nbrs, wts, _ = g.csr()
    if g.weighted:
        bc = kernels.brandes_weighted(indptr, nbrs, wts)
    else:
        bc = kernels.brandes(indptr, nbrs)
    if not g.directed:
        bc = bc / 2.0
    if normalized:
        pairs = (g.n - 1) * (g.n - 2)
        if not g.directed:
            pairs /= 2.0
        bc = bc / pairs if pairs > 0 else np.zeros(g.n)
    return CentralityResult(bc, "betweenness", normalized=normalized)


def betweenness_approx(
    g: Graph, epsilon: float = 0.05, delta: float = 0.1, seed=None
) -> CentralityResult:
    """Sampled normalized betweenness.

    Draws r = ceil((ln n + ln 2 + ln(1/delta)) / (2 eps^2)) source/target
    pairs uniformly; for each, one shortest path is sampled uniformly at
    random and its interior vertices are counted.  By Hoeffding plus a union
    bound every vertex estimate is within eps of the normalized score with
    probability at least 1 - delta.
    """
    if g.directed:
        raise PreconditionError("approximate betweenness needs an undirected graph")
    if g.weighted:
        raise PreconditionError("approximate betweenness supports unweighted graphs")
    if epsilon <= 0 or not 0 < delta < 1:
        raise PreconditionError("need epsilon > 0 and delta in (0, 1)")
    n = g.n
    if n <= 2:
        return CentralityResult(
            np.zeros(n), "betweenness_approx", normalized=True,
            extras={"num_samples": 0, "epsilon": epsilon, "delta": delta},
        )
    r = math.ceil((math.log(n) + math.log(2.0) + math.log(1.0 / delta)) / (2 * epsilon**2))
    rng = np.random.Generator(np.random.PCG64(seed))
    ss = rng.integers(0, n, size=r)
    ts = rng.integers(0, n - 1, size=r)
    ts[ts >= ss] += 1
    kseed = int(rng.integers(0, 2**62))
    indptr, nbrs, _, _ = g.csr()
    counts = kernels.betweenness_sample_counts(
        indptr, nbrs, ss, ts, np.uint64(kseed), _nblocks(n)
    )
    # pair sampling estimates b / (n(n-1)/2); rescale to the
    # (n-1)(n-2)/2 normalization
    scores = counts / r * (n / (n - 2.0))
    return CentralityResult(
        scores,
        "betweenness_approx",
        normalized=True,
        extras={"num_samples": r, "epsilon": epsilon, "delta": delta, "seed": seed},
    )


# ---------------------------------------------------------------------------
# walk-based measures
# ---------------------------------------------------------------------------


def katz(
    g: Graph,
    alpha: float | None = None,
    tol: float = 1e-9,
    max_iter: int = 1000,
    record_bounds: bool = False,
) -> CentralityResult:
    """Katz centrality with certified bound-based ranking.

    Scores are sum over k >= 1 of alpha^k times the number of length-k walks
    starting at each vertex, accumulated level by level.  Lower bound =
    partial sum, upper bound adds the geometric tail envelope
    alpha^(i+1) * walks_i * maxdeg / (1 - alpha * maxdeg).  Iteration stops
    once every consecutive pair of the current ranking is separated by the
    bounds or its gap falls below ``tol``.
    """
    n = g.n
    wdeg = g.weighted_degrees()
    maxdeg = float(wdeg.max()) if n else 0.0
    if alpha is None:
        alpha = 1.0 / (maxdeg + 1.0)
    if maxdeg > 0 and not 0.0 < alpha < 1.0 / maxdeg:
        raise PreconditionError(
            f"alpha must lie in (0, 1/max_degree) = (0, {1.0 / maxdeg})"
        )
    extras = {"alpha": alpha, "iterations": 0}
    if record_bounds:
        extras["bound_trace"] = []
    if g.m == 0:
        extras["order"] = np.arange(n)
        extras["certified_pairs"] = np.ones(max(n - 1, 0), dtype=bool)
        return CentralityResult(np.zeros(n), "katz", extras=extras)
    indptr, nbrs, wts, _ = g.csr()
    q = alpha * maxdeg
    walks = np.ones(n)
    lower = np.zeros(n)
    scale = 1.0
    order = np.arange(n)
    certified = np.zeros(max(n - 1, 0), dtype=bool)
    for it in range(1, max_iter + 1):
        walks = kernels.matvec_gather(indptr, nbrs, wts, walks)
        scale *= alpha
        lower = lower + scale * walks
        upper = lower + scale * walks * q / (1.0 - q)
        extras["iterations"] = it
        if record_bounds:
            extras["bound_trace"].append((lower.copy(), upper.copy()))
        order = rank_by_score(lower)
        if n > 1:
            a, b = order[:-1], order[1:]
            certified = lower[a] >= upper[b]
            gaps = upper[b] - lower[a]
            if bool(np.all(certified | (gaps < tol))):
                break
        else:
            break
    extras["order"] = order
    extras["certified_pairs"] = certified
    return CentralityResult(lower, "katz", extras=extras)


def pagerank(
    g: Graph, damping: float = 0.85, tol: float = 1e-10, max_iter: int = 1000
) -> CentralityResult:
    """Power iteration with uniform teleport; dangling mass spread uniformly."""
    if not 0.0 < damping < 1.0:
        raise PreconditionError("damping must lie in (0, 1)")
    n = g.n
    if n == 0:
        return CentralityResult(np.zeros(0), "pagerank", normalized=True)
    indptr, nbrs, wts, _ = g.csr()
    out_w = np.diff(indptr) if not g.weighted else kernels.matvec_scatter(
        indptr, nbrs, wts, np.zeros(n)
    )
    if g.weighted:
        out_w = np.zeros(n)
        rows = np.repeat(np.arange(n), np.diff(indptr))
        np.add.at(out_w, rows, wts)
    out_w = out_w.astype(np.float64)
    dangling = out_w == 0
    safe_out = np.where(dangling, 1.0, out_w)
    x = np.full(n, 1.0 / n)
    for it in range(max_iter):
        spread = kernels.matvec_scatter(indptr, nbrs, wts, x / safe_out)
        lost = float(x[dangling].sum())
        x_new = damping * (spread + lost / n) + (1.0 - damping) / n
        if np.abs(x_new - x).sum() < tol:
            x = x_new
            break
        x = x_new
    x = x / x.sum()
    return CentralityResult(
        x, "pagerank", normalized=True, extras={"damping": damping, "iterations": it + 1}
    )


# ---------------------------------------------------------------------------
# electrical closeness
# ---------------------------------------------------------------------------


def _cg_laplacian(indptr, nbrs, wts, wdeg, b, tol=1e-12, max_iter=None):
    """Conjugate gradient for L x = b on the component orthogonal to 1."""
    n = b.shape[0]
    if max_iter is None:
        max_iter = 20 * n + 100
    x = np.zeros(n)
    r = b - (wdeg * x - kernels.matvec_gather(indptr, nbrs, wts, x))
    p = r.copy()
    rs = float(r @ r)
    b_norm = float(np.sqrt(b @ b)) or 1.0
    it = 0
    while math.sqrt(rs) > tol * b_norm and it < max_iter:
        ap = wdeg * p - kernels.matvec_gather(indptr, nbrs, wts, p)
        denom = float(p @ ap)
        if denom <= 0:
            break
        alpha = rs / denom
        x += alpha * p
        r -= alpha * ap
        rs_new = float(r @ r)
        p = r + (rs_new / rs) * p
        rs = rs_new
        it += 1
    x -= x.mean()
    return x, it


def electrical_closeness(
    g: Graph, epsilon: float = 0.05, delta: float = 0.1, seed=None
) -> CentralityResult:
    """Electrical closeness (n-1) / sum of effective resistances.

    Effective resistances to a pivot (the highest-degree vertex) are
    estimated from uniform spanning trees sampled with Wilson's loop-erased
    random walks: along a fixed BFS path pivot->v, the expected signed
    traversal of each edge by the tree path equals the unit current, and the
    signed sum telescopes to r(pivot, v).  One conjugate-gradient solve for
    the pivot's pseudoinverse column turns those pair resistances into the
    pseudoinverse diagonal and per-vertex resistance sums.
    """
    if g.directed:
        raise PreconditionError("electrical closeness needs an undirected graph")
    if g.weighted:
        raise PreconditionError("electrical closeness supports unweighted graphs")
    if epsilon <= 0 or not 0 < delta < 1:
        raise PreconditionError("need epsilon > 0 and delta in (0, 1)")
    if not is_connected(g):
        raise PreconditionError("electrical closeness needs a connected graph")
    n = g.n
    if n == 1:
        return CentralityResult(np.zeros(1), "electrical_closeness")
    rng = np.random.Generator(np.random.PCG64(seed))
    pivot = int(np.lexsort((np.arange(n), -g.degrees()))[0])
    indptr, nbrs, wts, _ = g.csr()
    dist = kernels.multisource_bfs(indptr, nbrs, np.array([pivot], np.int64))
    rows = np.repeat(np.arange(n), np.diff(indptr))
    targets = nbrs.astype(np.int64)
    on_path = dist[rows] + 1.0 == dist[targets]
    bfs_parent = np.full(n, n, np.int64)
    np.minimum.at(bfs_parent, targets[on_path], rows[on_path])
    bfs_parent[pivot] = -1
    ntrees = max(1, math.ceil(math.log(2.0 * n / delta) / (2.0 * epsilon**2)))
    kseed = int(rng.integers(0, 2**62))
    acc = kernels.ust_resistance_sums(
        indptr, nbrs, bfs_parent, pivot, ntrees, np.uint64(kseed), _nblocks(n)
    )
    resist = acc / float(ntrees)
    resist[pivot] = 0.0
    b = np.full(n, -1.0 / n)
    b[pivot] += 1.0
    wdeg = np.diff(indptr).astype(np.float64)
    col, cg_iters = _cg_laplacian(indptr, nbrs, wts, wdeg, b)
    diag = resist - col[pivot] + 2.0 * col
    farness = n * diag + diag.sum()
    farness = np.maximum(farness, 1e-300)
    return CentralityResult(
        (n - 1) / farness,
        "electrical_closeness",
        extras={
            "pivot": pivot,
            "num_trees": ntrees,
            "resistance_to_pivot": resist,
            "cg_iterations": cg_iters,
            "epsilon": epsilon,
            "delta": delta,
        },
    )


# ---------------------------------------------------------------------------
# betweenness improvement
# ---------------------------------------------------------------------------


@dataclass
class BetweennessImprovement:
    target: int
    edges: list  # added edges in greedy order
    scores: list  # betweenness of the target after each addition
    initial: float


def improve_betweenness(g: Graph, target: int, k: int) -> BetweennessImprovement:
    """Greedily add k edges at ``target`` to maximize its betweenness.

    Each round evaluates every non-neighbor by exact recomputation and picks
    the best (ties to the smallest id); the (1 - 1/e) guarantee of
    submodular greedy applies.  The input graph is not modified.
    """
    if g.directed:
        raise PreconditionError("betweenness improvement needs an undirected graph")
    if g.weighted:
        raise PreconditionError("betweenness improvement supports unweighted graphs")
    if k < 1:
        raise PreconditionError("k must be >= 1")
    g._check_vertex(target)
    if not is_connected(g):
        raise PreconditionError("betweenness improvement needs a connected graph")
    work = g.copy()
    candidates = [
        v for v in range(g.n) if v != target and not work.has_edge(target, v)
    ]
    if not candidates:
        raise PreconditionError("target is already adjacent to every vertex")

    def target_score(h: Graph) -> float:
        indptr, nbrs, _, _ = h.csr()
        return float(kernels.brandes(indptr, nbrs)[target] / 2.0)

    initial = target_score(work)
    edges = []
    scores = []
    for _ in range(k):
        if not candidates:
            break
        best_v = -1
        best_score = -1.0
        for v in candidates:
            work.add_edge(target, v)
            s = target_score(work)
            work.remove_edge(target, v)
            if s > best_score:
                best_score = s
                best_v = v
        work.add_edge(target, best_v)
        candidates.remove(best_v)
        edges.append((target, best_v))
        scores.append(best_score)
    return BetweennessImprovement(target, edges, scores, initial)
