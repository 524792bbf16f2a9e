"""Two-step edge sparsification: score edges, then filter.

Scores are oriented so that higher means more important.  Any scorer output
can be run through the local-filter transform and either filter, so
pipelines compose freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import PreconditionError
from .graph import Graph, connected_components, local_clustering


@dataclass
class EdgeScores:
    values: np.ndarray  # indexed by edge id
    scorer: str


def _require_undirected(g: Graph, what: str):
    if g.directed:
        raise PreconditionError(f"{what} needs an undirected graph")


# ---------------------------------------------------------------------------
# scorers
# ---------------------------------------------------------------------------


def score_random(g: Graph, seed=None) -> EdgeScores:
    """Independent uniform(0, 1) per edge; surprisingly strong baseline."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return EdgeScores(rng.random(g.m), "random")


def score_triangles(g: Graph) -> EdgeScores:
    """Number of triangles the edge participates in (common neighbors)."""
    _require_undirected(g, "triangle scoring")
    us, vs, _ = g.edge_arrays()
    sindptr, snbrs = g.csr_sorted()
    tri = kernels.triangles_per_edge(sindptr, snbrs, us, vs)
    return EdgeScores(tri.astype(np.float64), "triangles")


def score_jaccard(g: Graph) -> EdgeScores:
    """Triangle count over the size of the endpoints' united neighborhoods."""
    _require_undirected(g, "jaccard scoring")
    us, vs, _ = g.edge_arrays()
    sindptr, snbrs = g.csr_sorted()
    tri = kernels.triangles_per_edge(sindptr, snbrs, us, vs).astype(np.float64)
    deg = g.degrees()
    union = deg[us] + deg[vs] - tri - 2.0  # drop u and v themselves
    out = np.where(union > 0, tri / np.maximum(union, 1.0), 0.0)
    return EdgeScores(out, "jaccard")


def _neighbor_ranks(g: Graph, key_desc: np.ndarray):
    """1-based rank of each CSR entry within its row, ordered by descending
    key with ascending-id ties."""
    indptr, nbrs, _, eids = g.csr()
    rows = np.repeat(np.arange(g.n), np.diff(indptr))
    order = np.lexsort((nbrs, -key_desc, rows))
    ranks = np.empty(len(nbrs), np.int64)
    ranks[order] = np.arange(len(nbrs)) - np.repeat(indptr[:-1], np.diff(indptr))[order] + 1
    return rows, ranks, eids


def score_local_degree(g: Graph) -> EdgeScores:
    """Local degree score: rank neighbors by degree, keep hubs reachable.

    For each vertex u the neighbor at 1-based rank rho (degree descending)
    contributes 1 - log(rho)/log(deg(u)); the edge takes the maximum over
    both endpoints, and degree-1 vertices give their only edge a full score
    of 1.  Equal-degree neighbors share their best rank (competition
    ranking), so the score never depends on storage order and symmetric
    graphs score uniformly.
    """
    _require_undirected(g, "local degree scoring")
    indptr, nbrs, _, eids = g.csr()
    deg = g.degrees()
    key = deg[nbrs.astype(np.int64)].astype(np.float64)
    rows = np.repeat(np.arange(g.n), np.diff(indptr))
    order = np.lexsort((nbrs, -key, rows))
    total = len(nbrs)
    pos = np.arange(total) - np.repeat(indptr[:-1], np.diff(indptr))[order]
    new_run = np.ones(total, dtype=bool)
    if total > 1:
        new_run[1:] = (rows[order][1:] != rows[order][:-1]) | (
            key[order][1:] != key[order][:-1]
        )
    run_start = np.maximum.accumulate(np.where(new_run, np.arange(total), -1))
    ranks = np.empty(total, np.int64)
    ranks[order] = pos[run_start] + 1
    d_row = deg[rows].astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        contrib = 1.0 - np.log(ranks) / np.log(d_row)
    contrib[d_row <= 1.0] = 1.0  # degree-1 rule and log(1) guard
    out = np.zeros(g.m)
    np.maximum.at(out, eids, contrib)
    return EdgeScores(out, "local_degree")


# ---------------------------------------------------------------------------
# transforms and filters
# ---------------------------------------------------------------------------


def local_filter_transform(g: Graph, scores: EdgeScores) -> EdgeScores:
    """Re-score edges so that global threshold filtering realizes the
    per-vertex "keep the top ceil(deg^e) neighbors" rule.

    With rho the 1-based rank of the neighbor by the input score (ties to
    the smaller id), the transformed value is max over both endpoints of
    1 - log(rho - 1)/log(deg); keeping values strictly above 1 - e then
    equals keeping each vertex's top ceil(deg^e) neighbors (union over
    endpoints).  Rank-1 neighbors map to 1 and survive any threshold < 1.
    """
    _require_undirected(g, "local filtering")
    if scores.values.shape[0] != g.m:
        raise PreconditionError("score vector does not match the edge count")
    indptr, nbrs, _, eids = g.csr()
    per_entry = scores.values[eids]
    rows, ranks, eids = _neighbor_ranks(g, per_entry)
    deg = g.degrees()[rows].astype(np.float64)
    out_entry = np.ones(len(ranks))
    multi = (ranks >= 2) & (deg > 1)
    out_entry[multi] = 1.0 - np.log(ranks[multi] - 1.0) / np.log(deg[multi])
    out = np.full(g.m, -np.inf)
    np.maximum.at(out, eids, out_entry)
    return EdgeScores(out, f"local_filter({scores.scorer})")


def filter_fraction(g: Graph, scores: EdgeScores, fraction: float) -> Graph:
    """Keep the ceil(fraction * m) highest-scored edges (ties by edge id)."""
    if not 0.0 <= fraction <= 1.0:
        raise PreconditionError("fraction must lie in [0, 1]")
    if scores.values.shape[0] != g.m:
        raise PreconditionError("score vector does not match the edge count")
    keep_count = math.ceil(fraction * g.m)
    order = np.lexsort((np.arange(g.m), -scores.values))
    return g.subgraph_edges(np.sort(order[:keep_count]))


def filter_threshold(g: Graph, scores: EdgeScores, threshold: float) -> Graph:
    """Keep edges scoring strictly above the threshold."""
    if scores.values.shape[0] != g.m:
        raise PreconditionError("score vector does not match the edge count")
    return g.subgraph_edges(np.flatnonzero(scores.values > threshold))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def preservation_report(g: Graph, g2: Graph) -> dict:
    """How well g2 (a sparsified g) preserves key structure of g."""
    from .profiling import spearman, _diameter_info

    if g.n != g2.n:
        raise PreconditionError("graphs must share the vertex set")
    deg_rho = spearman(g.degrees().astype(float), g2.degrees().astype(float))
    out = {
        "degree_spearman": deg_rho,
        "clustering_delta": float(local_clustering(g2).mean() - local_clustering(g).mean())
        if g.n
        else 0.0,
        "component_delta": connected_components(g2).k - connected_components(g).k,
    }
    d1 = _diameter_info(g)
    d2 = _diameter_info(g2)
    out["diameter_delta"] = d2["value"] - d1["value"]
    out["diameter_exact"] = bool(d1["exact"] and d2["exact"])
    return out
