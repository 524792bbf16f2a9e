"""Disjoint community detection, seed expansion and partition comparison.

The Louvain pipeline works on flat CSR arrays with a separate self-loop
weight vector, so coarsened levels stay cheap; the public :func:`coarsen`
wraps the same machinery for callers.  Sequential mode with a fixed seed is
fully deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import PreconditionError
from .graph import Graph
from .partition import Partition


# ---------------------------------------------------------------------------
# quality measures
# ---------------------------------------------------------------------------


def modularity(g: Graph, part: Partition, gamma: float = 1.0, loop_weight=None) -> float:
    """Newman-Girvan modularity sum_c (e_c / W - gamma * (vol_c / 2W)^2).

    ``loop_weight`` adds per-vertex self-loop weights (used by coarsened
    graphs): a loop contributes its weight to e_c and twice to the volume.
    """
    if g.directed:
        raise PreconditionError("modularity needs an undirected graph")
    if part.n != g.n:
        raise PreconditionError("partition size does not match the graph")
    us, vs, ws = g.edge_arrays()
    loops = np.zeros(g.n) if loop_weight is None else np.asarray(loop_weight, float)
    total = float(ws.sum() + loops.sum())
    if total <= 0:
        raise PreconditionError("modularity needs at least one edge")
    lab = part.labels
    intra = lab[us] == lab[vs]
    e_c = np.bincount(lab[us[intra]], weights=ws[intra], minlength=part.k).astype(float)
    e_c += np.bincount(lab, weights=loops, minlength=part.k)
    wdeg = g.weighted_degrees() + 2.0 * loops
    vol = np.bincount(lab, weights=wdeg, minlength=part.k)
    return float((e_c / total - gamma * (vol / (2.0 * total)) ** 2).sum())


def conductance(g: Graph, members) -> float:
    """cut(C) / min(vol(C), vol(V - C)); zero-volume sides score 1.0."""
    if g.directed:
        raise PreconditionError("conductance needs an undirected graph")
    mem = np.unique(np.asarray(list(members), dtype=np.int64))
    if mem.size == 0 or mem.size >= g.n:
        raise PreconditionError("need a proper non-empty vertex subset")
    inside = np.zeros(g.n, dtype=bool)
    inside[mem] = True
    us, vs, ws = g.edge_arrays()
    cross = inside[us] != inside[vs]
    cut = float(ws[cross].sum())
    wdeg = g.weighted_degrees()
    vol_in = float(wdeg[inside].sum())
    vol_out = float(wdeg.sum() - vol_in)
    denom = min(vol_in, vol_out)
    if denom == 0.0:
        return 1.0
    return cut / denom


# ---------------------------------------------------------------------------
# coarsening
# ---------------------------------------------------------------------------


@dataclass
class Coarsening:
    graph: Graph
    loop_weight: np.ndarray
    mapping: np.ndarray  # fine vertex -> coarse vertex


def _coarsen_arrays(indptr, nbrs, wts, loops, labels, k):
    """Aggregate a CSR level by community labels.

    Returns (indptr2, nbrs2, wts2, loops2): inter-community weights summed,
    intra-community weight folded into the loop vector.
    """
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    cu = labels[rows]
    cv = labels[nbrs]
    intra = cu == cv
    loops2 = np.bincount(labels, weights=loops, minlength=k)
    loops2 += 0.5 * np.bincount(cu[intra], weights=wts[intra], minlength=k)
    inter = ~intra
    key = cu[inter] * k + cv[inter]
    uniq, inv = np.unique(key, return_inverse=True)
    w2 = np.bincount(inv, weights=wts[inter], minlength=uniq.shape[0]).astype(float)
    su = (uniq // k).astype(np.int64)
    sv = (uniq % k).astype(np.int32)
    indptr2 = np.zeros(k + 1, np.int64)
    np.cumsum(np.bincount(su, minlength=k), out=indptr2[1:])
    return indptr2, sv, w2, loops2


def coarsen(g: Graph, part: Partition) -> Coarsening:
    """One vertex per block; parallel weights summed, intra weight kept as
    loop weights so modularity is preserved exactly."""
    if g.directed:
        raise PreconditionError("coarsening needs an undirected graph")
    if part.n != g.n:
        raise PreconditionError("partition size does not match the graph")
    indptr, nbrs, wts, _ = g.csr()
    indptr2, sv, w2, loops2 = _coarsen_arrays(
        indptr, nbrs.astype(np.int64), wts, np.zeros(g.n), part.labels, part.k
    )
    rows2 = np.repeat(np.arange(part.k), np.diff(indptr2))
    keep = rows2 < sv
    coarse = Graph.from_edges(
        part.k, rows2[keep], sv[keep].astype(np.int64), w2[keep], weighted=True
    )
    return Coarsening(coarse, loops2, part.labels.copy())


# ---------------------------------------------------------------------------
# label propagation
# ---------------------------------------------------------------------------


def label_propagation(g: Graph, seed=None, max_iters: int = 100) -> Partition:
    """Asynchronous majority label propagation (ties to the smallest label).

    Vertices are swept in a seeded random order until a full sweep makes no
    update or ``max_iters`` is hit.
    """
    if g.directed:
        raise PreconditionError("label propagation needs an undirected graph")
    n = g.n
    labels = np.arange(n, dtype=np.int64)
    if g.m == 0 or n == 0:
        return Partition.from_labels(labels)
    indptr, nbrs, wts, _ = g.csr()
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(max_iters):
        order = rng.permutation(n).astype(np.int64)
        if kernels.plp_pass(indptr, nbrs, wts, labels, order) == 0:
            break
    return Partition.from_labels(labels)


# ---------------------------------------------------------------------------
# Louvain
# ---------------------------------------------------------------------------


def _level_modularity(indptr, nbrs, wts, loops, labels, total_w, gamma):
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    intra = labels[rows] == labels[nbrs]
    wdeg = np.zeros(n)
    np.add.at(wdeg, rows, wts)
    wdeg += 2.0 * loops
    k = int(labels.max()) + 1
    e_c = 0.5 * np.bincount(labels[rows[intra]], weights=wts[intra], minlength=k)
    e_c += np.bincount(labels, weights=loops, minlength=k)
    vol = np.bincount(labels, weights=wdeg, minlength=k)
    return float((e_c / total_w - gamma * (vol / (2.0 * total_w)) ** 2).sum())


def _validated_move_phase(indptr, nbrs, wts, loops, labels, vols, wdeg, order, total_w, gamma):
    """Single-vertex steps with each accepted move's delta checked against a
    full modularity recomputation; mirrors the kernel pass trajectory."""
    from . import _kernels_py

    moves = 0
    for u in order:
        u = int(u)
        before = _level_modularity(indptr, nbrs, wts, loops, labels, total_w, gamma)
        old = int(labels[u])
        vol_old = float(vols[old])
        stepped = _kernels_py.plm_move_pass(
            indptr, nbrs, wts, labels, vols, wdeg, np.array([u], np.int64), total_w, gamma
        )
        if stepped:
            new = int(labels[u])
            after = _level_modularity(indptr, nbrs, wts, loops, labels, total_w, gamma)
            actual = after - before
            w_to = {}
            for j in range(indptr[u], indptr[u + 1]):
                lab = int(labels[nbrs[j]])
                w_to[lab] = w_to.get(lab, 0.0) + wts[j]
            w_old = w_to.get(old, 0.0)
            w_new = w_to.get(new, 0.0)
            vol_new_before = float(vols[new]) - wdeg[u]
            predicted = (w_new - w_old) / total_w - gamma * wdeg[u] * (
                vol_new_before - vol_old + wdeg[u]
            ) / (2.0 * total_w * total_w)
            if abs(predicted - actual) > 1e-9:
                raise AssertionError(
                    f"move delta mismatch for {u} ({old}->{new}): "
                    f"formula {predicted} vs recomputation {actual}"
                )
            if actual <= 0:
                raise AssertionError(
                    f"accepted move of {u} did not improve modularity ({actual})"
                )
            moves += 1
    return moves


def _move_phase(arrays, labels, rng, total_w, gamma, validate, max_passes=64):
    indptr, nbrs, wts, loops = arrays
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    wdeg = np.zeros(n)
    np.add.at(wdeg, rows, wts)
    wdeg += 2.0 * loops
    vols = np.bincount(labels, weights=wdeg, minlength=n)
    for _ in range(max_passes):
        order = rng.permutation(n).astype(np.int64)
        if validate:
            moves = _validated_move_phase(
                indptr, nbrs, wts, loops, labels, vols, wdeg, order, total_w, gamma
            )
        else:
            moves = kernels.plm_move_pass(
                indptr, nbrs, wts, labels, vols, wdeg, order, total_w, gamma
            )
        if moves == 0:
            break


def _louvain_level(arrays, rng, gamma, refine, validate):
    indptr, nbrs, wts, loops = arrays
    n = indptr.shape[0] - 1
    total_w = 0.5 * float(wts.sum()) + float(loops.sum())
    labels = np.arange(n, dtype=np.int64)
    _move_phase(arrays, labels, rng, total_w, gamma, validate)
    uniq, comp = np.unique(labels, return_inverse=True)
    k = uniq.shape[0]
    if k == n:
        return labels
    comp = comp.astype(np.int64)
    coarse = _coarsen_arrays(indptr, nbrs.astype(np.int64), wts, loops, comp, k)
    coarse = (coarse[0], coarse[1].astype(np.int32), coarse[2], coarse[3])
    coarse_labels = _louvain_level(coarse, rng, gamma, refine, validate)
    out = coarse_labels[comp]
    if refine:
        _move_phase(arrays, out, rng, total_w, gamma, validate)
    return out


def _split_disconnected(g: Graph, labels: np.ndarray) -> np.ndarray:
    """Relabel so every community induces a connected subgraph."""
    indptr, nbrs, wts, _ = g.csr()
    rows = np.repeat(np.arange(g.n), np.diff(indptr))
    keep = labels[rows] == labels[nbrs]
    kept_counts = np.bincount(rows[keep], minlength=g.n)
    indptr2 = np.zeros(g.n + 1, np.int64)
    np.cumsum(kept_counts, out=indptr2[1:])
    return kernels.components_labels(indptr2, nbrs[keep])


def louvain(
    g: Graph,
    seed=None,
    refine: bool = False,
    gamma: float = 1.0,
    validate_moves: bool = False,
) -> Partition:
    """Multi-level modularity optimization (local moves + coarsening).

    ``refine`` adds an extra local-move phase at every prolongation, which
    never lowers the final modularity.  ``validate_moves`` checks each
    accepted move's delta against a full recomputation (slow; n <= a few
    hundred).  Communities that come out internally disconnected are split
    into their components, which cannot decrease modularity.
    """
    if g.directed:
        raise PreconditionError("community detection needs an undirected graph")
    if g.n == 0:
        return Partition(np.empty(0, np.int64), 0)
    if g.m == 0:
        return Partition.singletons(g.n)
    indptr, nbrs, wts, _ = g.csr()
    arrays = (indptr, nbrs, wts, np.zeros(g.n))
    rng = np.random.Generator(np.random.PCG64(seed))
    labels = _louvain_level(arrays, rng, gamma, refine, validate_moves)
    labels = _split_disconnected(g, labels)
    return Partition.from_labels(labels)


# ---------------------------------------------------------------------------
# seed-set expansion
# ---------------------------------------------------------------------------


@dataclass
class SeedCommunity:
    seeds: tuple
    members: tuple
    quality: float  # conductance of the member set
    extras: dict = field(default_factory=dict)


def _conductance_state(g: Graph, members: set):
    wdeg = g.weighted_degrees()
    total = float(wdeg.sum())
    vol = float(wdeg[list(members)].sum())
    cut = 0.0
    for u in members:
        for v, w in zip(g._nbr[u], g._wt[u]):
            if v not in members:
                cut += w
    return cut, vol, total


def _cond_value(cut, vol, total):
    denom = min(vol, total - vol)
    if denom <= 0:
        return 1.0
    return cut / denom


def _max_clique_in_ego(g: Graph, seed: int) -> tuple:
    """Largest clique among the seed's neighbors (exhaustive, pivoting);
    ties resolved toward the lexicographically smallest vertex tuple."""
    ego = sorted(int(v) for v in g._nbr[seed])
    adj = {v: set(int(x) for x in g._nbr[v]) & set(ego) for v in ego}
    best: list[tuple] = [()]

    def bk(r: tuple, p: set, x: set):
        if not p and not x:
            if len(r) > len(best[0]) or (len(r) == len(best[0]) and r < best[0]):
                best[0] = r
            return
        pivot = max(p | x, key=lambda v: len(adj[v]))
        for v in sorted(p - adj[pivot]):
            bk(tuple(sorted(r + (v,))), p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    if ego:
        bk((), set(ego), set())
    return best[0]


def expand_seed(g: Graph, seeds, strategy: str = "greedy", size=None) -> SeedCommunity:
    """Grow a community around seed vertices.

    ``greedy`` adds the neighbor with the lowest resulting conductance while
    that strictly improves; ``clique`` first widens the seed by the largest
    clique in its ego-network, then runs greedy; ``bfs`` visits whole BFS
    levels (id order within the last level) until ``size`` vertices.
    """
    if g.directed:
        raise PreconditionError("seed expansion needs an undirected graph")
    seed_list = sorted(set(int(s) for s in (seeds if hasattr(seeds, "__iter__") else [seeds])))
    if not seed_list:
        raise PreconditionError("need at least one seed vertex")
    for s in seed_list:
        g._check_vertex(s)
    if strategy not in ("greedy", "clique", "bfs"):
        raise PreconditionError(f"unknown strategy {strategy!r}")

    members = set(seed_list)
    if strategy == "bfs":
        if size is None or size < len(seed_list):
            raise PreconditionError("bfs strategy needs size >= number of seeds")
        frontier = sorted(members)
        while len(members) < size and frontier:
            nxt = set()
            for u in frontier:
                for v in g._nbr[u]:
                    if v not in members:
                        nxt.add(int(v))
            if not nxt:
                break
            room = size - len(members)
            level = sorted(nxt)
            members.update(level if len(level) <= room else level[:room])
            frontier = level
        cut, vol, total = _conductance_state(g, members)
        return SeedCommunity(
            tuple(seed_list), tuple(sorted(members)), _cond_value(cut, vol, total)
        )

    if strategy == "clique":
        if len(seed_list) != 1:
            raise PreconditionError("clique seeding expects a single seed")
        members.update(_max_clique_in_ego(g, seed_list[0]))

    cut, vol, total = _conductance_state(g, members)
    cur = _cond_value(cut, vol, total)
    wdeg = g.weighted_degrees()
    while True:
        frontier = set()
        for u in members:
            frontier.update(int(v) for v in g._nbr[u] if v not in members)
        best_v, best_cond, best_state = -1, cur, None
        for v in sorted(frontier):
            w_in = sum(w for x, w in zip(g._nbr[v], g._wt[v]) if x in members)
            n_cut = cut - w_in + (wdeg[v] - w_in)
            n_vol = vol + wdeg[v]
            c = _cond_value(n_cut, n_vol, total)
            if c < best_cond - 1e-12:
                best_v, best_cond, best_state = v, c, (n_cut, n_vol)
        if best_v < 0:
            break
        members.add(best_v)
        cut, vol = best_state
        cur = best_cond
    return SeedCommunity(
        tuple(seed_list), tuple(sorted(members)), cur, extras={"strategy": strategy}
    )


# ---------------------------------------------------------------------------
# partition similarity
# ---------------------------------------------------------------------------


def _contingency(p1: Partition, p2: Partition):
    key = p1.labels * p2.k + p2.labels
    uniq, cnt = np.unique(key, return_counts=True)
    return uniq // p2.k, uniq % p2.k, cnt.astype(np.float64)


def partition_similarity(p1: Partition, p2: Partition, kind: str = "nmi") -> float:
    """Pair-counting (rand, jaccard) or information (nmi) agreement in [0, 1]."""
    if p1.n != p2.n:
        raise PreconditionError("partitions cover different vertex sets")
    n = p1.n
    if n == 0:
        return 1.0
    i_idx, j_idx, nij = _contingency(p1, p2)
    a_sizes = p1.sizes().astype(np.float64)
    b_sizes = p2.sizes().astype(np.float64)
    if kind in ("rand", "jaccard"):
        pairs = n * (n - 1) / 2.0
        same_both = float((nij * (nij - 1) / 2.0).sum())
        same_1 = float((a_sizes * (a_sizes - 1) / 2.0).sum())
        same_2 = float((b_sizes * (b_sizes - 1) / 2.0).sum())
        if kind == "rand":
            if pairs == 0:
                return 1.0
            agree = same_both + (pairs - same_1 - same_2 + same_both)
            return agree / pairs
        denom = same_1 + same_2 - same_both
        if denom == 0:
            return 1.0  # both all-singletons
        return same_both / denom
    if kind == "nmi":
        nf = float(n)
        h1 = -sum(s / nf * math.log(s / nf) for s in a_sizes if s > 0)
        h2 = -sum(s / nf * math.log(s / nf) for s in b_sizes if s > 0)
        if h1 + h2 == 0.0:
            return 1.0
        mi = 0.0
        for i, j, c in zip(i_idx, j_idx, nij):
            pij = c / nf
            mi += pij * math.log(pij / (a_sizes[i] / nf * b_sizes[j] / nf))
        return max(0.0, min(1.0, 2.0 * mi / (h1 + h2)))
    raise ValueError(f"unknown similarity kind {kind!r}")
