"""Adjacency-array graph and the traversal/structure primitives on it.

The graph stores one growable neighbor list per vertex (ids, weights, edge
ids), which keeps edge insertion and deletion cheap while still exporting a
CSR view for the compiled kernels.  Vertex ids are dense integers in
[0, n); self-loops and parallel edges are rejected.  Undirected graphs keep
each edge in both endpoint lists but count it once in ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import PreconditionError
from .partition import Partition


class Graph:
    """Undirected or directed graph with optional non-negative edge weights.

    Edge ids are dense in [0, m): removing an edge hands its id to the edge
    that previously held the largest id, so per-edge score arrays stay
    compact.  Unweighted graphs report weight 1.0 for every edge.
    """

    def __init__(self, n: int = 0, directed: bool = False, weighted: bool = False):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.directed = bool(directed)
        self.weighted = bool(weighted)
        self._nbr: list[list[int]] = [[] for _ in range(n)]
        self._wt: list[list[float]] = [[] for _ in range(n)]
        self._eid: list[list[int]] = [[] for _ in range(n)]
        self._eu: list[int] = []
        self._ev: list[int] = []
        self._ew: list[float] = []
        self._csr = None
        self._csr_sorted = None

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._nbr)

    @property
    def m(self) -> int:
        return len(self._eu)

    def degree(self, v: int) -> int:
        return len(self._nbr[v])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self._nbr), dtype=np.int64, count=self.n)

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def weighted_degrees(self) -> np.ndarray:
        if not self.weighted:
            return self.degrees().astype(np.float64)
        return np.fromiter(
            (sum(w) for w in self._wt), dtype=np.float64, count=self.n
        )

    def neighbors(self, v: int) -> np.ndarray:
        return np.array(self._nbr[v], dtype=np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        return self._find(u, v) >= 0

    def edge_weight(self, u: int, v: int) -> float:
        pos = self._find(u, v)
        if pos < 0:
            raise KeyError(f"no edge ({u}, {v})")
        return self._wt[u][pos]

    def edge_endpoints(self, eid: int) -> tuple[int, int]:
        return self._eu[eid], self._ev[eid]

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Edge endpoints and weights indexed by edge id."""
        return (
            np.array(self._eu, dtype=np.int64),
            np.array(self._ev, dtype=np.int64),
            np.array(self._ew, dtype=np.float64),
        )

    def total_weight(self) -> float:
        return float(sum(self._ew))

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise ValueError(f"vertex id {v} out of range [0, {self.n})")

    def _find(self, u: int, v: int) -> int:
        self._check_vertex(u)
        self._check_vertex(v)
        row = self._nbr[u]
        for i, w in enumerate(row):
            if w == v:
                return i
        return -1

    # -- mutation ----------------------------------------------------------

    def add_edge(self, u: int, v: int, w: float = 1.0) -> int:
        """Insert edge (u, v) and return its id.

        Rejects self-loops, duplicates, out-of-range ids and negative
        weights.  On unweighted graphs only weight 1.0 is accepted.
        """
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError(f"self-loop ({u}, {u}) not allowed")
        w = float(w)
        if w < 0:
            raise ValueError("edge weight must be non-negative")
        if not self.weighted and w != 1.0:
            raise ValueError("unweighted graph only stores weight 1.0")
        if self._find(u, v) >= 0:
            raise ValueError(f"edge ({u}, {v}) already present")
        eid = self.m
        self._nbr[u].append(v)
        self._wt[u].append(w)
        self._eid[u].append(eid)
        if not self.directed:
            self._nbr[v].append(u)
            self._wt[v].append(w)
            self._eid[v].append(eid)
        self._eu.append(u)
        self._ev.append(v)
        self._ew.append(w)
        self._invalidate()
        return eid

    def remove_edge(self, u: int, v: int) -> None:
        """Delete edge (u, v); the last edge id is recycled into the gap."""
        pos = self._find(u, v)
        if pos < 0:
            raise ValueError(f"edge ({u}, {v}) not present")
        eid = self._eid[u][pos]
        self._drop_entry(u, pos)
        if not self.directed:
            self._drop_entry(v, self._nbr[v].index(u))
        last = self.m - 1
        if eid != last:
            lu, lv = self._eu[last], self._ev[last]
            self._eu[eid], self._ev[eid], self._ew[eid] = lu, lv, self._ew[last]
            self._relabel_eid(lu, last, eid)
            if not self.directed:
                self._relabel_eid(lv, last, eid)
        self._eu.pop()
        self._ev.pop()
        self._ew.pop()
        self._invalidate()

    def _drop_entry(self, x: int, pos: int):
        self._nbr[x].pop(pos)
        self._wt[x].pop(pos)
        self._eid[x].pop(pos)

    def _relabel_eid(self, x: int, old: int, new: int):
        row = self._eid[x]
        row[row.index(old)] = new

    def _invalidate(self):
        self._csr = None
        self._csr_sorted = None

    # -- bulk construction and views ----------------------------------------

    @classmethod
    def from_edges(
        cls,
        n: int,
        us,
        vs,
        ws=None,
        directed: bool = False,
        weighted: bool = False,
    ) -> "Graph":
        """Build a graph from endpoint arrays with vectorized validation."""
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        m = us.shape[0]
        if vs.shape[0] != m:
            raise ValueError("endpoint arrays differ in length")
        if weighted:
            if ws is None:
                ws = np.ones(m)
            ws = np.asarray(ws, dtype=np.float64)
            if ws.shape[0] != m:
                raise ValueError("weight array length mismatch")
            if m and ws.min() < 0:
                raise ValueError("edge weight must be non-negative")
        else:
            if ws is not None and not np.all(np.asarray(ws) == 1.0):
                raise ValueError("unweighted graph only stores weight 1.0")
            ws = np.ones(m)
        if m:
            if us.min() < 0 or vs.min() < 0 or us.max() >= n or vs.max() >= n:
                raise ValueError("vertex id out of range")
            if np.any(us == vs):
                raise ValueError("self-loop not allowed")
            if directed:
                key = us * n + vs
            else:
                key = np.minimum(us, vs) * n + np.maximum(us, vs)
            if np.unique(key).shape[0] != m:
                raise ValueError("duplicate edge in input")

        g = cls(n, directed=directed, weighted=weighted)
        g._eu = us.tolist()
        g._ev = vs.tolist()
        g._ew = ws.tolist()
        eids = np.arange(m, dtype=np.int64)
        if directed:
            src, tgt, ew, eid = us, vs, ws, eids
        else:
            # interleave the two directions so neighbor lists keep edge order
            src = np.empty(2 * m, np.int64)
            tgt = np.empty(2 * m, np.int64)
            ew = np.empty(2 * m, np.float64)
            eid = np.empty(2 * m, np.int64)
            src[0::2], src[1::2] = us, vs
            tgt[0::2], tgt[1::2] = vs, us
            ew[0::2] = ew[1::2] = ws
            eid[0::2] = eid[1::2] = eids
        order = np.argsort(src, kind="stable")
        ssrc, stgt, sew, seid = src[order], tgt[order], ew[order], eid[order]
        deg = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, np.int64)
        np.cumsum(deg, out=indptr[1:])
        g._nbr = [stgt[indptr[v] : indptr[v + 1]].tolist() for v in range(n)]
        g._wt = [sew[indptr[v] : indptr[v + 1]].tolist() for v in range(n)]
        g._eid = [seid[indptr[v] : indptr[v + 1]].tolist() for v in range(n)]
        g._csr = (indptr, stgt.astype(np.int32), sew, seid)
        return g

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """CSR view (indptr, nbrs, wts, eids); undirected rows hold both
        directions.  Cached until the next mutation."""
        if self._csr is None:
            n = self.n
            deg = self.degrees()
            indptr = np.zeros(n + 1, np.int64)
            np.cumsum(deg, out=indptr[1:])
            size = int(indptr[-1])
            import itertools

            nbrs = np.fromiter(
                itertools.chain.from_iterable(self._nbr), np.int32, count=size
            )
            wts = np.fromiter(
                itertools.chain.from_iterable(self._wt), np.float64, count=size
            )
            eids = np.fromiter(
                itertools.chain.from_iterable(self._eid), np.int64, count=size
            )
            self._csr = (indptr, nbrs, wts, eids)
        return self._csr

    def csr_sorted(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR with id-sorted rows (for merge intersections)."""
        if self._csr_sorted is None:
            indptr, nbrs, _, _ = self.csr()
            rows = np.repeat(np.arange(self.n), np.diff(indptr))
            order = np.lexsort((nbrs, rows))
            self._csr_sorted = (indptr, nbrs[order])
        return self._csr_sorted

    def copy(self) -> "Graph":
        g = Graph(self.n, directed=self.directed, weighted=self.weighted)
        g._nbr = [row.copy() for row in self._nbr]
        g._wt = [row.copy() for row in self._wt]
        g._eid = [row.copy() for row in self._eid]
        g._eu = self._eu.copy()
        g._ev = self._ev.copy()
        g._ew = self._ew.copy()
        return g

    def subgraph_edges(self, keep_eids) -> "Graph":
        """Same vertex set, edges restricted to ``keep_eids`` (re-numbered)."""
        keep = np.asarray(keep_eids, dtype=np.int64)
        us, vs, ws = self.edge_arrays()
        return Graph.from_edges(
            self.n,
            us[keep],
            vs[keep],
            ws[keep] if self.weighted else None,
            directed=self.directed,
            weighted=self.weighted,
        )

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        w = ", weighted" if self.weighted else ""
        return f"Graph(n={self.n}, m={self.m}, {kind}{w})"


# ---------------------------------------------------------------------------
# traversal
# ---------------------------------------------------------------------------


@dataclass
class ShortestPaths:
    """Single-source shortest-path tree data.

    ``dist`` uses +inf for unreachable vertices, ``num_paths`` counts the
    shortest paths from the source, ``preds`` lists each vertex's
    predecessors on shortest paths (empty for the source and for
    unreachable vertices).
    """

    source: int
    dist: np.ndarray
    num_paths: np.ndarray
    preds: list


def sssp(g: Graph, s: int) -> ShortestPaths:
    """BFS (unweighted) or Dijkstra (weighted) with path counting."""
    g._check_vertex(s)
    indptr, nbrs, wts, _ = g.csr()
    if g.weighted:
        dist, sigma = kernels.dijkstra_dist_sigma(indptr, nbrs, wts, s)
    else:
        dist, sigma = kernels.bfs_dist_sigma(indptr, nbrs, s)
    rows = np.repeat(np.arange(g.n), np.diff(indptr))
    targets = nbrs.astype(np.int64)
    on_path = dist[rows] + wts == dist[targets]
    preds = [[] for _ in range(g.n)]
    for u, v in zip(rows[on_path], targets[on_path]):
        preds[v].append(int(u))
    preds = [np.array(p, dtype=np.int64) for p in preds]
    return ShortestPaths(source=s, dist=dist, num_paths=sigma, preds=preds)


def connected_components(g: Graph) -> Partition:
    """Connected components of an undirected graph, labeled by discovery."""
    if g.directed:
        raise PreconditionError("connected components need an undirected graph")
    indptr, nbrs, _, _ = g.csr()
    labels = kernels.components_labels(indptr, nbrs)
    k = int(labels.max()) + 1 if g.n else 0
    return Partition(labels, k)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return connected_components(g).k == 1


def triangles_per_vertex(g: Graph) -> np.ndarray:
    if g.directed:
        raise PreconditionError("triangle counts need an undirected graph")
    us, vs, _ = g.edge_arrays()
    sindptr, snbrs = g.csr_sorted()
    tri_e = kernels.triangles_per_edge(sindptr, snbrs, us, vs)
    tri_v = np.zeros(g.n, dtype=np.int64)
    np.add.at(tri_v, us, tri_e)
    np.add.at(tri_v, vs, tri_e)
    # each triangle at v is seen by two of its incident edges
    return tri_v // 2


def local_clustering(g: Graph) -> np.ndarray:
    """Per-vertex clustering coefficient triangles(v) / C(deg(v), 2).

    Weights are ignored; vertices of degree < 2 get 0.
    """
    tri = triangles_per_vertex(g)
    deg = g.degrees()
    out = np.zeros(g.n)
    ok = deg >= 2
    pairs = deg[ok] * (deg[ok] - 1) / 2.0
    out[ok] = tri[ok] / pairs
    return out
