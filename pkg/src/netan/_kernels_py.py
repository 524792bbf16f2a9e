"""Pure numpy/python twins of the numba kernels.

Same signatures and semantics as ``_kernels_jit``; selected when numba is
unavailable or disabled via ``NETAN_JIT=0``.  Integer results are
bit-identical to the jit backend; float accumulations can differ in the last
ulp where the summation grouping differs.  Traversals are vectorized
level-by-level, the inherently sequential passes (label propagation, local
moves, random walks) are plain python loops.
"""

import heapq

import numpy as np

INF = np.inf

_M64 = (1 << 64) - 1
_U53 = 1.0 / 9007199254740992.0


def _mix64(z):
    z = (z + 0x9E3779B97F4A7C15) & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return z ^ (z >> 31)


def _u01(seed, k):
    return (_mix64(int(seed) ^ _mix64(int(k))) >> 11) * _U53


def _ranges(starts, lens):
    """Concatenated [s, s+l) index ranges."""
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, np.int64)
    ends = np.cumsum(lens)
    shift = np.repeat(starts - np.concatenate(([0], ends[:-1])), lens)
    return np.arange(total, dtype=np.int64) + shift


def _frontier_edges(indptr, nbrs, frontier):
    starts = indptr[frontier]
    lens = indptr[frontier + 1] - starts
    idx = _ranges(starts, lens)
    return nbrs[idx].astype(np.int64), np.repeat(frontier, lens), idx


# ---------------------------------------------------------------------------
# shortest paths
# ---------------------------------------------------------------------------


def bfs_dist_sigma(indptr, nbrs, src):
    n = indptr.shape[0] - 1
    dist = np.full(n, INF)
    sigma = np.zeros(n)
    dist[src] = 0.0
    sigma[src] = 1.0
    frontier = np.array([src], np.int64)
    d = 0.0
    while frontier.size:
        cand, rows, _ = _frontier_edges(indptr, nbrs, frontier)
        fresh = cand[dist[cand] == INF]
        dist[fresh] = d + 1.0
        step = dist[cand] == d + 1.0
        np.add.at(sigma, cand[step], sigma[rows[step]])
        frontier = np.unique(fresh)
        d += 1.0
    return dist, sigma


def dijkstra_dist_sigma(indptr, nbrs, wts, src):
    n = indptr.shape[0] - 1
    dist = np.full(n, INF)
    sigma = np.zeros(n)
    done = np.zeros(n, np.bool_)
    dist[src] = 0.0
    sigma[src] = 1.0
    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for j in range(indptr[u], indptr[u + 1]):
            v = int(nbrs[j])
            nd = d + wts[j]
            if nd < dist[v]:
                dist[v] = nd
                sigma[v] = sigma[u]
                heapq.heappush(heap, (nd, v))
            elif nd == dist[v] and not done[v]:
                sigma[v] += sigma[u]
    return dist, sigma


def multisource_bfs(indptr, nbrs, sources):
    n = indptr.shape[0] - 1
    dist = np.full(n, INF)
    frontier = np.unique(np.asarray(sources, np.int64))
    dist[frontier] = 0.0
    d = 0.0
    while frontier.size:
        cand, _, _ = _frontier_edges(indptr, nbrs, frontier)
        fresh = np.unique(cand[dist[cand] == INF])
        dist[fresh] = d + 1.0
        frontier = fresh
        d += 1.0
    return dist


def multisource_dijkstra(indptr, nbrs, wts, sources):
    n = indptr.shape[0] - 1
    dist = np.full(n, INF)
    done = np.zeros(n, np.bool_)
    heap = []
    for s in np.unique(np.asarray(sources, np.int64)):
        dist[s] = 0.0
        heap.append((0.0, int(s)))
    heapq.heapify(heap)
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for j in range(indptr[u], indptr[u + 1]):
            v = int(nbrs[j])
            nd = d + wts[j]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def improvement_bfs(indptr, nbrs, src, cap):
    n = indptr.shape[0] - 1
    dist = np.full(n, INF)
    if not 0.0 < cap[src]:
        return dist
    dist[src] = 0.0
    frontier = np.array([src], np.int64)
    d = 0.0
    while frontier.size:
        cand, _, _ = _frontier_edges(indptr, nbrs, frontier)
        take = (d + 1.0 < cap[cand]) & (d + 1.0 < dist[cand])
        fresh = np.unique(cand[take])
        dist[fresh] = d + 1.0
        frontier = fresh
        d += 1.0
    return dist


# ---------------------------------------------------------------------------
# betweenness
# ---------------------------------------------------------------------------


def _bfs_levels(indptr, nbrs, src, n):
    dist = np.full(n, -1, np.int64)
    sigma = np.zeros(n)
    dist[src] = 0
    sigma[src] = 1.0
    frontier = np.array([src], np.int64)
    levels = [frontier]
    d = 0
    while True:
        cand, rows, _ = _frontier_edges(indptr, nbrs, frontier)
        fresh = cand[dist[cand] < 0]
        dist[fresh] = d + 1
        step = dist[cand] == d + 1
        np.add.at(sigma, cand[step], sigma[rows[step]])
        frontier = np.unique(fresh)
        if frontier.size == 0:
            break
        levels.append(frontier)
        d += 1
    return dist, sigma, levels


def brandes(indptr, nbrs):
    n = indptr.shape[0] - 1
    bc = np.zeros(n)
    for s in range(n):
        dist, sigma, levels = _bfs_levels(indptr, nbrs, s, n)
        delta = np.zeros(n)
        for frontier in levels[:0:-1]:
            cand, rows, _ = _frontier_edges(indptr, nbrs, frontier)
            down = dist[cand] == dist[rows] + 1
            contrib = np.zeros(n)
            np.add.at(
                contrib,
                rows[down],
                sigma[rows[down]] / sigma[cand[down]] * (1.0 + delta[cand[down]]),
            )
            delta[frontier] += contrib[frontier]
            bc[frontier] += contrib[frontier]
        # contributions into the source are discarded with delta
    return bc


def brandes_weighted(indptr, nbrs, wts):
    n = indptr.shape[0] - 1
    bc = np.zeros(n)
    for s in range(n):
        dist = np.full(n, INF)
        sigma = np.zeros(n)
        done = np.zeros(n, np.bool_)
        order = []
        dist[s] = 0.0
        sigma[s] = 1.0
        heap = [(0.0, s)]
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            order.append(u)
            for j in range(indptr[u], indptr[u + 1]):
                v = int(nbrs[j])
                nd = d + wts[j]
                if nd < dist[v]:
                    dist[v] = nd
                    sigma[v] = sigma[u]
                    heapq.heappush(heap, (nd, v))
                elif nd == dist[v] and not done[v]:
                    sigma[v] += sigma[u]
        delta = np.zeros(n)
        for w in order[:0:-1]:
            acc = 0.0
            for j in range(indptr[w], indptr[w + 1]):
                v = int(nbrs[j])
                if dist[v] == dist[w] + wts[j]:
                    acc += sigma[w] / sigma[v] * (1.0 + delta[v])
            delta[w] = acc
            bc[w] += acc
    return bc


def betweenness_sample_counts(indptr, nbrs, ss, ts, seed, nblocks):
    n = indptr.shape[0] - 1
    counts = np.zeros(n, np.int64)
    for i in range(ss.shape[0]):
        s, t = int(ss[i]), int(ts[i])
        dist, sigma, _ = _bfs_levels(indptr, nbrs, s, n)
        if dist[t] <= 1:
            continue
        w = t
        base = i * n
        step = 0
        while dist[w] > 1:
            total = 0.0
            for j in range(indptr[w], indptr[w + 1]):
                v = int(nbrs[j])
                if dist[v] == dist[w] - 1:
                    total += sigma[v]
            thresh = _u01(seed, base + step) * total
            cum = 0.0
            p = -1
            for j in range(indptr[w], indptr[w + 1]):
                v = int(nbrs[j])
                if dist[v] == dist[w] - 1:
                    cum += sigma[v]
                    p = v
                    if cum > thresh:
                        break
            counts[p] += 1
            w = p
            step += 1
    return counts


# ---------------------------------------------------------------------------
# closeness family
# ---------------------------------------------------------------------------


def farness_stats(indptr, nbrs, nblocks, symmetric=True):
    n = indptr.shape[0] - 1
    farn = np.zeros(n)
    harm = np.zeros(n)
    reach = np.zeros(n, np.int64)
    for s in range(n):
        dist = multisource_bfs(indptr, nbrs, np.array([s], np.int64))
        ok = np.isfinite(dist) & (dist > 0)
        farn[s] = dist[ok].sum()
        harm[s] = (1.0 / dist[ok]).sum()
        reach[s] = int(ok.sum())
    return farn, harm, reach


def farness_stats_weighted(indptr, nbrs, wts):
    n = indptr.shape[0] - 1
    farn = np.zeros(n)
    harm = np.zeros(n)
    reach = np.zeros(n, np.int64)
    for s in range(n):
        dist = multisource_dijkstra(indptr, nbrs, wts, np.array([s], np.int64))
        ok = np.isfinite(dist) & (dist > 0)
        farn[s] = dist[ok].sum()
        harm[s] = (1.0 / dist[ok]).sum()
        reach[s] = int(ok.sum())
    return farn, harm, reach


def topk_closeness_scan(indptr, nbrs, order, k):
    n = indptr.shape[0] - 1
    farness = np.full(n, INF)
    heap = []  # max-heap via negation
    completed = 0
    for s in order:
        s = int(s)
        kth = -heap[0] if len(heap) == k else INF
        dist = np.full(n, -1, np.int64)
        dist[s] = 0
        frontier = np.array([s], np.int64)
        seen = 1
        fsum = 0.0
        level = 0
        pruned = False
        while frontier.size:
            cand, _, _ = _frontier_edges(indptr, nbrs, frontier)
            fresh = np.unique(cand[dist[cand] < 0])
            dist[fresh] = level + 1
            seen += fresh.size
            fsum += float(fresh.size * (level + 1))
            level += 1
            frontier = fresh
            if len(heap) == k and seen < n:
                bound = fsum + (level + 1.0) * (n - seen)
                if bound > kth:
                    pruned = True
                    break
        if not pruned:
            farness[s] = fsum
            completed += 1
            if len(heap) < k:
                heapq.heappush(heap, -fsum)
            elif fsum < -heap[0]:
                heapq.heapreplace(heap, -fsum)
    return farness, completed


# ---------------------------------------------------------------------------
# structure
# ---------------------------------------------------------------------------


def components_labels(indptr, nbrs):
    n = indptr.shape[0] - 1
    labels = np.full(n, -1, np.int64)
    cur = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = cur
        frontier = np.array([s], np.int64)
        while frontier.size:
            cand, _, _ = _frontier_edges(indptr, nbrs, frontier)
            fresh = np.unique(cand[labels[cand] < 0])
            labels[fresh] = cur
            frontier = fresh
        cur += 1
    return labels


def triangles_per_edge(sindptr, snbrs, eu, ev):
    n = sindptr.shape[0] - 1
    rows = [snbrs[sindptr[v] : sindptr[v + 1]] for v in range(n)]
    tri = np.empty(eu.shape[0], np.int64)
    for e in range(eu.shape[0]):
        tri[e] = np.intersect1d(rows[eu[e]], rows[ev[e]], assume_unique=True).size
    return tri


def matvec_gather(indptr, nbrs, wts, x):
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    return np.bincount(rows, weights=wts * x[nbrs], minlength=n).astype(np.float64)


def matvec_scatter(indptr, nbrs, wts, x):
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    return np.bincount(nbrs, weights=wts * x[rows], minlength=n).astype(np.float64)


# ---------------------------------------------------------------------------
# community detection passes
# ---------------------------------------------------------------------------


def plp_pass(indptr, nbrs, wts, labels, order):
    updates = 0
    for u in order:
        u = int(u)
        lo, hi = indptr[u], indptr[u + 1]
        if hi == lo:
            continue
        lw = {}
        for j in range(lo, hi):
            lab = int(labels[nbrs[j]])
            lw[lab] = lw.get(lab, 0.0) + wts[j]
        best = int(labels[u])
        bw = -1.0
        for lab in lw:  # insertion order matches the jit scan order
            w = lw[lab]
            if w > bw or (w == bw and lab < best):
                bw = w
                best = lab
        if best != labels[u]:
            labels[u] = best
            updates += 1
    return updates


def plm_move_pass(indptr, nbrs, wts, labels, vols, wdeg, order, total_w, gamma):
    moves = 0
    inv_w = 1.0 / total_w
    inv_2w2 = 1.0 / (2.0 * total_w * total_w)
    eps = 1e-12
    for u in order:
        u = int(u)
        lo, hi = indptr[u], indptr[u + 1]
        if hi == lo:
            continue
        c_u = int(labels[u])
        lw = {}
        for j in range(lo, hi):
            lab = int(labels[nbrs[j]])
            lw[lab] = lw.get(lab, 0.0) + wts[j]
        w_own = lw.get(c_u, 0.0)
        du = wdeg[u]
        best = c_u
        best_gain = 0.0
        for d_lab, w_d in lw.items():
            if d_lab == c_u:
                continue
            gain = (w_d - w_own) * inv_w - gamma * du * (
                vols[d_lab] - vols[c_u] + du
            ) * inv_2w2
            if gain > best_gain + eps or (
                gain > best_gain - eps and best != c_u and d_lab < best
            ):
                best_gain = gain
                best = d_lab
        if best != c_u and best_gain > eps:
            vols[c_u] -= du
            vols[best] += du
            labels[u] = best
            moves += 1
    return moves


# ---------------------------------------------------------------------------
# uniform spanning trees
# ---------------------------------------------------------------------------


def ust_resistance_sums(indptr, nbrs, bfs_parent, root, ntrees, seed, nblocks):
    n = indptr.shape[0] - 1
    acc = np.zeros(n, np.int64)
    for t in range(ntrees):
        intree = np.zeros(n, np.bool_)
        parent = np.full(n, -1, np.int64)
        nxt = np.empty(n, np.int64)
        intree[root] = True
        state = _mix64(int(seed) ^ (t + 1))
        for v0 in range(n):
            if intree[v0]:
                continue
            u = v0
            while not intree[u]:
                deg = int(indptr[u + 1] - indptr[u])
                state = _mix64(state)
                pick = int((state >> 11) * _U53 * deg)
                if pick == deg:
                    pick = deg - 1
                w = int(nbrs[indptr[u] + pick])
                nxt[u] = w
                u = w
            u = v0
            while not intree[u]:
                intree[u] = True
                parent[u] = nxt[u]
                u = int(nxt[u])
        # Euler intervals via iterative DFS over children lists
        kids = [[] for _ in range(n)]
        for v in range(n):
            if v != root:
                kids[parent[v]].append(v)
        tin = np.empty(n, np.int64)
        tout = np.empty(n, np.int64)
        timer = 0
        stack = [(root, iter(kids[root]))]
        tin[root] = timer
        timer += 1
        while stack:
            v, it = stack[-1]
            nxt_child = next(it, None)
            if nxt_child is None:
                tout[v] = timer
                stack.pop()
            else:
                tin[nxt_child] = timer
                timer += 1
                stack.append((nxt_child, iter(kids[nxt_child])))
        for v in range(n):
            if v == root:
                continue
            tv = tin[v]
            bnode = v
            s_v = 0
            while bnode != root:
                a = int(bfs_parent[bnode])
                if parent[bnode] == a and tin[bnode] <= tv < tout[bnode]:
                    s_v += 1
                elif parent[a] == bnode and tin[a] <= tv < tout[a]:
                    s_v -= 1
                bnode = a
            acc[v] += s_v
    return acc
