"""Numba-compiled graph kernels.

All kernels operate on CSR adjacency arrays: ``indptr`` (int64, length n+1),
``nbrs`` (int32) and, where weights matter, ``wts`` (float64) aligned with
``nbrs``.  Undirected graphs store both directions.  Every kernel here has a
pure numpy/python twin in ``_kernels_py`` with the same signature and
semantics; ``netan.kernels`` picks one of the two at import time.

Determinism: kernels that draw random numbers use a stateless splitmix64
stream keyed by (seed, logical index), so results do not depend on the chunk
layout or worker count.  Accumulations across parallel blocks are integer
sums or per-slot writes, which makes parallel results bit-identical to the
sequential ones.
"""

import numpy as np
from numba import njit, prange

INF = np.inf

_GOLD = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U53 = 1.0 / 9007199254740992.0  # 2**-53


@njit(cache=True, inline="always")
def _mix64(z):
    z = (z + _GOLD) & np.uint64(0xFFFFFFFFFFFFFFFF)
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@njit(cache=True, inline="always")
def _u01(seed, k):
    # one uniform double in [0, 1) per (seed, k) pair
    z = _mix64(np.uint64(seed) ^ _mix64(np.uint64(k)))
    return (z >> np.uint64(11)) * _U53


# ---------------------------------------------------------------------------
# shortest paths
# ---------------------------------------------------------------------------


@njit(cache=True)
def bfs_dist_sigma(indptr, nbrs, src):
    n = indptr.shape[0] - 1
    dist = np.full(n, INF)
    sigma = np.zeros(n)
    q = np.empty(n, np.int32)
    dist[src] = 0.0
    sigma[src] = 1.0
    q[0] = src
    head, tail = 0, 1
    while head < tail:
        u = q[head]
        head += 1
        du = dist[u]
        for j in range(indptr[u], indptr[u + 1]):
            v = nbrs[j]
            if dist[v] == INF:
                dist[v] = du + 1.0
                q[tail] = v
                tail += 1
            if dist[v] == du + 1.0:
                sigma[v] += sigma[u]
    return dist, sigma


@njit(cache=True, inline="always")
def _hpush(hk, hv, size, key, val):
    i = size
    hk[i] = key
    hv[i] = val
    while i > 0:
        p = (i - 1) >> 1
        if hk[p] <= hk[i]:
            break
        hk[p], hk[i] = hk[i], hk[p]
        hv[p], hv[i] = hv[i], hv[p]
        i = p
    return size + 1


@njit(cache=True, inline="always")
def _hpop(hk, hv, size):
    key = hk[0]
    val = hv[0]
    size -= 1
    hk[0] = hk[size]
    hv[0] = hv[size]
    i = 0
    while True:
        l = 2 * i + 1
        if l >= size:
            break
        c = l
        if l + 1 < size and hk[l + 1] < hk[l]:
            c = l + 1
        if hk[i] <= hk[c]:
            break
        hk[i], hk[c] = hk[c], hk[i]
        hv[i], hv[c] = hv[c], hv[i]
        i = c
    return key, val, size


@njit(cache=True)
def dijkstra_dist_sigma(indptr, nbrs, wts, src):
    n = indptr.shape[0] - 1
    cap = nbrs.shape[0] + 1
    dist = np.full(n, INF)
    sigma = np.zeros(n)
    done = np.zeros(n, np.bool_)
    hk = np.empty(cap)
    hv = np.empty(cap, np.int32)
    dist[src] = 0.0
    sigma[src] = 1.0
    size = _hpush(hk, hv, 0, 0.0, src)
    while size > 0:
        d, u, size = _hpop(hk, hv, size)
        if done[u]:
            continue
        done[u] = True
        for j in range(indptr[u], indptr[u + 1]):
            v = nbrs[j]
            nd = d + wts[j]
            if nd < dist[v]:
                dist[v] = nd
                sigma[v] = sigma[u]
                size = _hpush(hk, hv, size, nd, v)
            elif nd == dist[v] and not done[v]:
                sigma[v] += sigma[u]
    return dist, sigma


@njit(cache=True)
def multisource_bfs(indptr, nbrs, sources):
    n = indptr.shape[0] - 1
    dist = np.full(n, INF)
    q = np.empty(n, np.int32)
    tail = 0
    for i in range(sources.shape[0]):
        s = sources[i]
        if dist[s] == INF:
            dist[s] = 0.0
            q[tail] = s
            tail += 1
    head = 0
    while head < tail:
        u = q[head]
        head += 1
        du = dist[u]
        for j in range(indptr[u], indptr[u + 1]):
            v = nbrs[j]
            if dist[v] == INF:
                dist[v] = du + 1.0
                q[tail] = v
                tail += 1
    return dist


@njit(cache=True)
def multisource_dijkstra(indptr, nbrs, wts, sources):
    n = indptr.shape[0] - 1
    cap = nbrs.shape[0] + sources.shape[0] + 1
    dist = np.full(n, INF)
    done = np.zeros(n, np.bool_)
    hk = np.empty(cap)
    hv = np.empty(cap, np.int32)
    size = 0
    for i in range(sources.shape[0]):
        s = sources[i]
        if dist[s] > 0.0:
            dist[s] = 0.0
            size = _hpush(hk, hv, size, 0.0, s)
    while size > 0:
        d, u, size = _hpop(hk, hv, size)
        if done[u]:
            continue
        done[u] = True
        for j in range(indptr[u], indptr[u + 1]):
            v = nbrs[j]
            nd = d + wts[j]
            if nd < dist[v]:
                dist[v] = nd
                size = _hpush(hk, hv, size, nd, v)
    return dist


@njit(cache=True)
def improvement_bfs(indptr, nbrs, src, cap):
    """BFS from ``src`` exploring only vertices it strictly improves.

    ``cap[v]`` is the incumbent distance; the returned array holds the new
    distance where ``new < cap[v]`` and +inf elsewhere.  Paths through a
    non-improved vertex cannot improve anything beyond it, so the wavefront
    is pruned there.
    """
    n = indptr.shape[0] - 1
    dist = np.full(n, INF)
    q = np.empty(n, np.int32)
    tail = 0
    if 0.0 < cap[src]:
        dist[src] = 0.0
        q[0] = src
        tail = 1
    head = 0
    while head < tail:
        u = q[head]
        head += 1
        nd = dist[u] + 1.0
        for j in range(indptr[u], indptr[u + 1]):
            v = nbrs[j]
            if nd < cap[v] and nd < dist[v]:
                dist[v] = nd
                q[tail] = v
                tail += 1
    return dist


# ---------------------------------------------------------------------------
# betweenness
# ---------------------------------------------------------------------------


@njit(cache=True)
def brandes(indptr, nbrs):
    n = indptr.shape[0] - 1
    bc = np.zeros(n)
    dist = np.full(n, -1, np.int32)
    sigma = np.zeros(n)
    delta = np.zeros(n)
    order = np.empty(n, np.int32)
    for s in range(n):
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head, tail = 0, 1
        while head < tail:
            u = order[head]
            head += 1
            du = dist[u]
            for j in range(indptr[u], indptr[u + 1]):
                v = nbrs[j]
                if dist[v] < 0:
                    dist[v] = du + 1
                    order[tail] = v
                    tail += 1
                if dist[v] == du + 1:
                    sigma[v] += sigma[u]
        # dependency accumulation: scan successors in reverse BFS order
        for idx in range(tail - 1, 0, -1):
            w = order[idx]
            dw = dist[w]
            acc = 0.0
            for j in range(indptr[w], indptr[w + 1]):
                v = nbrs[j]
                if dist[v] == dw + 1:
                    acc += sigma[w] / sigma[v] * (1.0 + delta[v])
            delta[w] = acc
            bc[w] += acc
        # reset touched slots only
        for idx in range(tail):
            v = order[idx]
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0
    return bc


@njit(cache=True)
def brandes_weighted(indptr, nbrs, wts):
    n = indptr.shape[0] - 1
    cap = nbrs.shape[0] + 1
    bc = np.zeros(n)
    dist = np.full(n, INF)
    sigma = np.zeros(n)
    delta = np.zeros(n)
    done = np.zeros(n, np.bool_)
    order = np.empty(n, np.int32)
    hk = np.empty(cap)
    hv = np.empty(cap, np.int32)
    for s in range(n):
        dist[s] = 0.0
        sigma[s] = 1.0
        size = _hpush(hk, hv, 0, 0.0, s)
        cnt = 0
        while size > 0:
            d, u, size = _hpop(hk, hv, size)
            if done[u]:
                continue
            done[u] = True
            order[cnt] = u
            cnt += 1
            for j in range(indptr[u], indptr[u + 1]):
                v = nbrs[j]
                nd = d + wts[j]
                if nd < dist[v]:
                    dist[v] = nd
                    sigma[v] = sigma[u]
                    size = _hpush(hk, hv, size, nd, v)
                elif nd == dist[v] and not done[v]:
                    sigma[v] += sigma[u]
        for idx in range(cnt - 1, 0, -1):
            w = order[idx]
            dw = dist[w]
            acc = 0.0
            for j in range(indptr[w], indptr[w + 1]):
                v = nbrs[j]
                if dist[v] == dw + wts[j]:
                    acc += sigma[w] / sigma[v] * (1.0 + delta[v])
            delta[w] = acc
            bc[w] += acc
        for idx in range(cnt):
            v = order[idx]
            dist[v] = INF
            sigma[v] = 0.0
            delta[v] = 0.0
            done[v] = False
    return bc


@njit(cache=True, parallel=True)
def betweenness_sample_counts(indptr, nbrs, ss, ts, seed, nblocks):
    """Occurrences of interior vertices on sampled shortest paths.

    For each pair (ss[i], ts[i]) one shortest path is drawn uniformly at
    random (backward descent weighted by path counts) and every interior
    vertex gets one count.  Unreachable pairs contribute nothing.
    """
    n = indptr.shape[0] - 1
    r = ss.shape[0]
    nn = np.uint64(n)
    counts = np.zeros((nblocks, n), np.int64)
    for b in prange(nblocks):
        dist = np.full(n, -1, np.int32)
        sigma = np.zeros(n)
        q = np.empty(n, np.int32)
        for i in range(b, r, nblocks):
            s = ss[i]
            t = ts[i]
            # BFS from s; once t's whole level is finalized (every vertex of
            # the previous level popped) the path counts along any s-t
            # shortest path are final and the sweep can stop
            dist[s] = 0
            sigma[s] = 1.0
            q[0] = s
            head, tail = 0, 1
            t_level = np.int32(-1)
            while head < tail:
                u = q[head]
                du = dist[u]
                if t_level >= 0 and du >= t_level:
                    break
                head += 1
                for j in range(indptr[u], indptr[u + 1]):
                    v = nbrs[j]
                    if dist[v] < 0:
                        dist[v] = du + 1
                        q[tail] = v
                        tail += 1
                        if v == t:
                            t_level = du + 1
                    if dist[v] == du + 1:
                        sigma[v] += sigma[u]
            if dist[t] > 1:
                base = np.uint64(i) * nn
                w = t
                step = np.uint64(0)
                while dist[w] > 1:
                    total = 0.0
                    for j in range(indptr[w], indptr[w + 1]):
                        v = nbrs[j]
                        if dist[v] == dist[w] - 1:
                            total += sigma[v]
                    thresh = _u01(seed, base + step) * total
                    cum = 0.0
                    p = -1
                    for j in range(indptr[w], indptr[w + 1]):
                        v = nbrs[j]
                        if dist[v] == dist[w] - 1:
                            cum += sigma[v]
                            p = v
                            if cum > thresh:
                                break
                    counts[b, p] += 1
                    w = p
                    step += np.uint64(1)
            for idx in range(tail):
                v = q[idx]
                dist[v] = -1
                sigma[v] = 0.0
    out = np.zeros(n, np.int64)
    for b in range(nblocks):
        for v in range(n):
            out[v] += counts[b, v]
    return out


# ---------------------------------------------------------------------------
# closeness family
# ---------------------------------------------------------------------------


@njit(cache=True, parallel=True)
def farness_stats(indptr, nbrs, nblocks, symmetric):
    """Per-vertex (sum of distances, sum of 1/distance, reachable count).

    Level-synchronous BFS with direction optimization: once the frontier
    carries more edges than the unexplored remainder the sweep flips to
    bottom-up (each unvisited vertex probes its neighbors for the current
    level and stops at the first hit), flipping back when the frontier
    shrinks.  Bottom-up needs a symmetric CSR; directed graphs stay
    top-down.
    """
    n = indptr.shape[0] - 1
    m2 = nbrs.shape[0]
    farn = np.zeros(n)
    harm = np.zeros(n)
    reach = np.zeros(n, np.int64)
    for b in prange(nblocks):
        dist = np.empty(n, np.int32)
        cur = np.empty(n, np.int32)
        nxt = np.empty(n, np.int32)
        for s in range(b, n, nblocks):
            for i in range(n):
                dist[i] = -1
            dist[s] = 0
            cur[0] = s
            cur_len = 1
            level = 0
            visited = 1
            fsum = 0.0
            hsum = 0.0
            frontier_edges = indptr[s + 1] - indptr[s]
            unexplored = m2 - frontier_edges
            bottom_up = False
            while cur_len > 0:
                if symmetric:
                    if not bottom_up:
                        if frontier_edges * 8 > unexplored and visited < n:
                            bottom_up = True
                    elif cur_len * 24 < n:
                        bottom_up = False
                nl = level + 1
                nxt_len = 0
                next_edges = 0
                if bottom_up:
                    for v in range(n):
                        if dist[v] < 0:
                            for j in range(indptr[v], indptr[v + 1]):
                                if dist[nbrs[j]] == level:
                                    dist[v] = nl
                                    nxt[nxt_len] = v
                                    nxt_len += 1
                                    next_edges += indptr[v + 1] - indptr[v]
                                    break
                else:
                    for idx in range(cur_len):
                        u = cur[idx]
                        for j in range(indptr[u], indptr[u + 1]):
                            v = nbrs[j]
                            if dist[v] < 0:
                                dist[v] = nl
                                nxt[nxt_len] = v
                                nxt_len += 1
                                next_edges += indptr[v + 1] - indptr[v]
                fsum += float(nl) * nxt_len
                hsum += nxt_len / float(nl)
                visited += nxt_len
                unexplored -= next_edges
                frontier_edges = next_edges
                tmp = cur
                cur = nxt
                nxt = tmp
                cur_len = nxt_len
                level = nl
            farn[s] = fsum
            harm[s] = hsum
            reach[s] = visited - 1
    return farn, harm, reach


@njit(cache=True)
def farness_stats_weighted(indptr, nbrs, wts):
    n = indptr.shape[0] - 1
    farn = np.zeros(n)
    harm = np.zeros(n)
    reach = np.zeros(n, np.int64)
    for s in range(n):
        dist = multisource_dijkstra(indptr, nbrs, wts, np.full(1, s, np.int64))
        fsum = 0.0
        hsum = 0.0
        cnt = 0
        for v in range(n):
            if v != s and dist[v] != INF:
                fsum += dist[v]
                hsum += 1.0 / dist[v]
                cnt += 1
        farn[s] = fsum
        harm[s] = hsum
        reach[s] = cnt
    return farn, harm, reach


@njit(cache=True)
def topk_closeness_scan(indptr, nbrs, order, k):
    """Exact farness for the top-k closeness candidates with BFS cut-off.

    Sources are scanned in the given order; a BFS is aborted once a lower
    bound on its farness (level sums plus remaining vertices at the next
    possible level) strictly exceeds the current k-th smallest completed
    farness.  Returns per-vertex farness (+inf where pruned) and the number
    of completed searches.  Assumes a connected graph.
    """
    n = indptr.shape[0] - 1
    farness = np.full(n, INF)
    # max-heap of the k smallest completed farness values
    heap = np.empty(k)
    hsize = 0
    completed = 0
    dist = np.full(n, -1, np.int32)
    q = np.empty(n, np.int32)
    for oi in range(order.shape[0]):
        s = order[oi]
        kth = heap[0] if hsize == k else INF
        dist[s] = 0
        q[0] = s
        head, tail = 0, 1
        level_end = 1
        level = 0
        fsum = 0.0
        pruned = False
        while head < tail:
            u = q[head]
            head += 1
            du = dist[u]
            for j in range(indptr[u], indptr[u + 1]):
                v = nbrs[j]
                if dist[v] < 0:
                    dist[v] = du + 1
                    q[tail] = v
                    tail += 1
                    fsum += du + 1.0
            if head == level_end:
                # all of `level` popped: undiscovered vertices sit at
                # distance >= level + 2
                level += 1
                level_end = tail
                if hsize == k and tail < n:
                    bound = fsum + (level + 1.0) * (n - tail)
                    if bound > kth:
                        pruned = True
                        break
        if not pruned:
            farness[s] = fsum
            completed += 1
            if hsize < k:
                # heap push
                i = hsize
                heap[i] = fsum
                hsize += 1
                while i > 0:
                    p = (i - 1) >> 1
                    if heap[p] >= heap[i]:
                        break
                    heap[p], heap[i] = heap[i], heap[p]
                    i = p
            elif fsum < heap[0]:
                # replace max
                heap[0] = fsum
                i = 0
                while True:
                    l = 2 * i + 1
                    if l >= hsize:
                        break
                    c = l
                    if l + 1 < hsize and heap[l + 1] > heap[l]:
                        c = l + 1
                    if heap[i] >= heap[c]:
                        break
                    heap[i], heap[c] = heap[c], heap[i]
                    i = c
        for idx in range(tail):
            dist[q[idx]] = -1
    return farness, completed


# ---------------------------------------------------------------------------
# structure
# ---------------------------------------------------------------------------


@njit(cache=True)
def components_labels(indptr, nbrs):
    n = indptr.shape[0] - 1
    labels = np.full(n, -1, np.int64)
    q = np.empty(n, np.int32)
    cur = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = cur
        q[0] = s
        head, tail = 0, 1
        while head < tail:
            u = q[head]
            head += 1
            for j in range(indptr[u], indptr[u + 1]):
                v = nbrs[j]
                if labels[v] < 0:
                    labels[v] = cur
                    q[tail] = v
                    tail += 1
        cur += 1
    return labels


@njit(cache=True, parallel=True)
def triangles_per_edge(sindptr, snbrs, eu, ev):
    """Common-neighbor count per edge; rows of the CSR must be id-sorted."""
    m = eu.shape[0]
    tri = np.zeros(m, np.int64)
    for e in prange(m):
        u = eu[e]
        v = ev[e]
        i = sindptr[u]
        iend = sindptr[u + 1]
        j = sindptr[v]
        jend = sindptr[v + 1]
        cnt = 0
        while i < iend and j < jend:
            a = snbrs[i]
            b = snbrs[j]
            if a == b:
                cnt += 1
                i += 1
                j += 1
            elif a < b:
                i += 1
            else:
                j += 1
        tri[e] = cnt
    return tri


@njit(cache=True)
def matvec_gather(indptr, nbrs, wts, x):
    # y[u] = sum over edges u->v of w * x[v]
    n = indptr.shape[0] - 1
    y = np.zeros(n)
    for u in range(n):
        acc = 0.0
        for j in range(indptr[u], indptr[u + 1]):
            acc += wts[j] * x[nbrs[j]]
        y[u] = acc
    return y


@njit(cache=True)
def matvec_scatter(indptr, nbrs, wts, x):
    # y[v] = sum over edges u->v of w * x[u]
    n = indptr.shape[0] - 1
    y = np.zeros(n)
    for u in range(n):
        xu = x[u]
        for j in range(indptr[u], indptr[u + 1]):
            y[nbrs[j]] += wts[j] * xu
    return y


# ---------------------------------------------------------------------------
# community detection passes
# ---------------------------------------------------------------------------


@njit(cache=True)
def plp_pass(indptr, nbrs, wts, labels, order):
    """One asynchronous label-propagation sweep; returns number of updates."""
    n = indptr.shape[0] - 1
    lw = np.zeros(n)
    stamp = np.full(n, -1, np.int64)
    touched = np.empty(n, np.int64)
    updates = 0
    for oi in range(order.shape[0]):
        u = order[oi]
        cnt = 0
        for j in range(indptr[u], indptr[u + 1]):
            lab = labels[nbrs[j]]
            if stamp[lab] != u:
                stamp[lab] = u
                lw[lab] = 0.0
                touched[cnt] = lab
                cnt += 1
            lw[lab] += wts[j]
        if cnt == 0:
            continue
        best = labels[u]
        bw = -1.0
        for c in range(cnt):
            lab = touched[c]
            w = lw[lab]
            if w > bw or (w == bw and lab < best):
                bw = w
                best = lab
        if best != labels[u]:
            labels[u] = best
            updates += 1
    return updates


@njit(cache=True)
def plm_move_pass(indptr, nbrs, wts, labels, vols, wdeg, order, total_w, gamma):
    """One sequential local-move sweep of modularity optimization.

    Moves vertex u from community C to the neighboring community D with the
    largest positive modularity delta

        (w(u,D) - w(u,C\\u)) / W - gamma * d_u * (vol_D - vol_C + d_u) / (2 W^2)

    where W is the total edge weight and volumes are taken before the move.
    ``labels`` and ``vols`` are updated in place; returns the move count.
    """
    n = indptr.shape[0] - 1
    lw = np.zeros(n)
    stamp = np.full(n, -1, np.int64)
    touched = np.empty(n, np.int64)
    moves = 0
    inv_w = 1.0 / total_w
    inv_2w2 = 1.0 / (2.0 * total_w * total_w)
    eps = 1e-12
    for oi in range(order.shape[0]):
        u = order[oi]
        c_u = labels[u]
        cnt = 0
        for j in range(indptr[u], indptr[u + 1]):
            lab = labels[nbrs[j]]
            if stamp[lab] != u:
                stamp[lab] = u
                lw[lab] = 0.0
                touched[cnt] = lab
                cnt += 1
            lw[lab] += wts[j]
        if cnt == 0:
            continue
        w_own = lw[c_u] if stamp[c_u] == u else 0.0
        du = wdeg[u]
        best = c_u
        best_gain = 0.0
        for c in range(cnt):
            d_lab = touched[c]
            if d_lab == c_u:
                continue
            gain = (lw[d_lab] - w_own) * inv_w - gamma * du * (
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


@njit(cache=True, parallel=True)
def ust_resistance_sums(indptr, nbrs, bfs_parent, root, ntrees, seed, nblocks):
    """Signed traversal sums for pivot effective resistances.

    Samples ``ntrees`` uniform spanning trees (Wilson's loop-erased walks,
    rooted at ``root``) and, for every vertex v, accumulates over the edges
    (a, b) of the fixed BFS path root->v the direction indicator of the tree
    path root->v through that edge (+1 forward, -1 backward, 0 not used).
    Dividing by ``ntrees`` estimates the effective resistance r(root, v) on
    a connected unweighted graph.
    """
    n = indptr.shape[0] - 1
    acc = np.zeros((nblocks, n), np.int64)
    for b in prange(nblocks):
        parent = np.empty(n, np.int32)
        intree = np.zeros(n, np.bool_)
        nxt = np.empty(n, np.int32)
        kid_ptr = np.empty(n + 1, np.int64)
        kid = np.empty(n, np.int32)
        cur = np.empty(n, np.int64)
        tin = np.empty(n, np.int64)
        tout = np.empty(n, np.int64)
        stack = np.empty(n, np.int32)
        for t in range(b, ntrees, nblocks):
            # Wilson: loop-erased random walks to the current tree
            for v in range(n):
                intree[v] = False
            intree[root] = True
            parent[root] = -1
            state = _mix64(np.uint64(seed) ^ np.uint64(t + 1))
            for v0 in range(n):
                if intree[v0]:
                    continue
                u = v0
                while not intree[u]:
                    deg = indptr[u + 1] - indptr[u]
                    state = _mix64(state)
                    pick = int((state >> np.uint64(11)) * _U53 * deg)
                    if pick == deg:  # guard the 1.0 edge case
                        pick = deg - 1
                    w = nbrs[indptr[u] + pick]
                    nxt[u] = w
                    u = w
                u = v0
                while not intree[u]:
                    intree[u] = True
                    parent[u] = nxt[u]
                    u = nxt[u]
            # children lists via counting sort
            for v in range(n + 1):
                kid_ptr[v] = 0
            for v in range(n):
                if v != root:
                    kid_ptr[parent[v] + 1] += 1
            for v in range(n):
                kid_ptr[v + 1] += kid_ptr[v]
            for v in range(n):
                cur[v] = kid_ptr[v]
            for v in range(n):
                if v != root:
                    p = parent[v]
                    kid[cur[p]] = v
                    cur[p] += 1
            # Euler intervals
            for v in range(n):
                cur[v] = kid_ptr[v]
            timer = 0
            tin[root] = timer
            timer += 1
            stack[0] = root
            sp = 1
            while sp > 0:
                v = stack[sp - 1]
                if cur[v] < kid_ptr[v + 1]:
                    c = kid[cur[v]]
                    cur[v] += 1
                    tin[c] = timer
                    timer += 1
                    stack[sp] = c
                    sp += 1
                else:
                    tout[v] = timer
                    sp -= 1
            # accumulate direction sums along the fixed BFS paths
            for v in range(n):
                if v == root:
                    continue
                tv = tin[v]
                bnode = v
                s_v = 0
                while bnode != root:
                    a = bfs_parent[bnode]
                    if parent[bnode] == a and tin[bnode] <= tv and tv < tout[bnode]:
                        s_v += 1
                    elif parent[a] == bnode and tin[a] <= tv and tv < tout[a]:
                        s_v -= 1
                    bnode = a
                acc[b, v] += s_v
    out = np.zeros(n, np.int64)
    for b in range(nblocks):
        for v in range(n):
            out[v] += acc[b, v]
    return out
