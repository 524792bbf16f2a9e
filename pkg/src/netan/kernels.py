"""Kernel dispatch: numba backend by default, numpy fallback via NETAN_JIT=0."""

from ._accel import JIT_ENABLED

if JIT_ENABLED:
    from . import _kernels_jit as _impl

    BACKEND = "jit"
else:
    from . import _kernels_py as _impl

    BACKEND = "numpy"

bfs_dist_sigma = _impl.bfs_dist_sigma
dijkstra_dist_sigma = _impl.dijkstra_dist_sigma
multisource_bfs = _impl.multisource_bfs
multisource_dijkstra = _impl.multisource_dijkstra
improvement_bfs = _impl.improvement_bfs
brandes = _impl.brandes
brandes_weighted = _impl.brandes_weighted
betweenness_sample_counts = _impl.betweenness_sample_counts
farness_stats = _impl.farness_stats
farness_stats_weighted = _impl.farness_stats_weighted
topk_closeness_scan = _impl.topk_closeness_scan
components_labels = _impl.components_labels
triangles_per_edge = _impl.triangles_per_edge
matvec_gather = _impl.matvec_gather
matvec_scatter = _impl.matvec_scatter
plp_pass = _impl.plp_pass
plm_move_pass = _impl.plm_move_pass
ust_resistance_sums = _impl.ust_resistance_sums
