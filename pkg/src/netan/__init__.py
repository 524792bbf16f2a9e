"""netan: a shared-memory network analysis toolkit.

Graph core with dynamic adjacency arrays, seeded graph generators, exact and
approximate centrality, group-centrality optimization, community detection,
edge sparsification, and a statistical profiling frontend.  Hot kernels are
numba-compiled with a pure numpy fallback (``NETAN_JIT=0``).
"""

from .centrality import (
    CentralityResult,
    betweenness,
    betweenness_approx,
    closeness,
    degree_centrality,
    electrical_closeness,
    harmonic,
    improve_betweenness,
    katz,
    pagerank,
    top_k_closeness,
)
from .community import (
    SeedCommunity,
    coarsen,
    conductance,
    expand_seed,
    label_propagation,
    louvain,
    modularity,
    partition_similarity,
)
from .errors import ParseError, PreconditionError
from .generators import (
    barabasi_albert,
    chung_lu,
    gnp,
    planted_partition,
    watts_strogatz,
)
from .graph import (
    Graph,
    ShortestPaths,
    connected_components,
    is_connected,
    local_clustering,
    sssp,
)
from .group import (
    VertexGroup,
    ged_walk_greedy,
    ged_walk_score,
    group_closeness,
    group_closeness_greedy,
    group_closeness_local_search,
    group_degree,
    group_degree_greedy,
    group_distance,
    group_distances,
    group_harmonic,
    group_harmonic_greedy,
)
from .io import read_graph, write_graph
from .partition import Partition
from .profiling import ProfileReport, build_profile, render_html, render_json, spearman
from .sparsify import (
    EdgeScores,
    filter_fraction,
    filter_threshold,
    local_filter_transform,
    preservation_report,
    score_jaccard,
    score_local_degree,
    score_random,
    score_triangles,
)

__version__ = "0.1.0"
