"""Degree Matrix Comparison (DMC) for unsupervised graph alignment."""

from dmcalign.assignment import Assignment, cost_matrix, greedy_hungarian, greedy_prefilter, hungarian
from dmcalign.degree_matrix import (
    DegreeMatrix,
    build_degree_matrices,
    build_weighted_degree_matrices,
    permute_rows,
)
from dmcalign.generators import (
    GeneratorSpec,
    gen_barabasi_albert,
    gen_chung_lu_poisson,
    gen_er_kpartite,
    generate,
)
from dmcalign.graph import (
    DegreeStats,
    EdgeListError,
    Graph,
    degree,
    degree_stats,
    load_edge_list,
    relabel_shuffle,
    write_edge_list,
)
from dmcalign.pipeline import AlignmentResult, MethodSpec, align, score
from dmcalign.sampling import (
    GraphPair,
    edge_deletion_pair,
    load_pair,
    overlap_pair,
    random_walk_sample,
    save_pair,
)

__version__ = "0.1.0"
