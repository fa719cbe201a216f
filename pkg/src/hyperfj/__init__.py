"""Opinion dynamics on hypergraphs.

Hypergraphs with per-hyperedge contribution fractions are projected onto
weighted (di)graphs; the equilibrium of the resulting linear opinion dynamics
is computed exactly (direct solve), iteratively, or estimated in linear time
by sampling spanning converging forests. A brute-force forest enumerator
serves as the correctness oracle for both the exact and sampled paths.
"""

__version__ = "0.1.0"

from .digraph import WeightedDigraph, laplacian_apply, reachable_from, symmetrize_check
from .dynamics import (
    DENSE_LIMIT_DEFAULT,
    EquilibriumReport,
    FundamentalMatrix,
    GraphTooLargeError,
    IterationResult,
    NonConvergenceError,
    exact_equilibrium,
    fj_iterate,
    fj_step,
    fundamental_matrix,
    overall_opinion,
    polarization,
)
from .enumeration import (
    ForestFamily,
    InForest,
    enumerate_in_forests,
    forest_matrix_bruteforce,
    forest_matrix_exact,
    forest_weight_rooted,
)
from .hypergraph import (
    Hyperedge,
    Hypergraph,
    filter_singletons,
    powerlaw_gamma,
    random_opinions,
    synthetic_hypergraph,
    uniform_gamma,
    unit_edge_weights,
    validate,
)
from .io import (
    DatasetFormatError,
    LoadResult,
    RunReport,
    SimplexDatasetRef,
    load_hyperedge_list,
    load_simplex_dataset,
    write_report,
)
from .projection import InvalidHypergraphError, project_clique, project_directed
from .sampler import (
    EstimateReport,
    SamplerConfig,
    estimate,
    estimator_stderr,
    root_frequencies,
    sample_forest,
)
