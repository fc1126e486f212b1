"""Mixed-membership blockmodel graphs and their recovery.

Sampling of membership matrices and weighted graphs, community recovery
by successive projection plus per-community linear programs, evaluation
metrics, and the closed-form bounds that predict when recovery works.
"""

from .errors import ConvergenceFailure, InvalidInput, ParseError
from .evaluation import (
    ComplexSet,
    EvaluationResult,
    binarize,
    entrywise_error,
    export_complexes,
    merge_complexes,
    overlap_score,
)
from .linalg import SpectralEmbedding, project_out, singular_values, top_k_eigs
from .lp import (
    LpProblem,
    LpSolution,
    RecoveryResult,
    recover_all,
    simplex_core,
    solve_anchor_lp,
)
from .mmsb import (
    MmsbParams,
    ThetaMatrix,
    WeightedGraph,
    adjacency_from_uniforms,
    averaging_samples,
    build_probability_matrix,
    make_interaction_matrix,
    sample_adjacency_average,
    sample_theta,
)
from .spa import SpaResult, successive_projection
from .theory import (
    ConcentrationReport,
    RecoveryBounds,
    compute_bounds,
    compute_bounds_from_kappa,
    reg_incomplete_beta,
    run_concentration_check,
)

__all__ = [
    "ComplexSet",
    "ConcentrationReport",
    "ConvergenceFailure",
    "EvaluationResult",
    "InvalidInput",
    "LpProblem",
    "LpSolution",
    "MmsbParams",
    "ParseError",
    "RecoveryBounds",
    "RecoveryResult",
    "SpaResult",
    "SpectralEmbedding",
    "ThetaMatrix",
    "WeightedGraph",
    "adjacency_from_uniforms",
    "averaging_samples",
    "binarize",
    "build_probability_matrix",
    "compute_bounds",
    "compute_bounds_from_kappa",
    "entrywise_error",
    "export_complexes",
    "make_interaction_matrix",
    "merge_complexes",
    "overlap_score",
    "project_out",
    "recover_all",
    "reg_incomplete_beta",
    "run_concentration_check",
    "sample_adjacency_average",
    "sample_theta",
    "simplex_core",
    "singular_values",
    "solve_anchor_lp",
    "successive_projection",
    "top_k_eigs",
]

__version__ = "0.1.0"
