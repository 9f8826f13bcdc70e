"""Rank users by latent ability from heterogeneous multiple-choice responses."""

from ._core import (
    AbilityRankError,
    Dataset,
    RankResult,
    ResponseMatrix,
    ScoreVector,
    __version__,
    abh_beta,
    abh_shifted_matvec,
    brute_force_c1p_order,
    eigvec_variance,
    generate_c1p,
    is_p_matrix,
    methods,
    orient_by_decile_entropy,
    prob_binary,
    prob_polytomous,
    rank,
    rank_displacement,
    sample_dataset,
    spearman,
    u_matvec,
    udiff_matvec,
)

__all__ = [
    "AbilityRankError",
    "Dataset",
    "RankResult",
    "ResponseMatrix",
    "ScoreVector",
    "__version__",
    "abh_beta",
    "abh_shifted_matvec",
    "brute_force_c1p_order",
    "eigvec_variance",
    "generate_c1p",
    "is_p_matrix",
    "methods",
    "orient_by_decile_entropy",
    "prob_binary",
    "prob_polytomous",
    "rank",
    "rank_displacement",
    "sample_dataset",
    "spearman",
    "u_matvec",
    "udiff_matvec",
]
