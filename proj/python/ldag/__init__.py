"""Labeled directed acyclic graphs: scoring, structure learning and CSI reasoning."""

from ._core import (
    CpdSet,
    Dataset,
    Ldag,
    LdagError,
    __version__,
    ci_by_cases,
    cross_validate,
    csi_equivalent,
    csi_separated,
    d_separated,
    estimate_parameters,
    joint_probability,
    kl_divergence,
    learn,
    log_marginal_likelihood,
    log_posterior_predictive,
    log_score,
    markov_equivalent,
    random_parameters,
    sample,
)

__all__ = [
    "CpdSet",
    "Dataset",
    "Ldag",
    "LdagError",
    "__version__",
    "ci_by_cases",
    "cross_validate",
    "csi_equivalent",
    "csi_separated",
    "d_separated",
    "estimate_parameters",
    "joint_probability",
    "kl_divergence",
    "learn",
    "log_marginal_likelihood",
    "log_posterior_predictive",
    "log_score",
    "markov_equivalent",
    "random_parameters",
    "sample",
]
