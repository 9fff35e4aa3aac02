"""Multivariate approximation over exponentially weighted tensor-product spaces.

Exact spectra, information complexity, certified bounds, convergence
exponents, tractability classification, and the five concrete example
spaces with the optimal truncation algorithm.
"""

from .bounds import (
    ExponentReport,
    exponents,
    lower_bound,
    permutation_upper_bound,
    sum_tau,
    upper_bound,
)
from .classify import (
    LimitSummary,
    TractabilityReport,
    classify,
    family_limits,
    implication_violations,
    limits_of,
)
from .complexity import (
    BRUTE_FORCE,
    RECURSION,
    Budget,
    budget_from_eps,
    eps_from_budget,
    info_complexity,
    j_eps,
)
from .errors import ParameterError, PreconditionError, ResourceLimitError, ToleranceError
from .params import (
    KOROBOV_MULT,
    UNIT_MULT,
    DeclaredLimits,
    MultiplicitySpec,
    SpaceConfig,
    WeightFamily,
    config_from_dict,
    config_to_dict,
    dumps_config,
    level_of,
    load_config,
    prefix_counts,
    weight_at,
)
from .spaces import (
    COSINE,
    HERMITE,
    KOROBOV,
    L2SEQ,
    CoefficientVector,
    ErrorCertificate,
    SpaceKind,
    basis_eval,
    kernel_eval,
    kind_from_name,
    optimal_index_set,
    truncate_optimal,
    walsh,
    weighted_basis_eval,
)
from .spectrum import EigenEntry, EigenStream, eigenvalue, exponent_sum, nth_minimal_error

__version__ = "0.1.0"

__all__ = [
    "BRUTE_FORCE",
    "Budget",
    "COSINE",
    "CoefficientVector",
    "DeclaredLimits",
    "EigenEntry",
    "EigenStream",
    "ErrorCertificate",
    "ExponentReport",
    "HERMITE",
    "KOROBOV",
    "KOROBOV_MULT",
    "L2SEQ",
    "LimitSummary",
    "MultiplicitySpec",
    "ParameterError",
    "PreconditionError",
    "RECURSION",
    "ResourceLimitError",
    "SpaceConfig",
    "SpaceKind",
    "ToleranceError",
    "TractabilityReport",
    "UNIT_MULT",
    "WeightFamily",
    "basis_eval",
    "budget_from_eps",
    "classify",
    "config_from_dict",
    "config_to_dict",
    "dumps_config",
    "eigenvalue",
    "eps_from_budget",
    "exponent_sum",
    "exponents",
    "family_limits",
    "implication_violations",
    "info_complexity",
    "j_eps",
    "kernel_eval",
    "kind_from_name",
    "level_of",
    "limits_of",
    "load_config",
    "lower_bound",
    "nth_minimal_error",
    "optimal_index_set",
    "permutation_upper_bound",
    "prefix_counts",
    "sum_tau",
    "truncate_optimal",
    "upper_bound",
    "walsh",
    "weight_at",
    "weighted_basis_eval",
]
