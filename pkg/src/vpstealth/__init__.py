"""Stealth communication with vanishing-power inputs over binary symmetric channels."""

from .binary_channel import (
    BernoulliDist,
    BscChannel,
    DomainError,
    VpProfile,
    binary_entropy,
    chi2_distance,
    kl_divergence,
    mutual_information_vp,
    output_marginal,
    variational_distance,
    vp_input_dist,
)
from .exponents import (
    ExponentCurve,
    e0_hat_alpha,
    eg_hat_alpha,
    er_cap_alpha,
    er_hat_alpha,
    exponent_curve,
    gallager_e0,
    gallager_eg,
    r_alpha_max,
    resolvability_divergence_bound,
    resolvability_threshold,
)
from .stealth_region import (
    StealthBudget,
    StealthScenario,
    achievable_region,
    covert_scaling_constant,
    k_constant,
    rate_key_bounds,
    uncoded_divergence,
    uncoded_stealth_check,
)
from .simulator import Codebook, TrialConfig, generate_codebook, run_reliability_trials, warren_statistics

__all__ = [
    "BernoulliDist",
    "BscChannel",
    "DomainError",
    "VpProfile",
    "binary_entropy",
    "chi2_distance",
    "kl_divergence",
    "mutual_information_vp",
    "output_marginal",
    "variational_distance",
    "vp_input_dist",
    "ExponentCurve",
    "e0_hat_alpha",
    "eg_hat_alpha",
    "er_cap_alpha",
    "er_hat_alpha",
    "exponent_curve",
    "gallager_e0",
    "gallager_eg",
    "r_alpha_max",
    "resolvability_divergence_bound",
    "resolvability_threshold",
    "StealthBudget",
    "StealthScenario",
    "achievable_region",
    "covert_scaling_constant",
    "k_constant",
    "rate_key_bounds",
    "uncoded_divergence",
    "uncoded_stealth_check",
    "Codebook",
    "TrialConfig",
    "generate_codebook",
    "run_reliability_trials",
    "warren_statistics",
]

__version__ = "0.1.0"
