"""Finite-dimensional Gaussian Wick calculus with a verification workbench.

Functions on R^n under the standard Gaussian measure are represented two
ways: sparse Hermite chaos expansions (polynomials) and finite
combinations of stochastic exponentials.  Both carry an exact operator
calculus (Wick/pointwise/interpolating products, second quantization,
gradients, convolution-measure integrals), and a harness sweeps the
inequality and positivity checks built on top of it.
"""

from .chaos import (
    ChaosExpansion,
    MultiIndex,
    dirichlet_energy,
    eval_chaos,
    gamma_apply,
    gradient,
    hermite_eval,
    l2_inner,
    l2_norm,
    multi_indices,
    number_apply,
    ou_apply,
)
from .checks import (
    CHECK_REGISTRY,
    DEFAULT_TOLS,
    ab_matrix_check,
    beckner_deficit,
    char_gram_psd_check,
    classic_beckner_coeff_check,
    covariance_gap,
    function_from_json,
    g_lambda_bound_check,
    holder_check,
    left_positivity,
    oracle_triangle,
    run_check,
    strong_positivity_check,
)
from .expspan import (
    ExpCombo,
    alpha_exp,
    exp_eval,
    gamma_exp,
    gradient_exp,
    mu_inner_exp,
    pointwise_exp,
    to_chaos,
    to_chaos_tail_bound,
    wick_exp,
)
from .measures import (
    ConvolutionMeasure,
    DiscreteMeasure,
    HermitianGram,
    char_gram,
    convolve_nu,
    density_xi,
    g_lambda_norm,
    gamma_xi,
    integrability_functional,
    rho_integral_chaos,
    rho_integral_exp,
    sample_rho,
    wick_density_identity_check,
)
from .products import (
    HolderParams,
    alpha_chaos,
    holder_relation_check,
    pointwise_chaos,
    wick_chaos,
)
from .quadrature import (
    QuadratureGrid,
    default_grid,
    default_order,
    gauss_hermite_grid,
    integrate_mu,
    integrate_rho,
    lp_norm_exp,
    lp_norm_mu,
    mc_integral_rho,
    mehler_ou,
)
from .report import InequalityReport
from .suite import ConfigError, SuiteConfig, build_tasks, load_config, run_suite, write_reports

__version__ = "0.1.0"

__all__ = [
    "CHECK_REGISTRY",
    "ChaosExpansion",
    "ConfigError",
    "ConvolutionMeasure",
    "DEFAULT_TOLS",
    "DiscreteMeasure",
    "ExpCombo",
    "HermitianGram",
    "HolderParams",
    "InequalityReport",
    "MultiIndex",
    "QuadratureGrid",
    "SuiteConfig",
    "ab_matrix_check",
    "alpha_chaos",
    "alpha_exp",
    "beckner_deficit",
    "build_tasks",
    "char_gram",
    "char_gram_psd_check",
    "classic_beckner_coeff_check",
    "convolve_nu",
    "covariance_gap",
    "default_grid",
    "default_order",
    "density_xi",
    "dirichlet_energy",
    "eval_chaos",
    "exp_eval",
    "function_from_json",
    "g_lambda_bound_check",
    "g_lambda_norm",
    "gamma_apply",
    "gamma_exp",
    "gamma_xi",
    "gauss_hermite_grid",
    "gradient",
    "gradient_exp",
    "hermite_eval",
    "holder_check",
    "holder_relation_check",
    "integrability_functional",
    "integrate_mu",
    "integrate_rho",
    "l2_inner",
    "l2_norm",
    "left_positivity",
    "load_config",
    "lp_norm_exp",
    "lp_norm_mu",
    "mc_integral_rho",
    "mehler_ou",
    "mu_inner_exp",
    "multi_indices",
    "number_apply",
    "oracle_triangle",
    "ou_apply",
    "pointwise_chaos",
    "pointwise_exp",
    "rho_integral_chaos",
    "rho_integral_exp",
    "run_check",
    "run_suite",
    "sample_rho",
    "strong_positivity_check",
    "to_chaos",
    "to_chaos_tail_bound",
    "wick_chaos",
    "wick_density_identity_check",
    "wick_exp",
    "write_reports",
]
