"""Thresholded hyperinterpolation on [-1, 1].

Quadrature-sampled polynomial projection with hard, soft, springback, and
l^q (Newton) shrinkage of the coefficients, threshold-selection rules with
sparsity certificates, concentration-bound calculators with Monte Carlo
verifiers, and a reproducible experiment harness (library, HTTP service,
and CLI).
"""

from .basis import BasisSpec, SamplingMatrix, build_sampling_matrix, eval_orthonormal_legendre
from .experiments import (
    DenoiseConfig,
    ExperimentReport,
    MethodSpec,
    RecoveryConfig,
    default_methods,
    run_denoise,
    run_recovery,
)
from .hyper import Hyperinterpolant, coefficient_norm, coefficients, evaluate, hyperinterpolate
from .metrics import MetricsRow, aisnr_db, l2_error, max_error, snr_db
from .noise import NoiseSpec, derive_seed, sample
from .prox import (
    NewtonSettings,
    ThresholdRule,
    apply,
    apply_vector,
    critical_q,
    hard,
    lambda_bar,
    lambda_star,
    lq_prox,
    newton_threshold_a,
    soft,
    springback,
)
from .quadrature import QuadratureRule, gauss_legendre, gram_defect, rule_for_exactness, verify_exactness
from .sparsity import (
    SparsityCertificate,
    TailBoundReport,
    bernstein_support_bound,
    corollary_lambda_min,
    error_bound_rhs,
    gaussian_psi2,
    lambda_for_sparsity,
    lambda_top_k,
    subgaussian_flip_bound,
    u_vector,
)

__version__ = "0.1.0"

__all__ = [
    "BasisSpec",
    "SamplingMatrix",
    "build_sampling_matrix",
    "eval_orthonormal_legendre",
    "DenoiseConfig",
    "ExperimentReport",
    "MethodSpec",
    "RecoveryConfig",
    "default_methods",
    "run_denoise",
    "run_recovery",
    "Hyperinterpolant",
    "coefficient_norm",
    "coefficients",
    "evaluate",
    "hyperinterpolate",
    "MetricsRow",
    "aisnr_db",
    "l2_error",
    "max_error",
    "snr_db",
    "NoiseSpec",
    "derive_seed",
    "sample",
    "NewtonSettings",
    "ThresholdRule",
    "apply",
    "apply_vector",
    "critical_q",
    "hard",
    "lambda_bar",
    "lambda_star",
    "lq_prox",
    "newton_threshold_a",
    "soft",
    "springback",
    "QuadratureRule",
    "gauss_legendre",
    "gram_defect",
    "rule_for_exactness",
    "verify_exactness",
    "SparsityCertificate",
    "TailBoundReport",
    "bernstein_support_bound",
    "corollary_lambda_min",
    "error_bound_rhs",
    "gaussian_psi2",
    "lambda_for_sparsity",
    "lambda_top_k",
    "subgaussian_flip_bound",
    "u_vector",
    "__version__",
]
