"""Threshold selection for target sparsity and probabilistic bound calculators.

The selection rules come in two flavors: ``lambda_for_sparsity`` certifies
an upper bound on the support size of the l^q shrinkage through the
per-coordinate tie values u_l = lambda_star(|alpha_l|, q), while
``lambda_top_k`` is the plain order-statistic rule that makes hard
thresholding retain the K largest magnitudes.  The bound calculators
(sub-Gaussian flip probability, Bernstein support concentration, and the
two-term error bound) are pure formulas; each has a Monte Carlo
verifier that reports the analytic bound next to an empirical rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .noise import derive_seed, normal_stream, uniform_words
from .prox import lambda_star

__all__ = [
    "SparsityCertificate",
    "TailBoundReport",
    "u_vector",
    "lambda_for_sparsity",
    "certificate_for_sparsity",
    "lambda_top_k",
    "gaussian_psi2",
    "subgaussian_flip_bound",
    "corollary_lambda_min",
    "bernstein_support_bound",
    "error_bound_rhs",
    "flip_bound_experiment",
    "mismatch_experiment",
    "bernstein_experiment",
]


@dataclass(frozen=True)
class SparsityCertificate:
    """Threshold choice with its certified support-size bound."""

    u: np.ndarray
    k: int
    lambda_chosen: float
    guaranteed_support_bound: int

    def __post_init__(self) -> None:
        if np.any(np.asarray(self.u) < 0.0):
            raise ValueError("u entries are tie values and must be nonnegative")


@dataclass(frozen=True)
class TailBoundReport:
    """One analytic-vs-empirical comparison point from a Monte Carlo run."""

    parameter: float
    analytic_bound: float
    empirical_rate: float
    trials: int
    seed: int

    @property
    def within_slack(self) -> bool:
        """Empirical rate does not exceed the bound by more than 3 standard errors."""
        slack = 3.0 * math.sqrt(max(self.analytic_bound, 1e-300) / self.trials)
        return self.empirical_rate <= self.analytic_bound + slack


def u_vector(alpha, q: float) -> np.ndarray:
    """Per-coordinate tie values lambda_star(|alpha_l|, q); zero where alpha_l = 0.

    Evaluated through the scalar tie-value routine rather than a
    vectorized expression: the shrinkage operator compares its lam
    against the same routine, so a threshold chosen as some u_(k) hits
    the tie coordinate bit-exactly and resolves it to zero.
    """
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie strictly inside (0, 1)")
    a = np.abs(np.asarray(alpha, dtype=float))
    return np.array([lambda_star(v, q) if v != 0.0 else 0.0 for v in a])


def lambda_for_sparsity(alpha, q: float, k: int) -> float:
    """k-th largest tie value; l^q shrinkage at this lam keeps at most k-1 coordinates."""
    u = u_vector(alpha, q)
    if not 2 <= k <= u.size:
        raise ValueError(f"k must lie in [2, {u.size}]; got {k}")
    return float(np.sort(u)[::-1][k - 1])


def certificate_for_sparsity(alpha, q: float, k: int) -> SparsityCertificate:
    u = u_vector(alpha, q)
    lam = lambda_for_sparsity(alpha, q, k)
    return SparsityCertificate(u=u, k=k, lambda_chosen=lam, guaranteed_support_bound=k - 1)


def lambda_top_k(alpha, k: int) -> float:
    """(K+1)-th largest magnitude, so hard thresholding keeps the K largest.

    With ties at the boundary the strict ``> lam`` branch retains fewer
    than K entries; that collapse is deliberate.
    """
    a = np.abs(np.asarray(alpha, dtype=float))
    if not 1 <= k < a.size:
        raise ValueError(f"k must lie in [1, {a.size - 1}]; got {k}")
    return float(np.sort(a)[::-1][k])


def gaussian_psi2(sigma: float) -> float:
    """Sub-Gaussian norm of N(0, sigma^2): the t with E exp(eta^2/t^2) = 2."""
    if sigma < 0.0:
        raise ValueError("sigma must be nonnegative")
    return sigma * math.sqrt(8.0 / 3.0)


def subgaussian_flip_bound(abs_alpha: float, lam: float, psi2: float) -> float:
    """Bound on the probability that noise flips the keep/zero decision.

    Valid on both sides of the threshold; degenerate exactly at
    |alpha| = lam, which is rejected.
    """
    if abs_alpha < 0.0:
        raise ValueError("abs_alpha must be nonnegative")
    if lam <= 0.0 or psi2 <= 0.0:
        raise ValueError("lam and psi2 must be positive")
    if abs_alpha == lam:
        raise ValueError("bound degenerates at |alpha| = lam")
    gap = abs_alpha - lam
    return min(1.0, 2.0 * math.exp(-(gap * gap) / (2.0 * psi2 * psi2)))


def corollary_lambda_min(c: float, delta: float, psi2: float) -> float:
    """Smallest lam certifying flip probability <= delta under margin ||alpha|-lam| > c*lam."""
    if c <= 0.0 or psi2 <= 0.0:
        raise ValueError("c and psi2 must be positive")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie inside (0, 1)")
    return psi2 / c * math.sqrt(2.0 * math.log(2.0 / delta))


def bernstein_support_bound(k: int, dim: int, t: float) -> float:
    """Tail bound on |support size - k| for dim independent keep-indicators.

    Each coordinate is kept with probability k/dim, so the variance of the
    support size is dim * (k/dim) * (1 - k/dim).
    """
    if not 0 <= k <= dim:
        raise ValueError("need 0 <= k <= dim")
    if t <= 0.0:
        raise ValueError("t must be positive")
    p = k / dim
    variance = dim * p * (1.0 - p)
    return min(1.0, 2.0 * math.exp(-(t * t / 2.0) / (variance + t / 3.0)))


def error_bound_rhs(
    k: int, r: float, tail_energy: float, c: float, volume: float, best_uniform_error: float
) -> float:
    """sqrt(C*K*R + tail energy) + 2*sqrt(V)*E_n: the computable bound terms."""
    if k < 0 or r <= 0.0 or c <= 0.0 or volume <= 0.0:
        raise ValueError("k must be nonnegative; r, c, volume positive")
    if tail_energy < 0.0 or best_uniform_error < 0.0:
        raise ValueError("tail_energy and best_uniform_error must be nonnegative")
    return math.sqrt(c * k * r + tail_energy) + 2.0 * math.sqrt(volume) * best_uniform_error


def flip_bound_experiment(
    gaps,
    sigma: float = 0.2,
    lam: float = 1.0,
    trials: int = 100_000,
    seed: int = 0,
) -> list[TailBoundReport]:
    """Empirical flip rates for Gaussian noise across a grid of margins.

    For gap g the clean value sits at |alpha| = lam + g; a flip means the
    noisy value falls below lam.  Each grid point draws from its own
    derived stream so the report is independent of evaluation order.
    """
    psi2 = gaussian_psi2(sigma)
    reports = []
    for i, gap in enumerate(gaps):
        alpha = lam + float(gap)
        eta = normal_stream(derive_seed(seed, i), trials, sigma)
        flips = int(np.count_nonzero(np.abs(alpha + eta) < lam))
        reports.append(
            TailBoundReport(
                parameter=float(gap),
                analytic_bound=subgaussian_flip_bound(alpha, lam, psi2),
                empirical_rate=flips / trials,
                trials=trials,
                seed=seed,
            )
        )
    return reports


def mismatch_experiment(
    delta: float,
    c: float = 0.5,
    sigma: float = 0.2,
    trials: int = 100_000,
    seed: int = 0,
) -> TailBoundReport:
    """Check the lam rule of :func:`corollary_lambda_min` at margin exactly c*lam.

    The clean magnitude is placed just outside the forbidden band
    (|alpha| = lam * (1 + c) * (1 + 1e-9)); the empirical mismatch rate
    should stay within delta plus sampling slack.
    """
    lam = corollary_lambda_min(c, delta, gaussian_psi2(sigma))
    alpha = lam * (1.0 + c) * (1.0 + 1e-9)
    eta = normal_stream(derive_seed(seed, 0), trials, sigma)
    mismatches = int(np.count_nonzero(np.abs(alpha + eta) < lam))
    return TailBoundReport(
        parameter=delta,
        analytic_bound=delta,
        empirical_rate=mismatches / trials,
        trials=trials,
        seed=seed,
    )


def bernstein_experiment(
    k: int,
    dim: int,
    t_values,
    trials: int = 100_000,
    seed: int = 0,
) -> list[TailBoundReport]:
    """Empirical support-size deviation rates for independent keep-indicators."""
    p = k / dim
    u = uniform_words(derive_seed(seed, 0), 0, trials * dim).reshape(trials, dim)
    sizes = np.count_nonzero(u < p, axis=1)
    deviation = np.abs(sizes - k)
    reports = []
    for t in t_values:
        rate = int(np.count_nonzero(deviation > float(t))) / trials
        reports.append(
            TailBoundReport(
                parameter=float(t),
                analytic_bound=bernstein_support_bound(k, dim, float(t)),
                empirical_rate=rate,
                trials=trials,
                seed=seed,
            )
        )
    return reports
