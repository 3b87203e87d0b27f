"""Coefficient extraction, optional shrinkage, and polynomial synthesis.

Given samples of a function at quadrature nodes, the discrete inner
products alpha_l = sum_j w_j f(x_j) phi_l(x_j) are the coordinates of the
degree-n projection of f; applying a shrinkage operator elementwise to
alpha produces the thresholded variants.  Three quadrature regimes are
supported: ``classical`` (exactness >= 2n, so the projection is the exact
weighted least-squares minimizer), ``relaxed`` (exactness >= n + 1), and
``unfettered`` (only a Gram defect below 1 is required).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BasisSpec, build_sampling_matrix, legendre_matrix
from .prox import ThresholdRule, apply_vector
from .quadrature import QuadratureRule, gram_defect

__all__ = ["Hyperinterpolant", "coefficients", "hyperinterpolate", "evaluate", "coefficient_norm"]

VARIANTS = ("classical", "relaxed", "unfettered")


@dataclass(frozen=True)
class Hyperinterpolant:
    """Polynomial in the orthonormal Legendre basis, stored by coefficients."""

    basis: BasisSpec
    coeffs: np.ndarray
    variant: str = "classical"
    threshold_applied: str | None = None

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coeffs, dtype=float)
        if coeffs.shape != (self.basis.dimension,):
            raise ValueError(
                f"coefficient vector must have length {self.basis.dimension}; got {coeffs.shape}"
            )
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)


def coefficients(samples, rule: QuadratureRule, basis: BasisSpec) -> np.ndarray:
    """Discrete inner products of the samples with each basis polynomial."""
    values = np.asarray(samples, dtype=float)
    if values.shape != (rule.node_count,):
        raise ValueError(
            f"samples must align with the rule's {rule.node_count} nodes; got {values.shape}"
        )
    a = build_sampling_matrix(rule, basis.degree).entries
    return a.T @ (rule.weights * values)


def _check_variant(rule: QuadratureRule, degree: int, variant: str) -> None:
    if variant == "classical":
        if rule.declared_exactness < 2 * degree:
            raise ValueError(
                f"classical projection of degree {degree} needs exactness >= {2 * degree}; "
                f"rule declares {rule.declared_exactness}"
            )
    elif variant == "relaxed":
        if rule.declared_exactness < degree + 1:
            raise ValueError(
                f"relaxed projection of degree {degree} needs exactness >= {degree + 1}; "
                f"rule declares {rule.declared_exactness}"
            )
    elif variant == "unfettered":
        eta = gram_defect(rule, degree)
        if eta >= 1.0:
            raise ValueError(f"unfettered projection needs Gram defect < 1; got {eta!r}")
    else:
        raise ValueError(f"unknown variant {variant!r}")


def hyperinterpolate(
    samples,
    rule: QuadratureRule,
    basis: BasisSpec,
    threshold: ThresholdRule | None = None,
    variant: str = "classical",
) -> Hyperinterpolant:
    """Project the samples onto the basis, optionally shrinking coefficients.

    With ``threshold`` absent this is the plain quadrature projection; the
    samples and basis are never modified, shrinkage acts on coefficients
    only.  The variant tag selects which quadrature precondition is
    enforced; the arithmetic is identical for all three.
    """
    _check_variant(rule, basis.degree, variant)
    alpha = coefficients(samples, rule, basis)
    label = None
    if threshold is not None:
        alpha = apply_vector(threshold, alpha)
        label = threshold.describe()
    return Hyperinterpolant(basis=basis, coeffs=alpha, variant=variant, threshold_applied=label)


def evaluate(h: Hyperinterpolant, points) -> np.ndarray:
    """Evaluate the polynomial at points in [-1, 1] (one recurrence sweep per call)."""
    x = np.atleast_1d(np.asarray(points, dtype=float))
    return legendre_matrix(x, h.basis.degree) @ h.coeffs


def coefficient_norm(h: Hyperinterpolant) -> float:
    """Euclidean norm of the coefficients = L2 norm of the synthesized polynomial."""
    return float(np.linalg.norm(h.coeffs))
