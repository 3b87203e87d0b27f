"""Orthonormal Legendre basis on [-1, 1] and the node-sampling matrix.

Basis indexing is 1-based: phi_1 is the constant 1/sqrt(2) and phi_l has
polynomial degree l - 1, normalized so that integral(phi_i * phi_j) over
[-1, 1] equals the Kronecker delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import QuadratureRule

__all__ = [
    "BasisSpec",
    "SamplingMatrix",
    "eval_orthonormal_legendre",
    "legendre_matrix",
    "build_sampling_matrix",
]


@dataclass(frozen=True)
class BasisSpec:
    """Polynomial space of total degree <= ``degree`` on the interval."""

    degree: int

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")

    @property
    def dimension(self) -> int:
        return self.degree + 1


@dataclass(frozen=True)
class SamplingMatrix:
    """Dense matrix with entry (j, l) = phi_{l+1}(x_j) at the rule's nodes."""

    entries: np.ndarray
    node_count: int
    dimension: int

    def __post_init__(self) -> None:
        if self.entries.shape != (self.node_count, self.dimension):
            raise ValueError("entries shape does not match node_count x dimension")
        self.entries.setflags(write=False)


def _check_domain(x: np.ndarray) -> None:
    if np.any(np.abs(x) > 1.0):
        bad = float(x.flat[np.argmax(np.abs(x))])
        raise ValueError(f"evaluation point {bad!r} lies outside [-1, 1]")


def legendre_matrix(points: np.ndarray, degree: int) -> np.ndarray:
    """Orthonormal Legendre values: column k holds phi_{k+1} at ``points``.

    One ascending three-term recurrence sweep fills all degrees at once.
    """
    x = np.atleast_1d(np.asarray(points, dtype=float))
    _check_domain(x)
    out = np.empty((x.size, degree + 1))
    p_prev = np.ones_like(x)
    out[:, 0] = math.sqrt(0.5)
    if degree >= 1:
        p = x.copy()
        out[:, 1] = math.sqrt(1.5) * p
        for k in range(2, degree + 1):
            p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
            out[:, k] = math.sqrt((2 * k + 1) / 2.0) * p
    return out


def eval_orthonormal_legendre(index: int, x):
    """Evaluate phi_index (1-based) at x in [-1, 1]; scalars stay scalars."""
    if index < 1:
        raise ValueError("basis index is 1-based and must be >= 1")
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    values = legendre_matrix(arr, index - 1)[:, index - 1]
    return float(values[0]) if np.isscalar(x) or np.ndim(x) == 0 else values


def build_sampling_matrix(rule: QuadratureRule, degree: int) -> SamplingMatrix:
    """Sampling matrix of the degree-``degree`` basis at the rule's nodes."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    entries = legendre_matrix(rule.nodes, degree)
    return SamplingMatrix(entries=entries, node_count=rule.node_count, dimension=degree + 1)
