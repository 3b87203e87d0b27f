"""Brute-force references: grid minimization and high-precision integration.

These routines ship with the library (not only the tests) so any shrinkage
result can be audited against a dense search over the matching scalar
objective, and any coefficient against an adaptive integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

__all__ = ["GridSpec", "grid_argmin_scalar", "scalar_objective", "integrate_high_precision"]

OBJECTIVES = ("l0", "lq", "l1", "springback")


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    steps: int = 200_000

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError("grid needs lo < hi")
        if self.steps < 1000:
            raise ValueError("grid needs at least 1000 steps")

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / self.steps


def scalar_objective(
    name: str, y: float, lam: float, q: float | None = None, alpha: float | None = None
) -> Callable[[np.ndarray], np.ndarray]:
    """Objective whose argmin defines the matching shrinkage operator.

    l0:         (y - x)^2 + lam^2 * [x != 0]
    lq:         (y - x)^2 + lam * |x|^q
    l1:         (y - x)^2 / 2 + lam * |x|
    springback: (y - x)^2 / 2 + lam * (|x| - alpha/2 * x^2)
    """
    if name == "l0":
        return lambda x: (y - x) ** 2 + lam * lam * (x != 0.0)
    if name == "lq":
        if q is None:
            raise ValueError("lq objective needs q")
        return lambda x: (y - x) ** 2 + lam * np.abs(x) ** q
    if name == "l1":
        return lambda x: 0.5 * (y - x) ** 2 + lam * np.abs(x)
    if name == "springback":
        if alpha is None:
            raise ValueError("springback objective needs alpha")
        return lambda x: 0.5 * (y - x) ** 2 + lam * (np.abs(x) - 0.5 * alpha * x * x)
    raise ValueError(f"unknown objective {name!r}")


def default_grid(name: str, y: float, lam: float, alpha: float | None = None) -> GridSpec:
    """Grid wide enough to contain the global minimizer of the objective."""
    half = 2.0 * abs(y) + 1.0
    if name == "springback" and alpha is not None and lam * alpha < 1.0:
        # The re-expansion can push the minimizer beyond 2|y|+1.
        half = max(half, abs(y) / (1.0 - lam * alpha) + 1.0)
    return GridSpec(-half, half)


def grid_argmin_scalar(
    name: str,
    y: float,
    lam: float,
    grid: GridSpec | None = None,
    q: float | None = None,
    alpha: float | None = None,
) -> float:
    """Dense-grid argmin of the scalar objective, refined locally.

    After the sweep, one ternary-search pass narrows the bracket around
    the best grid point; 0 and y are always evaluated exactly so kinks
    and the zero/nonzero tie are decided by direct comparison rather
    than grid placement.
    """
    objective = scalar_objective(name, y, lam, q=q, alpha=alpha)
    if grid is None:
        grid = default_grid(name, y, lam, alpha)
    xs = np.linspace(grid.lo, grid.hi, grid.steps + 1)
    values = objective(xs)
    i = int(np.argmin(values))
    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, grid.steps)]
    for _ in range(90):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if float(objective(np.array(m1))) <= float(objective(np.array(m2))):
            hi = m2
        else:
            lo = m1
    best = 0.5 * (lo + hi)
    # Exact candidates first: argmin takes the earliest of float ties, so
    # the zero/nonzero tie resolves to 0 and a pass-through tie to y.
    candidates = np.array([0.0, y, best])
    return float(candidates[int(np.argmin(objective(candidates)))])


def integrate_high_precision(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12, budget: int = 200
) -> float:
    """Adaptive integral of a continuous f on [lo, hi] to absolute error <= tol.

    Raises RuntimeError when the error estimate still exceeds ``tol``
    after ``budget`` subdivisions.
    """
    import warnings

    from scipy.integrate import IntegrationWarning

    with warnings.catch_warnings():
        # The accuracy warning is promoted to an exception below.
        warnings.simplefilter("ignore", IntegrationWarning)
        value, estimate = quad(f, lo, hi, epsabs=tol * 0.1, epsrel=tol * 0.1, limit=budget)
    if estimate > tol:
        raise RuntimeError(f"integration error estimate {estimate!r} exceeds tolerance {tol!r}")
    return value
