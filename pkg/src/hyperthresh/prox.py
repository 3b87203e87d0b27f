"""Scalar shrinkage operators applied to coefficients.

Four families are implemented: hard and soft thresholding, the springback
operator sign(y) * (|y| - lam) / (1 - lam * alpha), and the l^q operator
(0 < q < 1) that minimizes

    h(x) = (y - x)^2 + lam * |x|^q

by a safeguarded Newton iteration.  The l^q minimizer is zero exactly when
|y| <= a(lam, q) with

    a = (2 - q)/2 * (1 - q)^((q - 1)/(2 - q)) * lam^(1/(2 - q)),

and otherwise equals the larger stationary point of h on (0, |y|).  The
companion quantities lambda_star (the tie value where h(0) = h(x')) and
lambda_bar (above which h has no interior stationary point) are exposed
for threshold selection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "NewtonSettings",
    "ThresholdRule",
    "hard",
    "soft",
    "springback",
    "newton_threshold_a",
    "lq_prox",
    "lq_prox_info",
    "lambda_star",
    "lambda_bar",
    "critical_q",
    "apply",
    "apply_vector",
]


@dataclass(frozen=True)
class NewtonSettings:
    """Stopping control for the l^q stationary-point solver."""

    tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self) -> None:
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


_KINDS = ("hard", "soft", "springback", "newton_lq")


@dataclass(frozen=True)
class ThresholdRule:
    """Tagged description of one shrinkage operator with its parameters."""

    kind: str
    lam: float
    q: float | None = None
    alpha: float | None = None
    settings: NewtonSettings = field(default_factory=NewtonSettings)

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown threshold kind {self.kind!r}")
        if self.lam <= 0.0:
            raise ValueError("lam must be positive")
        if self.kind == "springback":
            if self.alpha is None or self.alpha <= 0.0:
                raise ValueError("springback needs alpha > 0")
            if 1.0 - self.lam * self.alpha <= 0.0:
                raise ValueError(
                    f"springback requires 1 - lam*alpha > 0; got {1.0 - self.lam * self.alpha!r}"
                )
        elif self.kind == "newton_lq":
            if self.q is None or not 0.0 < self.q < 1.0:
                raise ValueError("newton_lq needs q strictly inside (0, 1); use hard for q=0, soft for q=1")

    @classmethod
    def hard(cls, lam: float) -> "ThresholdRule":
        return cls("hard", lam)

    @classmethod
    def soft(cls, lam: float) -> "ThresholdRule":
        return cls("soft", lam)

    @classmethod
    def springback(cls, lam: float, alpha: float) -> "ThresholdRule":
        return cls("springback", lam, alpha=alpha)

    @classmethod
    def newton_lq(cls, lam: float, q: float, settings: NewtonSettings | None = None) -> "ThresholdRule":
        return cls("newton_lq", lam, q=q, settings=settings or NewtonSettings())

    def describe(self) -> str:
        if self.kind == "springback":
            return f"springback(lam={self.lam:g}, alpha={self.alpha:g})"
        if self.kind == "newton_lq":
            return f"newton_lq(lam={self.lam:g}, q={self.q:g})"
        return f"{self.kind}(lam={self.lam:g})"


def hard(y: float, lam: float) -> float:
    """Keep y unchanged when |y| > lam, else zero."""
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    return y if abs(y) > lam else 0.0


def soft(y: float, lam: float) -> float:
    """Shrink |y| by lam, zeroing the result when |y| <= lam."""
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    return math.copysign(abs(y) - lam, y) if abs(y) > lam else 0.0


def springback(y: float, lam: float, alpha: float) -> float:
    """Soft shrinkage re-expanded by 1/(1 - lam*alpha); needs 1 - lam*alpha > 0."""
    if lam <= 0.0 or alpha <= 0.0:
        raise ValueError("lam and alpha must be positive")
    if 1.0 - lam * alpha <= 0.0:
        raise ValueError(f"springback requires 1 - lam*alpha > 0; got {1.0 - lam * alpha!r}")
    if abs(y) <= lam:
        return 0.0
    return math.copysign((abs(y) - lam) / (1.0 - lam * alpha), y)


def newton_threshold_a(lam: float, q: float) -> float:
    """Decision boundary of the l^q operator: the minimizer is 0 iff |y| <= a."""
    _check_lq_params(lam, q)
    return (2.0 - q) / 2.0 * (1.0 - q) ** ((q - 1.0) / (2.0 - q)) * lam ** (1.0 / (2.0 - q))


def lambda_star(y: float, q: float) -> float:
    """Tie value of lam at which h(0) = h(x') for the given |y|.

    Inverse of :func:`newton_threshold_a` in the sense
    lambda_star(newton_threshold_a(lam, q), q) == lam.
    """
    if y == 0.0:
        raise ValueError("y must be nonzero")
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie strictly inside (0, 1)")
    return 4.0 / (2.0**q * (1.0 - q)) * ((1.0 - q) * abs(y) / (2.0 - q)) ** (2.0 - q)


def lambda_bar(y: float, q: float) -> float:
    """Existence boundary: h' has two roots iff lam < lambda_bar, none above it."""
    if y == 0.0:
        raise ValueError("y must be nonzero")
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie strictly inside (0, 1)")
    return 2.0 / (q * (1.0 - q)) * ((1.0 - q) * abs(y) / (2.0 - q)) ** (2.0 - q)


def _check_lq_params(lam: float, q: float) -> None:
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie strictly inside (0, 1)")


def lq_prox_info(
    y: float, lam: float, q: float, settings: NewtonSettings | None = None
) -> tuple[float, int]:
    """l^q shrinkage value together with the Newton iteration count.

    Starting from x0 = |y|, the iteration x <- x - h'(x)/h''(x) decreases
    monotonically to the larger root x' of h' because h' is increasing and
    convex on [x', |y|].  Ties |y| == a resolve to zero.  If the iteration
    fails to meet tol within max_iter, bisection on the bracket
    [(lam*q*(1-q)/2)^(1/(2-q)), |y|] finishes the job.
    """
    _check_lq_params(lam, q)
    settings = settings or NewtonSettings()
    mag = abs(y)
    # The zero branch |y| <= a(lam) is decided in both parameterizations:
    # lam >= lambda_star(|y|) is the same predicate, and checking each
    # makes both float round trips (a from lam, lam from a tie value)
    # land ties exactly on the zero side.
    if mag == 0.0 or mag <= newton_threshold_a(lam, q) or lam >= lambda_star(mag, q):
        return 0.0, 0

    stop = settings.tol * max(1.0, mag)
    x = mag
    iterations = 0
    for iterations in range(1, settings.max_iter + 1):
        slope = -2.0 * (mag - x) + lam * q * x ** (q - 1.0)
        if abs(slope) <= stop:
            break
        curvature = 2.0 + lam * q * (q - 1.0) * x ** (q - 2.0)
        x -= slope / curvature
    else:
        x = _lq_bisect(mag, lam, q, stop)
    return math.copysign(x, y), iterations


def lq_prox(y: float, lam: float, q: float, settings: NewtonSettings | None = None) -> float:
    """Minimizer of (y - x)^2 + lam*|x|^q over x (zero when |y| <= a)."""
    return lq_prox_info(y, lam, q, settings)[0]


def _lq_bisect(mag: float, lam: float, q: float, stop: float) -> float:
    # Bracket [inflection point of h, |y|] always contains the larger root.
    lo = (lam * q * (1.0 - q) / 2.0) ** (1.0 / (2.0 - q))
    hi = mag
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        slope = -2.0 * (mag - mid) + lam * q * mid ** (q - 1.0)
        if abs(slope) <= stop:
            return mid
        if slope > 0.0:
            hi = mid
        else:
            lo = mid
    raise RuntimeError(f"l^q stationary-point search failed for |y|={mag!r}, lam={lam!r}, q={q!r}")


def critical_q(tol: float = 1e-13, max_iter: int = 100) -> tuple[float, float]:
    """Location and value of the minimum of g(q) = lambda_bar(1, q) on (0, 1).

    Solves d/dq log g(q) = -1/q - log(1-q) + log(2-q) = 0 by Newton
    iteration; the second derivative 1/q^2 + 1/(1-q) - 1/(2-q) is positive
    throughout, so the root is the unique minimizer.
    """
    q = 0.5
    for _ in range(max_iter):
        value = -1.0 / q - math.log1p(-q) + math.log(2.0 - q)
        if abs(value) <= tol:
            break
        slope = 1.0 / (q * q) + 1.0 / (1.0 - q) - 1.0 / (2.0 - q)
        q_next = q - value / slope
        q = min(max(q_next, 1e-6), 1.0 - 1e-6)
    else:
        raise RuntimeError("critical-q Newton iteration did not converge")
    g = 2.0 / (q * (1.0 - q)) * ((1.0 - q) / (2.0 - q)) ** (2.0 - q)
    return q, g


def apply(rule: ThresholdRule, y: float) -> float:
    """Apply the rule's shrinkage operator to a single value."""
    if rule.kind == "hard":
        return hard(y, rule.lam)
    if rule.kind == "soft":
        return soft(y, rule.lam)
    if rule.kind == "springback":
        return springback(y, rule.lam, rule.alpha)
    return lq_prox(y, rule.lam, rule.q, rule.settings)


def apply_vector(rule: ThresholdRule, values) -> "np.ndarray":
    """Elementwise :func:`apply`; the l^q branch solves only above-threshold entries."""
    import numpy as np

    arr = np.asarray(values, dtype=float)
    mag = np.abs(arr)
    if rule.kind == "hard":
        return np.where(mag > rule.lam, arr, 0.0)
    if rule.kind == "soft":
        return np.where(mag > rule.lam, np.sign(arr) * (mag - rule.lam), 0.0)
    if rule.kind == "springback":
        scale = 1.0 - rule.lam * rule.alpha
        return np.where(mag > rule.lam, np.sign(arr) * (mag - rule.lam) / scale, 0.0)
    out = np.zeros_like(arr)
    boundary = newton_threshold_a(rule.lam, rule.q)
    for i in np.flatnonzero(mag > boundary):
        out[i] = lq_prox(float(arr[i]), rule.lam, rule.q, rule.settings)
    return out
