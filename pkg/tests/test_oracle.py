import math

import numpy as np
import pytest
from scipy.special import erf

from hyperthresh.basis import eval_orthonormal_legendre
from hyperthresh.oracle import GridSpec, grid_argmin_scalar, integrate_high_precision


def test_integrates_square():
    assert integrate_high_precision(lambda x: x * x, -1, 1) == pytest.approx(2 / 3, abs=1e-12)


def test_integrates_gaussian_against_erf():
    value = integrate_high_precision(lambda x: math.exp(-x * x), -1, 1)
    assert value == pytest.approx(math.sqrt(math.pi) * erf(1.0), abs=1e-10)


def test_basis_normalization_via_integration():
    phi3 = lambda x: eval_orthonormal_legendre(3, x)
    assert integrate_high_precision(lambda x: phi3(x) ** 2, -1, 1) == pytest.approx(1.0, abs=1e-10)


def test_budget_failure_raises():
    # Far too oscillatory for a single panel to resolve.
    wiggle = lambda x: math.cos(5000.0 * x)
    with pytest.raises(RuntimeError):
        integrate_high_precision(wiggle, -1, 1, tol=1e-12, budget=1)


def test_grid_argmin_soft_threshold_closed_form():
    assert grid_argmin_scalar("l1", 0.9, 0.6) == pytest.approx(0.3, abs=1e-7)
    assert grid_argmin_scalar("l1", -0.9, 0.6) == pytest.approx(-0.3, abs=1e-7)


def test_grid_argmin_hard_threshold_jump():
    lam = 0.7
    assert grid_argmin_scalar("l0", lam - 1e-3, lam) == 0.0
    assert grid_argmin_scalar("l0", lam + 1e-3, lam) == pytest.approx(lam + 1e-3, abs=1e-12)


def test_grid_argmin_lq_reference_case():
    # Larger root of t^3 - 2t + 1/4 with t = sqrt(x) gives x ~ 1.8144020.
    value = grid_argmin_scalar("lq", 2.0, 1.0, q=0.5)
    assert value == pytest.approx(1.8144020185805385, abs=1e-5)


def test_grid_argmin_springback_wide_minimizer():
    # Re-expansion puts the minimizer outside [-2|y|-1, 2|y|+1]; the
    # default grid must widen to catch it.
    y, lam, alpha = 2.0, 1.5, 0.6
    expected = (y - lam) / (1.0 - lam * alpha)
    assert grid_argmin_scalar("springback", y, lam, alpha=alpha) == pytest.approx(
        expected, abs=1e-4
    )


def test_halving_step_changes_little():
    coarse = grid_argmin_scalar("lq", 1.7, 0.8, grid=GridSpec(-5, 5, 100_000), q=0.4)
    fine = grid_argmin_scalar("lq", 1.7, 0.8, grid=GridSpec(-5, 5, 200_000), q=0.4)
    assert abs(coarse - fine) <= 10.0 / 100_000


def test_budget_doubling_within_estimate():
    smooth = lambda x: math.cos(3 * x) * math.exp(x)
    a = integrate_high_precision(smooth, -1, 1, tol=1e-10, budget=50)
    b = integrate_high_precision(smooth, -1, 1, tol=1e-10, budget=100)
    assert abs(a - b) <= 1e-10


def test_bad_inputs():
    with pytest.raises(ValueError):
        grid_argmin_scalar("huber", 1.0, 0.5)
    with pytest.raises(ValueError):
        grid_argmin_scalar("lq", 1.0, 0.5)  # missing q
    with pytest.raises(ValueError):
        GridSpec(1.0, -1.0)
    with pytest.raises(ValueError):
        GridSpec(0.0, 1.0, steps=10)
