import math

import numpy as np
import pytest

from hyperthresh.metrics import MetricsRow, aisnr_db, l2_error, max_error, snr_db


def test_identical_vectors_have_zero_error():
    v = np.array([1.0, -2.0, 3.0])
    assert l2_error(v, v) == 0.0
    assert max_error(v, v) == 0.0


def test_unit_difference():
    assert l2_error([1.0, 0.0], [0.0, 0.0]) == 1.0
    assert max_error([1.0, 0.0], [0.0, 0.0]) == 1.0


def test_norms_against_second_implementation():
    rng = np.random.default_rng(0)
    a, b = rng.standard_normal(200), rng.standard_normal(200)
    diff = a - b
    assert l2_error(a, b) == pytest.approx(math.sqrt(sum(d * d for d in diff)), rel=1e-12)
    assert max_error(a, b) == pytest.approx(max(abs(d) for d in diff), rel=1e-12)


def test_snr_reference_points():
    ref = np.array([3.0, 4.0])  # norm 5
    assert snr_db(ref, ref + np.array([3.0, 4.0])) == pytest.approx(0.0, abs=1e-12)
    assert snr_db(ref, ref + np.array([0.3, 0.4])) == pytest.approx(20.0, abs=1e-12)


def test_snr_exact_match_is_infinite():
    ref = np.array([1.0, 2.0])
    assert snr_db(ref, ref.copy()) == math.inf


def test_snr_zero_reference_rejected():
    with pytest.raises(ValueError):
        snr_db(np.zeros(3), np.ones(3))


def test_snr_scale_invariance():
    rng = np.random.default_rng(5)
    ref = rng.standard_normal(64)
    per = ref + 0.1 * rng.standard_normal(64)
    for c in (3.0, -2.5, 1e-4):
        assert snr_db(c * ref, c * per) == pytest.approx(snr_db(ref, per), abs=1e-10)


def test_aisnr_basics():
    assert aisnr_db([10.0, 12.0], [10.0, 12.0]) == 0.0
    assert aisnr_db([10.0, 12.0], [13.0, 15.0]) == pytest.approx(3.0)


def test_aisnr_permutation_invariant():
    rng = np.random.default_rng(6)
    inp = rng.uniform(5, 25, size=50)
    out = rng.uniform(5, 25, size=50)
    order = rng.permutation(50)
    assert aisnr_db(inp, out) == pytest.approx(aisnr_db(inp[order], out[order]), abs=1e-12)


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        l2_error([1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        aisnr_db([1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        aisnr_db([], [])


def test_metrics_row_is_plain_record():
    row = MetricsRow("hard", 0.05, 0.02, 7.5, 200)
    assert row.method_label == "hard"
    assert row.trials == 200
