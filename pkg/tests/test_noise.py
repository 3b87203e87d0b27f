import numpy as np
import pytest
from scipy.stats import kstest

from hyperthresh.noise import NoiseSpec, derive_seed, normal_stream, sample, uniform_words


def test_silent_spec_yields_zero_vector():
    values = sample(NoiseSpec(0.0, 0.0, seed=1), 100)
    assert np.all(values == 0.0)


def test_deterministic_across_calls():
    spec = NoiseSpec(0.3, 0.4, seed=123)
    first = sample(spec, 5000)
    second = sample(spec, 5000)
    assert np.array_equal(first, second)


def test_chunked_generation_matches_full_run():
    # Counter addressing: sample index j always uses counter block j.
    spec = NoiseSpec(0.2, 0.7, seed=77)
    full = sample(spec, 1000)
    pieces = np.concatenate([sample(spec, 250, start=offset) for offset in (0, 250, 500, 750)])
    assert np.array_equal(full, pieces)


def test_gaussian_moments_at_scale():
    values = sample(NoiseSpec(gaussian_sigma=0.15, seed=2024), 1_000_000)
    assert abs(values.mean()) <= 1e-3
    assert abs(values.std() - 0.15) <= 1e-3


def test_impulse_component_distribution():
    amplitude = 0.5
    values = sample(NoiseSpec(impulse_amplitude=amplitude, seed=5), 1_000_000)
    zero_fraction = np.mean(values == 0.0)
    assert abs(zero_fraction - 0.5) <= 3e-3
    nonzero = values[values != 0.0]
    stat = kstest(nonzero, "uniform", args=(-amplitude, 2 * amplitude)).statistic
    assert stat < 0.01
    # Bernoulli(1/2) gate times Uniform[-a, a]: variance a^2/6.
    assert values.var() == pytest.approx(amplitude**2 / 6.0, rel=0.02)


def test_compound_noise_is_sum_of_components():
    gaussian = sample(NoiseSpec(gaussian_sigma=0.15, seed=9), 400)
    impulse = sample(NoiseSpec(impulse_amplitude=0.5, seed=9), 400)
    both = sample(NoiseSpec(0.15, 0.5, seed=9), 400)
    assert np.allclose(both, gaussian + impulse, atol=0, rtol=0)


def test_normal_stream_moments():
    values = normal_stream(31, 500_000, sigma=2.0)
    assert abs(values.mean()) <= 5e-3
    assert abs(values.std() - 2.0) <= 5e-3


def test_derive_seed_decorrelates_and_is_stable():
    seeds = {derive_seed(42, i) for i in range(1000)}
    assert len(seeds) == 1000
    # Frozen reference locks the mixing constants.
    assert derive_seed(42, 7) == 7974615062405353404


def test_uniform_words_block_addressing():
    a = uniform_words(3, 0, 16)
    b = np.concatenate([uniform_words(3, 0, 8), uniform_words(3, 2, 8)])
    assert np.array_equal(a, b)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        NoiseSpec(-0.1, 0.0, seed=0)
    with pytest.raises(ValueError):
        sample(NoiseSpec(0.1, 0.0, seed=0), 0)
    with pytest.raises(ValueError):
        derive_seed(1, -2)
