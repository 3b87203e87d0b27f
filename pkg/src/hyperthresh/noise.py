"""Seeded noise generation with a counter-based stream.

All randomness in the package flows through the Philox 4x64-10 counter
generator (via numpy), so any subrange of a stream can be produced
independently of execution order: sample index j always consumes counter
block j.  Gaussian variates use the Box-Muller transform on the raw
uniforms rather than a rejection method, keeping the draw count per
sample fixed.  Streams for separate purposes are derived from a base
seed with the splitmix64 finalizer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["NoiseSpec", "sample", "derive_seed", "uniform_words", "normal_stream"]

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
# Uniform words consumed per sample index in :func:`sample`.
_WORDS_PER_SAMPLE = 4


@dataclass(frozen=True)
class NoiseSpec:
    """Gaussian plus impulse contamination, fully determined by the seed.

    The impulse component flips a fair coin per sample and, on heads,
    adds a uniform draw from [-impulse_amplitude, impulse_amplitude].
    Either magnitude may be zero to disable that component.
    """

    gaussian_sigma: float = 0.0
    impulse_amplitude: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.gaussian_sigma < 0.0 or self.impulse_amplitude < 0.0:
            raise ValueError("noise magnitudes must be nonnegative")


def _mix64(z: int) -> int:
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Decorrelated 64-bit seed for substream ``index`` of ``seed``."""
    if index < 0:
        raise ValueError("index must be nonnegative")
    return _mix64((seed & _MASK64) ^ _mix64(index))


def uniform_words(seed: int, start_block: int, count: int) -> np.ndarray:
    """``count`` uniforms in [0, 1) starting at Philox counter block ``start_block``.

    Each counter block yields exactly four uniforms, so disjoint block
    ranges of the same seed never overlap.
    """
    bits = np.random.Philox(key=seed & _MASK64, counter=[start_block, 0, 0, 0])
    return np.random.Generator(bits).random(count)


def _box_muller(u1: np.ndarray, u2: np.ndarray) -> np.ndarray:
    # 1 - u1 lies in (0, 1], keeping the log argument away from zero.
    return np.sqrt(-2.0 * np.log1p(-u1)) * np.cos(2.0 * np.pi * u2)


def normal_stream(seed: int, count: int, sigma: float = 1.0) -> np.ndarray:
    """``count`` independent N(0, sigma^2) draws (two uniform words each)."""
    u = uniform_words(seed, 0, 2 * count)
    return sigma * _box_muller(u[0::2], u[1::2])


def sample(spec: NoiseSpec, count: int, start: int = 0) -> np.ndarray:
    """Noise values for sample indices ``start`` .. ``start + count - 1``.

    The default produces the whole vector; nonzero ``start`` yields the
    identical subrange, so chunked or parallel generation agrees bitwise
    with a single call.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    u = uniform_words(spec.seed, start, _WORDS_PER_SAMPLE * count)
    u = u.reshape(count, _WORDS_PER_SAMPLE)
    out = np.zeros(count)
    if spec.gaussian_sigma > 0.0:
        out += spec.gaussian_sigma * _box_muller(u[:, 0], u[:, 1])
    if spec.impulse_amplitude > 0.0:
        mask = u[:, 2] < 0.5
        out += np.where(mask, spec.impulse_amplitude * (2.0 * u[:, 3] - 1.0), 0.0)
    return out
