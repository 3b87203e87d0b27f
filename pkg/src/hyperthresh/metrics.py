"""Error norms and SNR bookkeeping for the experiment tables.

SNR convention: 20*log10(||reference|| / ||perturbed - reference||) in dB.
The averaged improvement (AISNR) is the mean over trials of output SNR
minus input SNR, where input SNR is measured on the noisy samples against
the clean samples and output SNR on the recovered coefficients against
the ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["MetricsRow", "l2_error", "max_error", "snr_db", "aisnr_db"]


@dataclass(frozen=True)
class MetricsRow:
    """One table row: averaged errors and SNR improvement for a method."""

    method_label: str
    l2_error: float
    max_error: float
    aisnr_db: float
    trials: int


def _pair(estimate, truth) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(estimate, dtype=float)
    b = np.asarray(truth, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return a, b


def l2_error(estimate, truth) -> float:
    a, b = _pair(estimate, truth)
    return float(np.linalg.norm(a - b))


def max_error(estimate, truth) -> float:
    a, b = _pair(estimate, truth)
    return float(np.max(np.abs(a - b)))


def snr_db(reference, perturbed) -> float:
    """Amplitude SNR in dB; +inf when the perturbation vanishes exactly."""
    ref, per = _pair(reference, perturbed)
    ref_norm = float(np.linalg.norm(ref))
    if ref_norm == 0.0:
        raise ValueError("reference signal must be nonzero")
    err_norm = float(np.linalg.norm(per - ref))
    if err_norm == 0.0:
        return math.inf
    return 20.0 * math.log10(ref_norm / err_norm)


def aisnr_db(per_trial_input_snr, per_trial_output_snr) -> float:
    inp = np.asarray(per_trial_input_snr, dtype=float)
    out = np.asarray(per_trial_output_snr, dtype=float)
    if inp.shape != out.shape or inp.size == 0:
        raise ValueError("need equally many input and output SNRs, at least one trial")
    return float(np.mean(out - inp))
