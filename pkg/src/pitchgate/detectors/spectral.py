"""Spectral peak detector: the blunt instrument of the seven."""
from __future__ import annotations

import math

import numpy as np

from ..audio import AudioFrame
from .common import DetectorConfig, DetectorResult, pitched, unpitched


def fft_peak(frame: AudioFrame, cfg: DetectorConfig) -> DetectorResult:
    """Largest magnitude bin of the rectangular-windowed spectrum.

    No window shaping and no peak interpolation, so the estimate is quantized
    to the bin grid (sample_rate / n); the stair-step error at small buffers
    is the point of keeping it this way. Any frame with signal energy is
    pitched.
    """
    x = frame.samples
    n = x.size
    if not np.any(x):
        return unpitched()
    magnitude = np.abs(np.fft.rfft(x))
    bin_lo = max(1, math.ceil(cfg.min_freq_hz * n / frame.sample_rate))
    bin_hi = min(magnitude.size - 1, math.floor(cfg.max_freq_hz * n / frame.sample_rate))
    if bin_lo > bin_hi:
        return unpitched()
    k = bin_lo + int(np.argmax(magnitude[bin_lo : bin_hi + 1]))
    total = float(magnitude.sum())
    clarity = float(magnitude[k]) / total if total > 0 else 0.0
    return pitched(k * frame.sample_rate / n, clarity)
