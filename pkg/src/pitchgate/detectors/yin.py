"""The YIN detector and its spectral twin.

Both share the cumulative-mean normalization, the absolute-threshold pick and
the parabolic refinement; they differ only in how the lag difference function
is computed. The plain version evaluates it lag by lag and serves as the
correctness oracle for the transform-based version.
"""
from __future__ import annotations

import numpy as np

from ..audio import AudioFrame
from .common import (
    DetectorConfig,
    DetectorResult,
    lag_band,
    parabolic_interpolate,
    pitched,
    unpitched,
)


def difference_direct(x: np.ndarray, max_lag: int) -> np.ndarray:
    """d[tau] = sum over j < n//2 of (x[j] - x[j+tau])^2, for tau in [0, max_lag]."""
    w = x.size // 2
    d = np.empty(max_lag + 1, dtype=np.float64)
    d[0] = 0.0
    for tau in range(1, max_lag + 1):
        diff = x[:w] - x[tau : tau + w]
        d[tau] = np.dot(diff, diff)
    return d


def difference_fft(x: np.ndarray, max_lag: int) -> np.ndarray:
    """Same difference function evaluated through forward/inverse transforms.

    Expands the square into window energies plus a cross-correlation term and
    computes the correlation with one FFT round trip, so the cost is
    O(n log n) regardless of max_lag.
    """
    n = x.size
    w = n // 2
    size = 1
    while size < n:
        size <<= 1
    spectrum = np.fft.rfft(x, size)
    kernel = np.fft.rfft(x[:w][::-1], size)
    conv = np.fft.irfft(spectrum * kernel, size)
    corr = conv[w - 1 : w + max_lag]

    sq = x * x
    head = float(np.sum(sq[:w]))
    window = np.empty(max_lag + 1, dtype=np.float64)
    window[0] = head
    window[1:] = head + np.cumsum(sq[w : w + max_lag] - sq[:max_lag])

    d = head + window - 2.0 * corr
    d[0] = 0.0
    np.maximum(d, 0.0, out=d)
    return d


def cmndf(frame: AudioFrame, max_lag: int) -> np.ndarray:
    """Cumulative-mean-normalized difference function over lags [0, max_lag].

    d'(0) = 1 and d'(tau) = d(tau) * tau / sum of d(1..tau). A frame whose
    difference function is identically zero (DC or silence) normalizes to the
    all-ones curve, which downstream logic reads as unpitched.
    """
    n = len(frame)
    if max_lag >= n // 2 + 1:
        raise ValueError(
            f"max_lag must be below {n // 2 + 1} for a frame of {n} samples, got {max_lag}"
        )
    d = difference_direct(frame.samples, max_lag)
    return cumulative_normalize(d)


def cumulative_normalize(d: np.ndarray) -> np.ndarray:
    out = np.ones_like(d)
    if d.size <= 1:
        return out
    sums = np.cumsum(d[1:])
    taus = np.arange(1, d.size, dtype=np.float64)
    np.divide(d[1:] * taus, sums, out=out[1:], where=sums > 0)
    out[1:][sums <= 0] = 1.0
    return out


def _pick(dprime: np.ndarray, lag_lo: int, lag_hi: int, cfg: DetectorConfig,
          sample_rate: int) -> DetectorResult:
    """Shared absolute-threshold pick with parabolic refinement."""
    band = dprime[lag_lo : lag_hi + 1]
    below = np.flatnonzero(band < cfg.yin_threshold)
    if below.size:
        tau = lag_lo + int(below[0])
        while tau + 1 <= lag_hi and dprime[tau + 1] < dprime[tau]:
            tau += 1
        is_pitched = True
    else:
        tau = lag_lo + int(np.argmin(band))
        is_pitched = bool(dprime[tau] < cfg.yin_threshold)
    clarity = 1.0 - float(dprime[tau])
    if not is_pitched:
        return unpitched(clarity=clarity)
    offset = 0.0
    if 1 <= tau - 1 and tau + 1 < dprime.size:
        offset = parabolic_interpolate(dprime[tau - 1], dprime[tau], dprime[tau + 1])
    lag = min(float(lag_hi), max(float(lag_lo), tau + offset))
    return pitched(sample_rate / lag, clarity)


def _run(frame: AudioFrame, cfg: DetectorConfig, difference) -> DetectorResult:
    x = frame.samples
    if not np.any(x):
        return unpitched()
    w = x.size // 2
    lag_lo, lag_hi = lag_band(frame.sample_rate, cfg, w - 1)
    if lag_lo >= lag_hi:
        return unpitched()
    d = difference(x, lag_hi + 1)
    dprime = cumulative_normalize(d)
    return _pick(dprime, lag_lo, lag_hi, cfg, frame.sample_rate)


def yin(frame: AudioFrame, cfg: DetectorConfig) -> DetectorResult:
    """Plain YIN: direct difference function, then the shared pick."""
    return _run(frame, cfg, difference_direct)


def fast_yin(frame: AudioFrame, cfg: DetectorConfig) -> DetectorResult:
    """YIN with the spectral difference function; contract-identical to yin()."""
    return _run(frame, cfg, difference_fft)
