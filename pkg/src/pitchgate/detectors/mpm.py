"""McLeod-style detector built on the normalized square difference function."""
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


def nsdf(frame: AudioFrame) -> np.ndarray:
    """Normalized square difference function over lags 0 .. n//2.

    nsdf(tau) = 2 * r(tau) / m(tau) with r the shrinking-window
    autocorrelation and m the paired window energies, so values lie in
    [-1, 1] and nsdf(0) = 1 for any nonzero frame. An all-zero frame maps to
    the all-zero curve.

    The autocorrelation is evaluated by direct summation over every lag up to
    n//2; the quadratic cost is intentional and is what the timing benchmark
    measures for this detector.
    """
    x = frame.samples
    n = x.size
    half = n // 2
    if not np.any(x):
        return np.zeros(half + 1, dtype=np.float64)
    # np.correlate runs the direct O(n^2) sum, not a transform.
    r = np.correlate(x, x, mode="full")[n - 1 : n + half]
    sq = x * x
    prefix = np.concatenate(([0.0], np.cumsum(sq)))
    taus = np.arange(half + 1)
    m = prefix[n - taus] + (prefix[n] - prefix[taus])
    out = np.divide(2.0 * r, m, out=np.zeros_like(r), where=m > 0)
    return np.clip(out, -1.0, 1.0)


def _key_maxima(values: np.ndarray, lag_hi: int) -> list[int]:
    """One candidate lag per positive NSDF lobe after the initial descent."""
    first_negative = None
    for tau in range(1, lag_hi + 1):
        if values[tau] <= 0.0:
            first_negative = tau
            break
    if first_negative is None:
        return []
    maxima: list[int] = []
    tau = first_negative
    while tau <= lag_hi:
        if values[tau] > 0.0:
            peak = tau
            while tau <= lag_hi and values[tau] > 0.0:
                if values[tau] > values[peak]:
                    peak = tau
                tau += 1
            maxima.append(peak)
        else:
            tau += 1
    return maxima


def mpm(frame: AudioFrame, cfg: DetectorConfig) -> DetectorResult:
    """Key-maxima picking over the NSDF with a relative acceptance cutoff."""
    values = nsdf(frame)
    if not values[0]:
        return unpitched()
    lag_lo, lag_hi = lag_band(frame.sample_rate, cfg, values.size - 2)
    candidates = [tau for tau in _key_maxima(values, lag_hi) if tau >= lag_lo]
    if not candidates:
        return unpitched()
    best_value = max(values[tau] for tau in candidates)
    accepted = next(tau for tau in candidates if values[tau] >= cfg.mpm_cutoff * best_value)

    peak = float(values[accepted])
    if peak < cfg.mpm_clarity_min:
        return unpitched(clarity=max(0.0, peak))
    offset = parabolic_interpolate(
        values[accepted - 1], values[accepted], values[accepted + 1]
    )
    lag = min(float(lag_hi), max(float(lag_lo), accepted + offset))
    return pitched(frame.sample_rate / lag, peak)
