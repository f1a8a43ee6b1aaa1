"""Time-domain autocorrelation detectors: the classic and the refined variant."""
from __future__ import annotations

import numpy as np

from ..audio import AudioFrame
from .common import (
    DetectorConfig,
    DetectorResult,
    acf_direct,
    lag_band,
    parabolic_interpolate,
    pitched,
    unpitched,
)

# Score ratio at which the half lag is preferred over the raw best lag.
_OCTAVE_PREFERENCE = 0.9


def classic_autocorrelator(frame: AudioFrame, cfg: DetectorConfig) -> DetectorResult:
    """Raw ACF peak picking at integer lag resolution.

    Scans the configured lag band, skips everything before the first zero
    crossing of the ACF (which removes the lag-0 lobe), and reports the global
    maximum unconditionally: every frame with signal energy is pitched.
    """
    x = frame.samples
    n = x.size
    if not np.any(x):
        return unpitched()
    lag_lo, lag_hi = lag_band(frame.sample_rate, cfg, n - 1)
    r = acf_direct(x, lag_hi)

    crossed = np.flatnonzero(r[1:] <= 0.0)
    start = lag_lo
    if crossed.size:
        start = max(lag_lo, int(crossed[0]) + 1)
        if start > lag_hi:
            start = lag_lo
    best = start + int(np.argmax(r[start : lag_hi + 1]))
    clarity = r[best] / r[0] if r[0] > 0 else 0.0
    return pitched(frame.sample_rate / best, clarity)


def advanced_autocorrelator(frame: AudioFrame, cfg: DetectorConfig) -> DetectorResult:
    """Energy-normalized ACF with sub-lag interpolation and octave preference.

    The raw ACF is divided by the geometric mean of the two windows' energies,
    which bounds scores to [-1, 1] and makes the peak height a clarity measure.
    A periodic signal scores near 1 at every multiple of its period, so the
    global maximum regularly lands on a subharmonic lag; the octave preference
    therefore moves the pick to the lowest-lag score peak that reaches 0.9 of
    the best. Frames whose best score stays below acf_clarity_min are
    reported unpitched.
    """
    x = frame.samples
    n = x.size
    if not np.any(x):
        return unpitched()
    lag_lo, lag_hi = lag_band(frame.sample_rate, cfg, n - 2)
    r = acf_direct(x, lag_hi)

    sq = x * x
    prefix = np.concatenate(([0.0], np.cumsum(sq)))
    taus = np.arange(lag_hi + 1)
    head = prefix[n - taus]          # energy of x[0 .. n-tau)
    tail = prefix[n] - prefix[taus]  # energy of x[tau .. n)
    denom = np.sqrt(head * tail)
    score = np.divide(r, denom, out=np.zeros_like(r), where=denom > 0)

    # The score decays from 1.0 at lag 0, so the band edge would read as a
    # qualifying peak; only lags past the first non-positive score count.
    crossed = np.flatnonzero(score[1 : lag_hi + 1] <= 0.0)
    start = lag_lo
    if crossed.size:
        start = max(lag_lo, int(crossed[0]) + 1)
        if start > lag_hi:
            start = lag_lo

    inner = score[start : lag_hi + 1]
    best = start + int(np.argmax(inner))
    floor = _OCTAVE_PREFERENCE * score[best]
    local_peak = np.ones(inner.size, dtype=bool)
    local_peak[1:] &= inner[1:] >= inner[:-1]
    local_peak[:-1] &= inner[:-1] >= inner[1:]
    qualifying = np.flatnonzero(local_peak & (inner >= floor))
    if qualifying.size:
        best = start + int(qualifying[0])

    peak = float(score[best])
    if peak < cfg.acf_clarity_min:
        return unpitched(clarity=peak)
    offset = 0.0
    if 1 <= best - 1 and best + 1 <= lag_hi:
        offset = parabolic_interpolate(score[best - 1], score[best], score[best + 1])
    lag = min(float(lag_hi), max(float(lag_lo), best + offset))
    return pitched(frame.sample_rate / lag, peak)
