"""Dynamic wavelet detector: multi-level extremum spacing in the time domain.

The frame is repeatedly halved by pairwise averaging (a Haar approximation
ladder). At each level the candidate period is the dominant spacing between
alternating maxima and minima that exceed an amplitude gate; when two
consecutive levels agree on the same period the pitch is accepted. Noise and
aperiodic frames fail the cross-level agreement and come back unpitched.
"""
from __future__ import annotations

import numpy as np

from ..audio import AudioFrame
from .common import DetectorConfig, DetectorResult, pitched, unpitched

_MAX_LEVELS = 6
_AMPLITUDE_RATIO = 0.75
_DISTANCE_SPAN = 3


def _alternating_extrema(y: np.ndarray, threshold: float, min_spacing: int
                         ) -> tuple[np.ndarray, np.ndarray]:
    """Peak of every positive half-wave and trough of every negative one.

    Extrema below the amplitude threshold or closer than min_spacing to the
    previously accepted one of the same kind are discarded.
    """
    positive = y > 0
    change = np.flatnonzero(np.diff(positive.astype(np.int8))) + 1
    edges = np.concatenate(([0], change, [y.size]))
    maxima: list[int] = []
    minima: list[int] = []
    last_max = -min_spacing - 1
    last_min = -min_spacing - 1
    for a, b in zip(edges[:-1], edges[1:]):
        segment = y[a:b]
        if positive[a]:
            idx = a + int(np.argmax(segment))
            if y[idx] >= threshold and idx > last_max + min_spacing:
                maxima.append(idx)
                last_max = idx
        else:
            idx = a + int(np.argmin(segment))
            if -y[idx] >= threshold and idx > last_min + min_spacing:
                minima.append(idx)
                last_min = idx
    return np.asarray(maxima, dtype=np.int64), np.asarray(minima, dtype=np.int64)


def _mode_distance(maxima: np.ndarray, minima: np.ndarray, size: int, delta: int
                   ) -> tuple[float | None, float]:
    """Dominant spacing among extremum pairs, averaged inside a +-delta window.

    Returns (spacing, dominance) where dominance is the fraction of all pair
    distances that fall inside the winning window; None when no pairs exist.
    """
    counts = np.zeros(size + 1, dtype=np.int64)
    total = 0
    for arr in (maxima, minima):
        for span in range(1, _DISTANCE_SPAN):
            if arr.size > span:
                dist = arr[span:] - arr[:-span]
                np.add.at(counts, dist, 1)
                total += dist.size
    if total == 0:
        return None, 0.0
    window = np.convolve(counts, np.ones(2 * delta + 1, dtype=np.int64), mode="same")
    best = int(np.argmax(window))
    double = 2 * best
    if double < window.size and window[double] == window[best]:
        best = double
    lo = max(0, best - delta)
    hi = min(size, best + delta)
    local = counts[lo : hi + 1]
    mass = int(local.sum())
    if mass == 0:
        return None, 0.0
    spacing = float(np.dot(np.arange(lo, hi + 1), local) / mass)
    return spacing, mass / total


def dynamic_wavelet(frame: AudioFrame, cfg: DetectorConfig) -> DetectorResult:
    x = frame.samples
    if not np.any(x):
        return unpitched()
    work = x - float(np.mean(x))
    gate = _AMPLITUDE_RATIO * float(np.max(np.abs(work)))
    sample_rate = frame.sample_rate

    previous: float | None = None
    current = work
    for level in range(_MAX_LEVELS):
        if current.size < 2:
            break
        delta = max(1, int(sample_rate / (2**level * cfg.max_freq_hz)))
        maxima, minima = _alternating_extrema(current, gate, delta)
        if maxima.size + minima.size == 0:
            break
        spacing, dominance = _mode_distance(maxima, minima, current.size, delta)
        if spacing is None:
            break
        if previous is not None and abs(2.0 * spacing - previous) <= 2.0 * delta:
            period = previous * 2 ** (level - 1)
            if period > 0:
                freq = sample_rate / period
                if cfg.min_freq_hz <= freq <= cfg.max_freq_hz:
                    return pitched(freq, dominance)
            break
        previous = spacing
        half = current.size // 2
        current = (current[: 2 * half : 2] + current[1 : 2 * half : 2]) / 2.0
    return unpitched()
