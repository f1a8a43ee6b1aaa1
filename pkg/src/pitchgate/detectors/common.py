"""Shared detector plumbing: result types, configuration, lag bands."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..audio import AudioFrame


class FrameTooShortError(ValueError):
    """The frame cannot hold two periods of the configured lowest pitch."""


@dataclass(frozen=True)
class DetectorConfig:
    """Search band and voicing thresholds shared by all detectors."""

    min_freq_hz: float = 40.0
    max_freq_hz: float = 2000.0
    yin_threshold: float = 0.15
    mpm_cutoff: float = 0.93
    mpm_clarity_min: float = 0.80
    acf_clarity_min: float = 0.60

    def validate(self, sample_rate: int) -> None:
        if not 0 < self.min_freq_hz < self.max_freq_hz < sample_rate / 2:
            raise ValueError(
                "need 0 < min_freq_hz < max_freq_hz < sample_rate/2, got "
                f"({self.min_freq_hz}, {self.max_freq_hz}) at {sample_rate} Hz"
            )
        for name in ("yin_threshold", "mpm_cutoff", "mpm_clarity_min", "acf_clarity_min"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must be in (0, 1), got {value}")


DEFAULT_CONFIG = DetectorConfig()


@dataclass(frozen=True)
class DetectorResult:
    """One algorithm's verdict on one frame."""

    frequency_hz: float | None
    clarity: float
    pitched: bool

    def __post_init__(self) -> None:
        if self.pitched != (self.frequency_hz is not None):
            raise ValueError("pitched must hold exactly when frequency_hz is present")
        if self.frequency_hz is not None and self.frequency_hz <= 0:
            raise ValueError(f"frequency_hz must be positive, got {self.frequency_hz}")
        if not 0.0 <= self.clarity <= 1.0:
            raise ValueError(f"clarity must be in [0, 1], got {self.clarity}")


def unpitched(clarity: float = 0.0) -> DetectorResult:
    return DetectorResult(frequency_hz=None, clarity=_clamp01(clarity), pitched=False)


def pitched(frequency_hz: float, clarity: float) -> DetectorResult:
    return DetectorResult(frequency_hz=frequency_hz, clarity=_clamp01(clarity), pitched=True)


def _clamp01(value: float) -> float:
    return float(min(1.0, max(0.0, value)))


def lag_band(sample_rate: int, cfg: DetectorConfig, lag_cap: int) -> tuple[int, int]:
    """Integer lag range [lo, hi] covering the configured frequency band.

    lo corresponds to max_freq_hz and hi to min_freq_hz; hi is clamped to
    lag_cap (the longest lag the caller can evaluate on its frame).
    """
    lo = max(1, math.ceil(sample_rate / cfg.max_freq_hz))
    hi = min(math.floor(sample_rate / cfg.min_freq_hz), lag_cap)
    return lo, hi


def check_frame_length(frame: AudioFrame, cfg: DetectorConfig) -> None:
    """Require at least two periods of the lowest searchable pitch."""
    minimum = 2.0 * frame.sample_rate / cfg.min_freq_hz
    if len(frame) < minimum:
        raise FrameTooShortError(
            f"frame of {len(frame)} samples is below the minimum {math.ceil(minimum)} "
            f"required for min_freq_hz={cfg.min_freq_hz} at {frame.sample_rate} Hz"
        )


def parabolic_interpolate(y_left: float, y_center: float, y_right: float) -> float:
    """Vertex offset of the parabola through three equally spaced points.

    Returns (y_left - y_right) / (2 * (y_left - 2 * y_center + y_right)), the
    sub-sample shift of the extremum relative to the centre point, or 0 when
    the three points are collinear (degenerate denominator).
    """
    denom = 2.0 * (y_left - 2.0 * y_center + y_right)
    if denom == 0.0:
        return 0.0
    offset = (y_left - y_right) / denom
    # A genuine local extremum keeps the vertex inside (-1, 1); clamp against
    # pathological inputs so callers can add the offset to an integer lag safely.
    return float(min(0.999, max(-0.999, offset)))


def acf_direct(x: np.ndarray, max_lag: int) -> np.ndarray:
    """Raw autocorrelation r[tau] = sum x[j] * x[j+tau] for tau in [0, max_lag].

    Evaluated lag by lag so the cost stays proportional to n * max_lag.
    """
    n = x.size
    max_lag = min(max_lag, n - 1)
    r = np.empty(max_lag + 1, dtype=np.float64)
    for tau in range(max_lag + 1):
        r[tau] = np.dot(x[: n - tau], x[tau:])
    return r
