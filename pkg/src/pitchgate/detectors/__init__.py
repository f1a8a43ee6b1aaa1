"""Seven pitch detectors behind one frame-in, result-out contract.

Every detector is a pure function of (frame, config); detect() is the
uniform dispatcher. The individual implementations live in the submodules
and are re-exported here together with the curve primitives (cmndf, nsdf,
parabolic_interpolate) they are built from.
"""
from __future__ import annotations

from enum import Enum

from ..audio import AudioFrame
from .autocorr import advanced_autocorrelator, classic_autocorrelator
from .common import (
    DEFAULT_CONFIG,
    DetectorConfig,
    DetectorResult,
    FrameTooShortError,
    check_frame_length,
    parabolic_interpolate,
)
from .mpm import mpm, nsdf
from .spectral import fft_peak
from .wavelet import dynamic_wavelet
from .yin import cmndf, fast_yin, yin

__all__ = [
    "AlgorithmId",
    "DetectorConfig",
    "DetectorResult",
    "DEFAULT_CONFIG",
    "FrameTooShortError",
    "detect",
    "parabolic_interpolate",
    "cmndf",
    "nsdf",
    "classic_autocorrelator",
    "advanced_autocorrelator",
    "dynamic_wavelet",
    "yin",
    "fast_yin",
    "mpm",
    "fft_peak",
]


class AlgorithmId(str, Enum):
    """Stable algorithm names used on the CLI, in reports and on the wire."""

    CLASSIC_AUTOCORRELATOR = "ClassicAutocorrelator"
    ADVANCED_AUTOCORRELATOR = "AdvancedAutocorrelator"
    DYNAMIC_WAVELET = "DynamicWavelet"
    YIN = "Yin"
    FAST_YIN = "FastYin"
    MPM = "Mpm"
    FFT_PEAK = "FftPeak"

    def __str__(self) -> str:  # keep CLI/CSV output free of the enum prefix
        return self.value


_DISPATCH = {
    AlgorithmId.CLASSIC_AUTOCORRELATOR: classic_autocorrelator,
    AlgorithmId.ADVANCED_AUTOCORRELATOR: advanced_autocorrelator,
    AlgorithmId.DYNAMIC_WAVELET: dynamic_wavelet,
    AlgorithmId.YIN: yin,
    AlgorithmId.FAST_YIN: fast_yin,
    AlgorithmId.MPM: mpm,
    AlgorithmId.FFT_PEAK: fft_peak,
}


def detect(alg: AlgorithmId, frame: AudioFrame,
           cfg: DetectorConfig = DEFAULT_CONFIG) -> DetectorResult:
    """Run one algorithm on one frame.

    Raises:
        FrameTooShortError: the frame cannot hold two periods of
            cfg.min_freq_hz; the message names the required minimum length.
    """
    cfg.validate(frame.sample_rate)
    check_frame_length(frame, cfg)
    return _DISPATCH[AlgorithmId(alg)](frame, cfg)
