"""Monitor records, mel-band filtering, and the critical-pitch control stage.

Detector output is turned into :class:`PitchSample` records (the row format
shown on the live monitor), optionally band-limited and median-smoothed, and
finally compared against the effective critical pitch to produce the
:class:`ControlSignal` that drives the game. Loudness is reported but never
participates in control decisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

from .audio import (
    AudioFrame,
    freq_from_mel,
    mel_from_freq,
    midi_from_freq,
    note_name,
    rms_amplitude,
)
from .detectors.common import DetectorResult

__all__ = [
    "PitchSample",
    "PipelineConfig",
    "ControlSignal",
    "MedianSmoother",
    "Pipeline",
    "to_pitch_sample",
    "mel_band_filter",
    "effective_critical",
    "control",
    "sample_to_wire",
    "sample_from_wire",
]


@dataclass(frozen=True)
class PitchSample:
    """One monitor row: the pitch fields plus amplitude and stream position.

    Unpitched samples keep amplitude, position, and duration but carry None
    in all four pitch fields; pitched samples carry all four.
    """

    frequency_hz: Optional[float]
    mel: Optional[float]
    note_name: Optional[str]
    midi_number: Optional[float]
    amplitude_rms: float
    sample_index: int
    duration_ms: float
    pitched: bool

    def __post_init__(self) -> None:
        pitch_fields = (self.frequency_hz, self.mel, self.note_name, self.midi_number)
        if self.pitched:
            if any(v is None for v in pitch_fields):
                raise ValueError("pitched sample must carry all pitch fields")
        elif any(v is not None for v in pitch_fields):
            raise ValueError("unpitched sample must not carry pitch fields")
        if not math.isfinite(self.amplitude_rms) or self.amplitude_rms < 0:
            raise ValueError(f"amplitude_rms must be >= 0, got {self.amplitude_rms}")
        if self.sample_index < 0:
            raise ValueError(f"sample_index must be >= 0, got {self.sample_index}")
        if not self.duration_ms > 0:
            raise ValueError(f"duration_ms must be > 0, got {self.duration_ms}")


@dataclass(frozen=True)
class PipelineConfig:
    """Tuning for the filter/threshold stage.

    difficulty_divisor scales the critical pitch down: 1 is the normal
    setting, 2 halves it, 8 gives the easiest clinically used value.
    smoothing_window is a median over the last N pitched samples; 1 disables
    smoothing.
    """

    critical_mel: float = 400.0
    difficulty_divisor: float = 1.0
    mel_ceiling: float = 400.0
    smoothing_window: int = 1

    def __post_init__(self) -> None:
        if not self.mel_ceiling > 0:
            raise ValueError(f"mel_ceiling must be > 0, got {self.mel_ceiling}")
        if not self.critical_mel > 0:
            raise ValueError(f"critical_mel must be > 0, got {self.critical_mel}")
        if not self.difficulty_divisor >= 1:
            raise ValueError(
                f"difficulty_divisor must be >= 1, got {self.difficulty_divisor}"
            )
        # The normal setting uses the ceiling itself as the critical pitch,
        # so equality is allowed.
        if self.critical_mel / self.difficulty_divisor > self.mel_ceiling:
            raise ValueError(
                "effective critical pitch "
                f"{self.critical_mel / self.difficulty_divisor} exceeds "
                f"mel_ceiling {self.mel_ceiling}"
            )
        if not 1 <= self.smoothing_window <= 5:
            raise ValueError(
                f"smoothing_window must be in 1..5, got {self.smoothing_window}"
            )


@dataclass(frozen=True)
class ControlSignal:
    """Game input derived from one sample: rise while above_critical."""

    above_critical: bool
    effective_critical_mel: float
    source: PitchSample


def to_pitch_sample(result: DetectorResult, frame: AudioFrame) -> PitchSample:
    """Render a detector result as the monitor row for its frame."""
    duration_ms = len(frame) / frame.sample_rate * 1000.0
    amplitude = rms_amplitude(frame)
    if not result.pitched:
        return PitchSample(
            frequency_hz=None,
            mel=None,
            note_name=None,
            midi_number=None,
            amplitude_rms=amplitude,
            sample_index=frame.start_index,
            duration_ms=duration_ms,
            pitched=False,
        )
    freq = result.frequency_hz
    midi = midi_from_freq(freq)
    return PitchSample(
        frequency_hz=freq,
        mel=mel_from_freq(freq),
        note_name=note_name(midi),
        midi_number=midi,
        amplitude_rms=amplitude,
        sample_index=frame.start_index,
        duration_ms=duration_ms,
        pitched=True,
    )


def _demote(sample: PitchSample) -> PitchSample:
    return replace(
        sample,
        frequency_hz=None,
        mel=None,
        note_name=None,
        midi_number=None,
        pitched=False,
    )


def mel_band_filter(sample: PitchSample, ceiling: float) -> PitchSample:
    """Demote samples above the mel ceiling to unpitched.

    The sample stays in the stream (amplitude, position, and duration
    intact) so the monitor timeline has no holes. Values exactly at the
    ceiling are kept.
    """
    if not ceiling > 0:
        raise ValueError(f"ceiling must be > 0, got {ceiling}")
    if sample.pitched and sample.mel > ceiling:
        return _demote(sample)
    return sample


def effective_critical(cfg: PipelineConfig) -> float:
    return cfg.critical_mel / cfg.difficulty_divisor


def control(sample: PitchSample, cfg: PipelineConfig) -> ControlSignal:
    """Threshold a sample against the effective critical pitch.

    Fires only for pitched samples with mel at or above the threshold;
    amplitude never participates.
    """
    threshold = effective_critical(cfg)
    above = sample.pitched and sample.mel >= threshold
    return ControlSignal(
        above_critical=above, effective_critical_mel=threshold, source=sample
    )


@dataclass
class MedianSmoother:
    """Median filter over the mel values of consecutive pitched samples.

    An unpitched sample clears the history, so the median never mixes
    values across voicing breaks. Window 1 passes samples through.
    """

    window: int = 1
    _history: list[float] = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.window <= 5:
            raise ValueError(f"window must be in 1..5, got {self.window}")

    def apply(self, sample: PitchSample) -> PitchSample:
        if self.window == 1:
            return sample
        if not sample.pitched:
            self._history.clear()
            return sample
        self._history.append(sample.mel)
        if len(self._history) > self.window:
            del self._history[0]
        ordered = sorted(self._history)
        k = len(ordered)
        mid = k // 2
        med = ordered[mid] if k % 2 else (ordered[mid - 1] + ordered[mid]) / 2.0
        if med == sample.mel:
            return sample
        freq = freq_from_mel(med)
        midi = midi_from_freq(freq)
        return replace(
            sample,
            frequency_hz=freq,
            mel=med,
            note_name=note_name(midi),
            midi_number=midi,
        )

    def reset(self) -> None:
        self._history.clear()


class Pipeline:
    """Filter, smooth, and threshold a sample stream in order.

    Stateful only through the smoother; the same input sequence always
    produces the same output sequence.
    """

    def __init__(self, cfg: PipelineConfig) -> None:
        self.cfg = cfg
        self._smoother = MedianSmoother(cfg.smoothing_window)

    def process(self, result: DetectorResult, frame: AudioFrame) -> ControlSignal:
        sample = to_pitch_sample(result, frame)
        sample = mel_band_filter(sample, self.cfg.mel_ceiling)
        sample = self._smoother.apply(sample)
        return control(sample, self.cfg)

    def reconfigure(self, cfg: PipelineConfig) -> None:
        """Swap tuning live; smoothing history survives only if the window
        size is unchanged."""
        if cfg.smoothing_window != self.cfg.smoothing_window:
            self._smoother = MedianSmoother(cfg.smoothing_window)
        self.cfg = cfg


_WIRE_KEYS = (
    "frequency_hz",
    "mel",
    "note_name",
    "midi_number",
    "amplitude_rms",
    "sample_index",
    "duration_ms",
    "pitched",
)


def sample_to_wire(sample: PitchSample) -> dict:
    """JSON-ready dict; absent pitch fields serialize as null."""
    return {key: getattr(sample, key) for key in _WIRE_KEYS}


def sample_from_wire(payload: dict) -> PitchSample:
    missing = [key for key in _WIRE_KEYS if key not in payload]
    if missing:
        raise ValueError(f"sample payload missing keys: {missing}")
    return PitchSample(**{key: payload[key] for key in _WIRE_KEYS})
