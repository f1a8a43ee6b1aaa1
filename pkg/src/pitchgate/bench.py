"""Benchmark harness: sine-sweep accuracy, timing growth, voice sensitivity.

Three procedures compare the detectors. The sine sweep synthesizes one
second per note, frames it without overlap, and aggregates the per-frame
estimates with a median; an estimate is counted wrong when it lands 0.5 midi
or more from the target (the nearest-note boundary). Timing wall-clocks
single-threaded detection of a fixed 440 Hz buffer. The voice bench runs a
corpus of recordings or synthetic dysphonic voices and reports how often
each algorithm calls a frame pitched.

Accuracy and sensitivity runs are deterministic; timing obviously is not.
"""

from __future__ import annotations

import csv
import json
import logging
import time
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .audio import (
    DEFAULT_SAMPLE_RATE,
    AudioFrame,
    AudioStream,
    NyquistError,
    frames,
    freq_from_midi,
    mel_from_freq,
    midi_from_freq,
    parse_source,
    rms_amplitude,
    synth_sine,
)
from .detectors import AlgorithmId, detect
from .detectors.common import DEFAULT_CONFIG, DetectorConfig

__all__ = [
    "BenchmarkRecord",
    "TimingRecord",
    "SensitivityRecord",
    "DEFAULT_BUFFER_SIZES",
    "DEFAULT_MIDI_RANGE",
    "DEFAULT_VOICE_CORPUS",
    "run_sine_sweep",
    "run_timing",
    "run_voice_bench",
    "emit_report",
    "read_report",
]

log = logging.getLogger(__name__)

DEFAULT_BUFFER_SIZES = (1024, 2048, 4096, 8192, 16384)
DEFAULT_MIDI_RANGE = range(36, 85)

# Synthetic stand-ins for patient recordings, ordered mild to severe.
# Rates on these are frozen into tests, so the descriptors must not change.
DEFAULT_VOICE_CORPUS = (
    "synth:midi=57,duration=4.0,jitter=2.0,shimmer=6.0,noise=0.05,duty=0.8,seed=11",
    "synth:midi=55,duration=4.0,jitter=4.0,shimmer=10.0,noise=0.3,duty=0.2,seed=12",
    "synth:midi=52,duration=4.0,jitter=8.0,shimmer=20.0,noise=0.15,duty=0.5,seed=13",
    "synth:midi=50,duration=4.0,jitter=12.0,shimmer=30.0,noise=0.25,duty=0.35,seed=14",
)

SWEEP_DURATION_S = 1.0
SWEEP_AMPLITUDE = 0.8


@dataclass(frozen=True)
class BenchmarkRecord:
    algorithm: str
    buffer_size: int
    true_midi: float
    estimated_midi: Optional[float]
    abs_error_midi: Optional[float]
    pitched: bool

    def __post_init__(self) -> None:
        if self.pitched != (self.estimated_midi is not None):
            raise ValueError("estimated_midi present iff pitched")
        if self.pitched != (self.abs_error_midi is not None):
            raise ValueError("abs_error_midi present iff pitched")


@dataclass(frozen=True)
class TimingRecord:
    algorithm: str
    buffer_size: int
    mean_ns_per_buffer: float
    frames_measured: int

    def __post_init__(self) -> None:
        if self.frames_measured < 30:
            raise ValueError(
                f"timing means need >= 30 iterations, got {self.frames_measured}"
            )


@dataclass(frozen=True)
class SensitivityRecord:
    algorithm: str
    buffer_size: int
    source: str
    frames_total: int
    frames_pitched: int
    detection_rate: float
    pitched_midi_values: list[float]
    error: Optional[str] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.detection_rate <= 1.0:
            raise ValueError(f"detection_rate out of range: {self.detection_rate}")


def _clamped_config(cfg: DetectorConfig, buffer_size: int, sample_rate: int) -> DetectorConfig:
    """Raise min_freq so the frame satisfies the two-periods precondition."""
    floor = 2 * sample_rate / buffer_size
    if cfg.min_freq_hz >= floor:
        return cfg
    return replace(cfg, min_freq_hz=floor)


def run_sine_sweep(
    algorithms: Sequence[AlgorithmId] = tuple(AlgorithmId),
    buffer_sizes: Sequence[int] = DEFAULT_BUFFER_SIZES,
    midi_range: Sequence[int] = DEFAULT_MIDI_RANGE,
    cfg: DetectorConfig = DEFAULT_CONFIG,
    *,
    sample_rate: int = DEFAULT_SAMPLE_RATE,
    mel_filter: bool = False,
    mel_ceiling: float = 400.0,
) -> list[BenchmarkRecord]:
    """Accuracy sweep over pure tones; one record per (alg, buffer, note).

    Notes whose frequency violates Nyquist are skipped with a warning, so
    those triples are absent from the result. With mel_filter on, estimates
    above the ceiling are discarded exactly as the live pipeline would
    discard them, which silences everything above the ceiling's note.
    """
    records: list[BenchmarkRecord] = []
    for midi in midi_range:
        try:
            stream = synth_sine(
                midi, SWEEP_DURATION_S, sample_rate, amplitude=SWEEP_AMPLITUDE
            )
        except NyquistError as exc:
            log.warning("skipping midi %s: %s", midi, exc)
            continue
        for buffer_size in buffer_sizes:
            frame_seq = frames(stream, buffer_size)
            for alg in algorithms:
                run_cfg = _clamped_config(cfg, buffer_size, sample_rate)
                estimates = []
                for frame in frame_seq:
                    result = detect(alg, frame, run_cfg)
                    if not result.pitched:
                        continue
                    if mel_filter and mel_from_freq(result.frequency_hz) > mel_ceiling:
                        continue
                    estimates.append(midi_from_freq(result.frequency_hz))
                if estimates:
                    est = float(np.median(estimates))
                    records.append(
                        BenchmarkRecord(
                            algorithm=str(alg),
                            buffer_size=buffer_size,
                            true_midi=float(midi),
                            estimated_midi=est,
                            abs_error_midi=abs(est - midi),
                            pitched=True,
                        )
                    )
                else:
                    records.append(
                        BenchmarkRecord(
                            algorithm=str(alg),
                            buffer_size=buffer_size,
                            true_midi=float(midi),
                            estimated_midi=None,
                            abs_error_midi=None,
                            pitched=False,
                        )
                    )
    return records


def run_timing(
    algorithms: Sequence[AlgorithmId] = tuple(AlgorithmId),
    buffer_sizes: Sequence[int] = DEFAULT_BUFFER_SIZES,
    cfg: DetectorConfig = DEFAULT_CONFIG,
    *,
    iterations: int = 30,
    warmups: int = 5,
    sample_rate: int = DEFAULT_SAMPLE_RATE,
) -> list[TimingRecord]:
    """Mean wall-clock per buffer, single thread, fixed 440 Hz input."""
    if iterations < 30:
        raise ValueError(f"iterations must be >= 30, got {iterations}")
    if warmups < 5:
        raise ValueError(f"warmups must be >= 5, got {warmups}")
    records = []
    for alg in algorithms:
        for buffer_size in buffer_sizes:
            run_cfg = _clamped_config(cfg, buffer_size, sample_rate)
            stream = synth_sine(
                69, buffer_size / sample_rate + 0.01, sample_rate, amplitude=0.8
            )
            frame = AudioFrame(stream.samples[:buffer_size], sample_rate, 0)
            for _ in range(warmups):
                detect(alg, frame, run_cfg)
            start = time.perf_counter()
            for _ in range(iterations):
                detect(alg, frame, run_cfg)
            elapsed = time.perf_counter() - start
            records.append(
                TimingRecord(
                    algorithm=str(alg),
                    buffer_size=buffer_size,
                    mean_ns_per_buffer=elapsed / iterations * 1e9,
                    frames_measured=iterations,
                )
            )
    return records


def run_voice_bench(
    sources: Sequence[str] = DEFAULT_VOICE_CORPUS,
    algorithms: Sequence[AlgorithmId] = tuple(AlgorithmId),
    buffer_size: int = 4096,
    cfg: DetectorConfig = DEFAULT_CONFIG,
) -> list[SensitivityRecord]:
    """Detection-rate comparison over voice sources.

    Only non-silent frames count toward the rate: a frame of exact zeros
    says nothing about an algorithm's sensitivity. A source that cannot be
    loaded produces error records (one per algorithm) and the run continues.
    """
    records: list[SensitivityRecord] = []
    for source in sources:
        try:
            stream = parse_source(source)
        except Exception as exc:
            for alg in algorithms:
                records.append(
                    SensitivityRecord(
                        algorithm=str(alg),
                        buffer_size=buffer_size,
                        source=source,
                        frames_total=0,
                        frames_pitched=0,
                        detection_rate=0.0,
                        pitched_midi_values=[],
                        error=str(exc),
                    )
                )
            continue
        run_cfg = _clamped_config(cfg, buffer_size, stream.sample_rate)
        frame_seq = [f for f in frames(stream, buffer_size) if rms_amplitude(f) > 0]
        for alg in algorithms:
            values = []
            pitched = 0
            for frame in frame_seq:
                result = detect(alg, frame, run_cfg)
                if result.pitched:
                    pitched += 1
                    values.append(midi_from_freq(result.frequency_hz))
            total = len(frame_seq)
            records.append(
                SensitivityRecord(
                    algorithm=str(alg),
                    buffer_size=buffer_size,
                    source=source,
                    frames_total=total,
                    frames_pitched=pitched,
                    detection_rate=pitched / total if total else 0.0,
                    pitched_midi_values=values,
                )
            )
    return records


AnyRecord = Union[BenchmarkRecord, TimingRecord, SensitivityRecord]

_KINDS = {
    "benchmark": BenchmarkRecord,
    "timing": TimingRecord,
    "sensitivity": SensitivityRecord,
}
_KIND_OF = {cls: kind for kind, cls in _KINDS.items()}
_LIST_FIELDS = {"pitched_midi_values"}


def _to_row(record: AnyRecord) -> dict:
    row = {"kind": _KIND_OF[type(record)]}
    row.update(asdict(record))
    return row


def _from_row(row: dict) -> AnyRecord:
    kind = row.pop("kind")
    cls = _KINDS.get(kind)
    if cls is None:
        raise ValueError(f"unknown record kind: {kind!r}")
    # Mixed-kind CSV pads every row to the union header; keep only the
    # columns this kind owns.
    names = {f.name for f in fields(cls)}
    return cls(**{key: value for key, value in row.items() if key in names})


def emit_report(
    records: Sequence[AnyRecord], format: str, path: Union[str, Path]
) -> Path:
    """Write records to CSV (header + one row each) or JSONL.

    Both formats round-trip through read_report. CSV cells hold JSON
    scalars, so None survives as an empty cell and lists as JSON text.
    """
    path = Path(path)
    rows = [_to_row(r) for r in records]
    if format == "jsonl":
        with open(path, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row) + "\n")
    elif format == "csv":
        # Union header in first-appearance order, so kinds can share a file.
        columns = ["kind"]
        for row in rows:
            for key in row:
                if key not in columns:
                    columns.append(key)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_csv_cell(row.get(col)) for col in columns])
    else:
        raise ValueError(f"format must be csv or jsonl, got {format!r}")
    return path


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return json.dumps(list(value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv_parse(column: str, cell: str):
    if cell == "":
        return None
    if column in _LIST_FIELDS:
        return json.loads(cell)
    if cell == "true":
        return True
    if cell == "false":
        return False
    try:
        return int(cell)
    except ValueError:
        pass
    try:
        return float(cell)
    except ValueError:
        return cell


def read_report(path: Union[str, Path], format: Optional[str] = None) -> list[AnyRecord]:
    """Parse a report written by emit_report back into records."""
    path = Path(path)
    if format is None:
        format = "csv" if path.suffix == ".csv" else "jsonl"
    records = []
    if format == "jsonl":
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    records.append(_from_row(json.loads(line)))
    elif format == "csv":
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                columns = next(reader)
            except StopIteration:
                return []
            for cells in reader:
                row = {c: _csv_parse(c, v) for c, v in zip(columns, cells)}
                records.append(_from_row(row))
    else:
        raise ValueError(f"format must be csv or jsonl, got {format!r}")
    return records
