"""Benchmark layer: sweeps, timing, voice sensitivity, report formats."""

import logging

import pytest

from pitchgate.bench import (
    DEFAULT_BUFFER_SIZES,
    DEFAULT_MIDI_RANGE,
    BenchmarkRecord,
    SensitivityRecord,
    TimingRecord,
    emit_report,
    read_report,
    run_sine_sweep,
    run_timing,
    run_voice_bench,
)
from pitchgate.detectors import AlgorithmId


# -- record invariants -------------------------------------------------------


def test_benchmark_record_ties_error_to_pitched():
    BenchmarkRecord("Yin", 4096, 60.0, 60.01, 0.01, True)
    BenchmarkRecord("Yin", 4096, 60.0, None, None, False)
    with pytest.raises(ValueError):
        BenchmarkRecord("Yin", 4096, 60.0, 60.01, None, True)
    with pytest.raises(ValueError):
        BenchmarkRecord("Yin", 4096, 60.0, None, 0.01, False)
    with pytest.raises(ValueError):
        BenchmarkRecord("Yin", 4096, 60.0, 60.01, 0.01, False)


def test_timing_record_requires_thirty_frames():
    TimingRecord("Yin", 4096, 1e6, 30)
    with pytest.raises(ValueError):
        TimingRecord("Yin", 4096, 1e6, 29)


def test_sensitivity_record_bounds_rate():
    with pytest.raises(ValueError):
        SensitivityRecord("Yin", 4096, "synth:...", 10, 11, 1.1, [])


def test_default_grids():
    assert DEFAULT_BUFFER_SIZES == (1024, 2048, 4096, 8192, 16384)
    assert list(DEFAULT_MIDI_RANGE) == list(range(36, 85))


# -- sine sweep ---------------------------------------------------------------


def test_sweep_is_complete_and_deterministic():
    algorithms = (AlgorithmId.YIN, AlgorithmId.FFT_PEAK)
    kwargs = dict(buffer_sizes=(4096,), midi_range=range(48, 52))
    first = run_sine_sweep(algorithms, **kwargs)
    second = run_sine_sweep(algorithms, **kwargs)
    assert len(first) == 2 * 4
    assert first == second
    seen = {(r.algorithm, r.buffer_size, r.true_midi) for r in first}
    assert len(seen) == len(first)


def test_sweep_accuracy_on_large_buffer():
    records = run_sine_sweep((AlgorithmId.YIN,), buffer_sizes=(4096,),
                             midi_range=range(48, 49))
    (record,) = records
    assert record.pitched
    assert record.abs_error_midi < 0.5


def test_sweep_skips_notes_above_nyquist(caplog):
    # midi 137 exceeds 22050 Hz at 44100; the triple is skipped, not faked
    with caplog.at_level(logging.WARNING):
        records = run_sine_sweep((AlgorithmId.FFT_PEAK,), buffer_sizes=(4096,),
                                 midi_range=(60, 137))
    assert len(records) == 1
    assert records[0].true_midi == 60.0
    assert any("137" in message for message in caplog.messages)


def test_sweep_mel_filter_discards_high_estimates():
    # midi 70 is far above the 400 mel ceiling
    plain = run_sine_sweep((AlgorithmId.YIN,), buffer_sizes=(4096,),
                           midi_range=(70,))
    filtered = run_sine_sweep((AlgorithmId.YIN,), buffer_sizes=(4096,),
                              midi_range=(70,), mel_filter=True)
    assert plain[0].pitched
    assert not filtered[0].pitched
    assert filtered[0].estimated_midi is None


def test_sweep_small_buffer_raises_search_floor():
    # at 1024 samples the two-period precondition forbids pitches below
    # ~86 Hz, so midi 36 (65.4 Hz) cannot be estimated correctly; the run
    # must still complete without FrameTooShortError
    records = run_sine_sweep((AlgorithmId.CLASSIC_AUTOCORRELATOR,),
                             buffer_sizes=(1024,), midi_range=(36,))
    (record,) = records
    assert record.pitched
    assert record.abs_error_midi > 0.5


# -- timing -------------------------------------------------------------------


def test_timing_preconditions():
    with pytest.raises(ValueError):
        run_timing((AlgorithmId.YIN,), (1024,), iterations=0)
    with pytest.raises(ValueError):
        run_timing((AlgorithmId.YIN,), (1024,), iterations=29)
    with pytest.raises(ValueError):
        run_timing((AlgorithmId.YIN,), (1024,), warmups=4)


def test_timing_produces_positive_means():
    records = run_timing((AlgorithmId.FFT_PEAK,), (1024, 2048),
                         iterations=30, warmups=5)
    assert [r.buffer_size for r in records] == [1024, 2048]
    for record in records:
        assert record.mean_ns_per_buffer > 0
        assert record.frames_measured == 30


# -- voice bench --------------------------------------------------------------


def test_voice_bench_counts_only_non_silent_frames():
    # duty 0.2 leaves most of the stream silent; rate still normalizes
    # against sounding frames only
    source = "synth:midi=57,duration=2.0,jitter=1.0,shimmer=2.0,noise=0.02,duty=0.2,seed=5"
    records = run_voice_bench((source,), (AlgorithmId.CLASSIC_AUTOCORRELATOR,),
                              buffer_size=4096)
    (record,) = records
    assert record.error is None
    assert 0 < record.frames_total < 22  # far fewer than the 2 s of frames
    assert record.detection_rate == record.frames_pitched / record.frames_total
    assert len(record.pitched_midi_values) == record.frames_pitched


def test_voice_bench_bad_source_yields_error_records_and_continues():
    sources = ("wav:no/such/file.wav",
               "synth:midi=57,duration=1.0,jitter=0,shimmer=0,noise=0,duty=1,seed=1")
    algorithms = (AlgorithmId.YIN, AlgorithmId.MPM)
    records = run_voice_bench(sources, algorithms, buffer_size=4096)
    assert len(records) == 4
    bad = [r for r in records if r.source.startswith("wav:")]
    good = [r for r in records if not r.source.startswith("wav:")]
    assert all(r.error is not None and r.frames_total == 0 for r in bad)
    assert all(r.error is None and r.frames_total > 0 for r in good)


def test_voice_bench_clean_tone_fully_detected():
    source = "synth:midi=57,duration=1.0,jitter=0,shimmer=0,noise=0,duty=1,seed=1"
    records = run_voice_bench((source,), (AlgorithmId.YIN,), buffer_size=4096)
    assert records[0].detection_rate == 1.0


# -- report round trips ---------------------------------------------------------


SAMPLE_RECORDS = [
    BenchmarkRecord("Yin", 4096, 60.0, 60.012, 0.012, True),
    BenchmarkRecord("Mpm", 1024, 40.0, None, None, False),
    TimingRecord("FftPeak", 2048, 123456.75, 200),
    SensitivityRecord("FastYin", 4096, "synth:midi=57", 10, 7, 0.7,
                      [56.9, 57.0, 57.1], None),
    SensitivityRecord("Yin", 4096, "wav:missing.wav", 0, 0, 0.0, [],
                      "no such file"),
]


def test_csv_round_trip(tmp_path):
    path = tmp_path / "report.csv"
    emit_report(SAMPLE_RECORDS, "csv", path)
    lines = path.read_text().splitlines()
    assert len(lines) == 1 + len(SAMPLE_RECORDS)
    assert lines[0].startswith("kind,")
    assert read_report(path) == SAMPLE_RECORDS


def test_jsonl_round_trip(tmp_path):
    path = tmp_path / "report.jsonl"
    emit_report(SAMPLE_RECORDS, "jsonl", path)
    assert len(path.read_text().splitlines()) == len(SAMPLE_RECORDS)
    assert read_report(path) == SAMPLE_RECORDS


def test_csv_preserves_float_precision(tmp_path):
    record = BenchmarkRecord("Yin", 4096, 60.0, 60.000000000123, 1.23e-10, True)
    path = tmp_path / "precision.csv"
    emit_report([record], "csv", path)
    (back,) = read_report(path)
    assert back.estimated_midi == record.estimated_midi
    assert back.abs_error_midi == record.abs_error_midi


def test_read_report_format_inferred_from_suffix(tmp_path):
    csv_path = tmp_path / "r.csv"
    jsonl_path = tmp_path / "r.jsonl"
    emit_report(SAMPLE_RECORDS[:2], "csv", csv_path)
    emit_report(SAMPLE_RECORDS[:2], "jsonl", jsonl_path)
    assert read_report(csv_path) == read_report(jsonl_path)


def test_emit_report_rejects_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        emit_report(SAMPLE_RECORDS[:1], "xml", tmp_path / "r.xml")
