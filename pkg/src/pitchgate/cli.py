"""Command-line entry points: serve, analyze, and the bench suite."""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import bench as bench_mod
from .audio import frames, load_wav, midi_from_freq
from .detectors import AlgorithmId, detect
from .detectors.common import DEFAULT_CONFIG
from .pipeline import sample_to_wire, to_pitch_sample
from .service import VALID_BUFFER_SIZES, EngineConfig, create_app

__all__ = ["main"]


def _algorithms(arg: str) -> list[AlgorithmId]:
    if arg == "all":
        return list(AlgorithmId)
    try:
        return [AlgorithmId(name.strip()) for name in arg.split(",") if name.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _buffers(arg: str) -> list[int]:
    sizes = [int(part) for part in arg.split(",") if part.strip()]
    bad = [s for s in sizes if s not in VALID_BUFFER_SIZES]
    if bad:
        raise argparse.ArgumentTypeError(
            f"unsupported buffer sizes {bad}; pick from {list(VALID_BUFFER_SIZES)}"
        )
    return sizes


def _midi_range(arg: str) -> range:
    try:
        lo, hi = arg.split(":")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"midi range must look like 36:84, got {arg!r}"
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pitchgate",
        description=(
            "Real-time pitch estimation engine with a voice-controlled "
            "avoidance game for dysphonia rehabilitation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the live engine and web socket service")
    serve.add_argument("--config", help="engine config JSON file")
    serve.add_argument(
        "--input",
        help="input override: device:NAME, wav:PATH, or synth:SPEC",
    )
    serve.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("PITCHGATE_PORT", "8000")),
        help="listen port (env PITCHGATE_PORT)",
    )
    serve.add_argument(
        "--store",
        default=os.environ.get("PITCHGATE_STORE"),
        help="session store path (env PITCHGATE_STORE)",
    )
    serve.add_argument("--algorithm", help="detector algorithm override")
    serve.add_argument("--buffer", type=int, help="buffer size override")
    serve.add_argument("--level", help="level preset name override")
    serve.add_argument("--alias", help="patient alias for new sessions")
    serve.add_argument(
        "--ui",
        default=os.environ.get("PITCHGATE_UI"),
        help="directory of browser client assets to serve at / (env PITCHGATE_UI)",
    )
    serve.add_argument(
        "--pace",
        choices=("realtime", "flatout"),
        default="realtime",
        help="frame pacing: realtime for interactive use, flatout for headless runs",
    )

    analyze = sub.add_parser("analyze", help="offline pitch track extraction from a WAV")
    analyze.add_argument("--in", dest="input", required=True, help="input WAV path")
    analyze.add_argument(
        "--algorithm",
        type=AlgorithmId,
        default=AlgorithmId.CLASSIC_AUTOCORRELATOR,
        help=f"one of: {', '.join(a.value for a in AlgorithmId)}",
    )
    analyze.add_argument(
        "--buffer", type=int, default=4096, choices=VALID_BUFFER_SIZES
    )
    analyze.add_argument("--out", required=True, help="output CSV path")

    bench = sub.add_parser("bench", help="comparison benchmarks")
    bench_sub = bench.add_subparsers(dest="bench_command", required=True)

    def _common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--algorithms",
            type=_algorithms,
            default=list(AlgorithmId),
            help="comma-separated algorithm names, or 'all'",
        )
        p.add_argument("--out", help="report file path")
        p.add_argument(
            "--format",
            choices=("csv", "jsonl"),
            default="csv",
            help="report format when --out is given",
        )

    sine = bench_sub.add_parser("sine", help="accuracy sweep over pure tones")
    _common(sine)
    sine.add_argument(
        "--buffers", type=_buffers, default=list(bench_mod.DEFAULT_BUFFER_SIZES)
    )
    sine.add_argument(
        "--midi-range",
        type=_midi_range,
        default=bench_mod.DEFAULT_MIDI_RANGE,
        help="inclusive integer range LO:HI",
    )
    sine.add_argument(
        "--mel-filter",
        choices=("on", "off"),
        default="off",
        help="apply the 400-mel band filter to estimates",
    )

    timing = bench_sub.add_parser("timing", help="per-buffer wall-clock comparison")
    _common(timing)
    timing.add_argument(
        "--buffers", type=_buffers, default=list(bench_mod.DEFAULT_BUFFER_SIZES)
    )
    timing.add_argument("--iterations", type=int, default=30)
    timing.add_argument("--warmups", type=int, default=5)

    voice = bench_sub.add_parser("voice", help="detection sensitivity on voice sources")
    _common(voice)
    voice.add_argument(
        "--sources",
        nargs="+",
        default=list(bench_mod.DEFAULT_VOICE_CORPUS),
        help="WAV paths or synth descriptors (synth specs contain commas, "
        "so sources are space-separated)",
    )
    voice.add_argument("--buffer", type=int, default=4096, choices=VALID_BUFFER_SIZES)

    return parser


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    if args.config:
        cfg = EngineConfig.from_json_file(args.config)
    else:
        cfg = EngineConfig()
    overrides = {}
    if args.input:
        overrides["input"] = args.input
    if args.algorithm:
        overrides["algorithm"] = AlgorithmId(args.algorithm)
    if args.buffer:
        overrides["buffer_size"] = args.buffer
    if args.alias:
        overrides["patient_alias"] = args.alias
    overrides["realtime"] = args.pace == "realtime"
    if overrides:
        cfg = replace(cfg, **overrides)
    if args.level:
        from .game import load_level_presets

        cfg = replace(cfg, level=load_level_presets()[args.level], level_name=args.level)
    app = create_app(cfg, store_path=args.store, ui_dir=args.ui)
    uvicorn.run(app, host="0.0.0.0", port=args.port)
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    stream = load_wav(args.input)
    cfg = DEFAULT_CONFIG
    floor = 2 * stream.sample_rate / args.buffer
    if cfg.min_freq_hz < floor:
        cfg = replace(cfg, min_freq_hz=floor)
    columns = [
        "sample_index",
        "time_s",
        "frequency_hz",
        "mel",
        "note_name",
        "midi_number",
        "amplitude_rms",
        "duration_ms",
        "pitched",
    ]
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for frame in frames(stream, args.buffer):
            sample = to_pitch_sample(detect(args.algorithm, frame, cfg), frame)
            row = sample_to_wire(sample)
            row["time_s"] = frame.start_index / stream.sample_rate
            writer.writerow(["" if row[c] is None else row[c] for c in columns])
    print(f"wrote pitch track to {args.out}")
    return 0


def _write_report(records, args: argparse.Namespace) -> None:
    if args.out:
        bench_mod.emit_report(records, args.format, args.out)
        print(f"wrote {len(records)} records to {args.out}")


def _cmd_bench_sine(args: argparse.Namespace) -> int:
    records = bench_mod.run_sine_sweep(
        algorithms=args.algorithms,
        buffer_sizes=args.buffers,
        midi_range=args.midi_range,
        mel_filter=args.mel_filter == "on",
    )
    bad = sum(
        1 for r in records if r.abs_error_midi is not None and r.abs_error_midi >= 0.5
    )
    unpitched = sum(1 for r in records if not r.pitched)
    print(
        f"sine sweep: {len(records)} records, {bad} with error >= 0.5 midi, "
        f"{unpitched} unpitched"
    )
    _write_report(records, args)
    return 0


def _cmd_bench_timing(args: argparse.Namespace) -> int:
    records = bench_mod.run_timing(
        algorithms=args.algorithms,
        buffer_sizes=args.buffers,
        iterations=args.iterations,
        warmups=args.warmups,
    )
    for record in records:
        print(
            f"{record.algorithm:<24} buffer {record.buffer_size:>6}: "
            f"{record.mean_ns_per_buffer / 1e6:9.3f} ms"
        )
    _write_report(records, args)
    return 0


def _cmd_bench_voice(args: argparse.Namespace) -> int:
    records = bench_mod.run_voice_bench(
        sources=args.sources, algorithms=args.algorithms, buffer_size=args.buffer
    )
    failures = [r for r in records if r.error]
    for record in records:
        label = record.source if len(record.source) <= 48 else record.source[:45] + "..."
        if record.error:
            print(f"{record.algorithm:<24} {label}: ERROR {record.error}")
        else:
            print(
                f"{record.algorithm:<24} {label}: "
                f"rate {record.detection_rate:.3f} "
                f"({record.frames_pitched}/{record.frames_total})"
            )
    _write_report(records, args)
    if failures:
        print(f"{len(failures)} source runs failed", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = _build_parser().parse_args(argv)
    if args.command == "serve":
        return _cmd_serve(args)
    if args.command == "analyze":
        return _cmd_analyze(args)
    if args.command == "bench":
        handler = {
            "sine": _cmd_bench_sine,
            "timing": _cmd_bench_timing,
            "voice": _cmd_bench_voice,
        }[args.bench_command]
        return handler(args)
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
