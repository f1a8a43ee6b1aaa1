"""Audio primitives shared by every stage of the engine.

Frames and streams, the frequency/MIDI/mel conversions, sine and
degraded-voice synthesis, and plain RIFF WAV ingestion. Everything here is
pure and immutable after construction, so values can cross thread
boundaries freely.
"""
from __future__ import annotations

import math
import struct
import wave
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DEFAULT_SAMPLE_RATE",
    "AudioFrame",
    "AudioStream",
    "FormatError",
    "NyquistError",
    "midi_from_freq",
    "freq_from_midi",
    "mel_from_freq",
    "freq_from_mel",
    "note_name",
    "synth_sine",
    "synth_dysphonic",
    "load_wav",
    "write_wav",
    "frames",
    "rms_amplitude",
    "parse_source",
]

DEFAULT_SAMPLE_RATE = 44100

A4_HZ = 440.0
A4_MIDI = 69.0
MEL_SCALE = 2595.0
MEL_CORNER_HZ = 700.0

_NOTE_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")


class FormatError(ValueError):
    """A WAV file could not be decoded; the message names the offending field."""


class NyquistError(ValueError):
    """A requested synthesis frequency is at or above half the sample rate."""


# ---------------------------------------------------------------------------
# conversions
# ---------------------------------------------------------------------------

def midi_from_freq(freq_hz: float, reference_hz: float = A4_HZ) -> float:
    """Convert a frequency in Hz to a (real-valued) MIDI note number.

    Args:
        freq_hz: frequency, must be finite and > 0.
        reference_hz: tuning of A4 (MIDI 69).

    Returns:
        69 + 12 * log2(freq_hz / reference_hz).
    """
    if not math.isfinite(freq_hz) or freq_hz <= 0:
        raise ValueError(f"frequency must be finite and positive, got {freq_hz}")
    return A4_MIDI + 12.0 * math.log2(freq_hz / reference_hz)


def freq_from_midi(midi: float, reference_hz: float = A4_HZ) -> float:
    """Inverse of midi_from_freq: 440 * 2**((midi - 69) / 12) at default tuning."""
    if not math.isfinite(midi):
        raise ValueError(f"midi note number must be finite, got {midi}")
    return reference_hz * 2.0 ** ((midi - A4_MIDI) / 12.0)


def mel_from_freq(freq_hz: float) -> float:
    """Convert Hz to mel: 2595 * log10(1 + f / 700). Defined for f >= 0."""
    if not math.isfinite(freq_hz) or freq_hz < 0:
        raise ValueError(f"frequency must be finite and non-negative, got {freq_hz}")
    return MEL_SCALE * math.log10(1.0 + freq_hz / MEL_CORNER_HZ)


def freq_from_mel(mel: float) -> float:
    """Exact inverse of mel_from_freq: 700 * (10**(mel / 2595) - 1)."""
    if not math.isfinite(mel) or mel < 0:
        raise ValueError(f"mel value must be finite and non-negative, got {mel}")
    return MEL_CORNER_HZ * (10.0 ** (mel / MEL_SCALE) - 1.0)


def note_name(midi: float) -> str:
    """Nearest-integer MIDI note rendered in scientific pitch notation, e.g. 69 -> 'A4'."""
    nearest = int(math.floor(midi + 0.5))
    return f"{_NOTE_NAMES[nearest % 12]}{nearest // 12 - 1}"


# ---------------------------------------------------------------------------
# frames and streams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AudioFrame:
    """One fixed-length analysis window.

    samples are float64 in [-1, 1]; start_index is the offset of the first
    sample since the start of the source stream.
    """

    samples: np.ndarray
    sample_rate: int
    start_index: int = 0

    def __post_init__(self) -> None:
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("frame samples must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("frame samples must all be finite")
        peak = float(np.max(np.abs(arr)))
        if peak > 1.0 + 1e-12:
            raise ValueError(f"frame samples must lie in [-1, 1], peak was {peak}")
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        if self.start_index < 0:
            raise ValueError(f"start_index must be non-negative, got {self.start_index}")
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration_ms(self) -> float:
        return self.samples.size / self.sample_rate * 1000.0


@dataclass(frozen=True)
class AudioStream:
    """An in-memory ordered sample sequence with a fixed sample rate."""

    sample_rate: int
    samples: np.ndarray

    def __post_init__(self) -> None:
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        arr = np.ascontiguousarray(np.asarray(self.samples, dtype=np.float64))
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate


def frames(stream: AudioStream, buffer_size: int, hop: int | None = None) -> list[AudioFrame]:
    """Split a stream into fixed-length frames; a trailing partial window is dropped.

    Frame k covers samples [k*hop, k*hop + buffer_size). With hop == buffer_size
    the frames tile the stream without overlap.
    """
    if buffer_size <= 0:
        raise ValueError(f"buffer_size must be positive, got {buffer_size}")
    if hop is None:
        hop = buffer_size
    if hop <= 0 or hop > buffer_size:
        raise ValueError(f"hop must satisfy 0 < hop <= buffer_size, got {hop}")
    n = len(stream)
    if n < buffer_size:
        return []
    count = (n - buffer_size) // hop + 1
    return [
        AudioFrame(
            samples=stream.samples[k * hop : k * hop + buffer_size],
            sample_rate=stream.sample_rate,
            start_index=k * hop,
        )
        for k in range(count)
    ]


def rms_amplitude(frame: AudioFrame) -> float:
    """Root-mean-square amplitude of one frame."""
    x = frame.samples
    return float(np.sqrt(np.mean(x * x)))


# ---------------------------------------------------------------------------
# synthesis
# ---------------------------------------------------------------------------

def synth_sine(
    midi: float,
    duration_s: float,
    sample_rate: int = DEFAULT_SAMPLE_RATE,
    amplitude: float = 0.8,
) -> AudioStream:
    """Generate a pure sine tone at the frequency of the given MIDI note.

    Args:
        midi: real-valued MIDI note number.
        duration_s: length in seconds; the stream holds round(duration_s * sample_rate)
            samples.
        sample_rate: output rate in Hz.
        amplitude: peak amplitude in (0, 1].

    Raises:
        NyquistError: the note's frequency is >= sample_rate / 2.
    """
    if not 0.0 < amplitude <= 1.0:
        raise ValueError(f"amplitude must be in (0, 1], got {amplitude}")
    if duration_s <= 0:
        raise ValueError(f"duration_s must be positive, got {duration_s}")
    freq = freq_from_midi(midi)
    if freq >= sample_rate / 2:
        raise NyquistError(
            f"{freq:.1f} Hz (midi {midi}) is not representable at {sample_rate} Hz"
        )
    n = round(duration_s * sample_rate)
    i = np.arange(n, dtype=np.float64)
    samples = amplitude * np.sin(2.0 * np.pi * freq * i / sample_rate)
    return AudioStream(sample_rate=sample_rate, samples=samples)


# Voiced phonation is laid down in fixed half-second blocks so the voiced
# fraction of the output tracks the requested duty cycle exactly.
_VOICED_BLOCK_S = 0.5
_VOICED_FADE_S = 0.005


def synth_dysphonic(
    base_midi: float,
    duration_s: float,
    sample_rate: int = DEFAULT_SAMPLE_RATE,
    jitter_pct: float = 0.0,
    shimmer_pct: float = 0.0,
    breath_noise_level: float = 0.0,
    voiced_duty_cycle: float = 1.0,
    seed: int = 0,
) -> AudioStream:
    """Synthesize a degraded voice: a pulse train with cycle-level instability.

    Each glottal cycle is one sine period whose length is perturbed by
    jitter_pct and whose amplitude is perturbed by shimmer_pct; white noise at
    breath_noise_level rides on the voiced part, and everything outside the
    voiced bursts (covering voiced_duty_cycle of the total duration) is exact
    silence. Deterministic for a fixed seed (PCG64).

    Args:
        base_midi: centre pitch of the voice.
        duration_s: total length in seconds.
        sample_rate: output rate in Hz.
        jitter_pct: per-cycle period perturbation, percent in [0, 50].
        shimmer_pct: per-cycle amplitude perturbation, percent in [0, 50].
        breath_noise_level: standard deviation of the additive noise, >= 0.
        voiced_duty_cycle: voiced fraction of the duration, in (0, 1].
        seed: RNG seed.
    """
    if not 0.0 <= jitter_pct <= 50.0:
        raise ValueError(f"jitter_pct must be in [0, 50], got {jitter_pct}")
    if not 0.0 <= shimmer_pct <= 50.0:
        raise ValueError(f"shimmer_pct must be in [0, 50], got {shimmer_pct}")
    if breath_noise_level < 0:
        raise ValueError(f"breath_noise_level must be >= 0, got {breath_noise_level}")
    if not 0.0 < voiced_duty_cycle <= 1.0:
        raise ValueError(f"voiced_duty_cycle must be in (0, 1], got {voiced_duty_cycle}")
    if duration_s <= 0:
        raise ValueError(f"duration_s must be positive, got {duration_s}")
    freq = freq_from_midi(base_midi)
    if freq >= sample_rate / 2:
        raise NyquistError(
            f"{freq:.1f} Hz (midi {base_midi}) is not representable at {sample_rate} Hz"
        )

    rng = np.random.default_rng(seed)
    n = round(duration_s * sample_rate)
    base_period = sample_rate / freq

    voice = np.zeros(n, dtype=np.float64)
    pos = 0
    while pos < n:
        period = base_period * (1.0 + jitter_pct / 100.0 * rng.uniform(-1.0, 1.0))
        amp = max(0.0, 1.0 + shimmer_pct / 100.0 * rng.uniform(-1.0, 1.0))
        cycle_len = max(2, round(period))
        t = np.arange(min(cycle_len, n - pos), dtype=np.float64)
        voice[pos : pos + t.size] = amp * np.sin(2.0 * np.pi * t / period)
        pos += cycle_len

    if breath_noise_level > 0:
        voice = voice + breath_noise_level * rng.standard_normal(n)

    if voiced_duty_cycle < 1.0:
        mask = np.zeros(n, dtype=np.float64)
        block = round(_VOICED_BLOCK_S * sample_rate)
        fade = max(1, round(_VOICED_FADE_S * sample_rate))
        ramp = 0.5 - 0.5 * np.cos(np.pi * np.arange(fade) / fade)
        for start in range(0, n, block):
            stop = min(start + round(voiced_duty_cycle * block), n)
            mask[start:stop] = 1.0
            mask[start : min(start + fade, stop)] = ramp[: max(0, stop - start)]
            if stop - fade > start:
                mask[max(start, stop - fade) : stop] = ramp[::-1][: stop - max(start, stop - fade)]
        voice = voice * mask

    peak = float(np.max(np.abs(voice)))
    if peak > 1.0:
        voice = voice / peak
    return AudioStream(sample_rate=sample_rate, samples=voice)


# ---------------------------------------------------------------------------
# WAV ingestion
# ---------------------------------------------------------------------------

_PCM = 1
_IEEE_FLOAT = 3


def load_wav(path: str) -> AudioStream:
    """Read a RIFF WAV file into a normalized mono stream.

    Supports PCM at 8/16/24/32 bits and 32-bit IEEE float, mono or stereo
    (stereo is averaged down to mono). Samples are normalized to [-1, 1] and
    the sample rate is taken from the header.

    Raises:
        FormatError: the header is malformed or the codec is unsupported;
            the message names the offending field.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 12:
        raise FormatError(f"file too short for a RIFF header ({len(data)} bytes)")
    if data[0:4] != b"RIFF":
        raise FormatError(f"bad RIFF magic: {data[0:4]!r}")
    if data[8:12] != b"WAVE":
        raise FormatError(f"bad WAVE id: {data[8:12]!r}")

    fmt = None
    payload = None
    offset = 12
    while offset + 8 <= len(data):
        chunk_id = data[offset : offset + 4]
        (chunk_len,) = struct.unpack_from("<I", data, offset + 4)
        body = data[offset + 8 : offset + 8 + chunk_len]
        if chunk_id == b"fmt ":
            if len(body) < 16:
                raise FormatError(f"fmt chunk truncated: {len(body)} bytes")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif chunk_id == b"data":
            if len(body) < chunk_len:
                raise FormatError(
                    f"data chunk truncated: header says {chunk_len}, file has {len(body)}"
                )
            payload = body
        offset += 8 + chunk_len + (chunk_len & 1)

    if fmt is None:
        raise FormatError("missing fmt chunk")
    if payload is None:
        raise FormatError("missing data chunk")
    audio_format, channels, sample_rate, _, _, bits = fmt
    if channels not in (1, 2):
        raise FormatError(f"unsupported channel count: {channels}")
    if sample_rate <= 0:
        raise FormatError(f"bad sample rate: {sample_rate}")

    if audio_format == _PCM and bits == 8:
        raw = np.frombuffer(payload, dtype=np.uint8).astype(np.float64)
        samples = (raw - 128.0) / 128.0
    elif audio_format == _PCM and bits == 16:
        samples = np.frombuffer(payload, dtype="<i2").astype(np.float64) / 32768.0
    elif audio_format == _PCM and bits == 24:
        raw = np.frombuffer(payload, dtype=np.uint8)
        if raw.size % 3:
            raise FormatError(f"24-bit data length {raw.size} not a multiple of 3")
        as32 = np.zeros(raw.size // 3, dtype="<i4")
        view = as32.view(np.uint8).reshape(-1, 4)
        view[:, 1:] = raw.reshape(-1, 3)
        samples = (as32 >> 8).astype(np.float64) / 8388608.0
    elif audio_format == _PCM and bits == 32:
        samples = np.frombuffer(payload, dtype="<i4").astype(np.float64) / 2147483648.0
    elif audio_format == _IEEE_FLOAT and bits == 32:
        samples = np.clip(np.frombuffer(payload, dtype="<f4").astype(np.float64), -1.0, 1.0)
    else:
        raise FormatError(f"unsupported format: code {audio_format} at {bits} bits")

    if channels == 2:
        if samples.size % 2:
            raise FormatError(f"stereo data length {samples.size} is odd")
        samples = samples.reshape(-1, 2).mean(axis=1)
    return AudioStream(sample_rate=sample_rate, samples=samples)


def write_wav(path: str, stream: AudioStream) -> None:
    """Write a stream as 16-bit PCM mono WAV (for corpus inspection and tests)."""
    # Same 1/32768 step the reader uses, so write-then-read is exact for
    # anything that already came out of load_wav.
    scaled = np.clip(np.round(stream.samples * 32768.0), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as wf:
        wf.setnchannels(1)
        wf.setsampwidth(2)
        wf.setframerate(stream.sample_rate)
        wf.writeframes(scaled.tobytes())


# ---------------------------------------------------------------------------
# input descriptors
# ---------------------------------------------------------------------------

def parse_source(descriptor: str) -> AudioStream:
    """Build a stream from a textual source descriptor.

    Accepted forms:
      "wav:PATH" or a bare path ending in .wav  -> load_wav
      "synth:key=value,..."                     -> synth_sine or synth_dysphonic

    Synth keys: midi (required), duration (s, default 2.0), sr, amplitude,
    jitter, shimmer, noise, duty, seed. Presence of any of jitter/shimmer/
    noise/duty/seed selects the dysphonic model, otherwise a clean sine.
    """
    if descriptor.startswith("wav:"):
        return load_wav(descriptor[4:])
    if not descriptor.startswith("synth:"):
        return load_wav(descriptor)

    kv: dict[str, float] = {}
    body = descriptor[len("synth:") :]
    for part in body.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ValueError(f"bad synth descriptor entry {part!r} in {descriptor!r}")
        key, value = part.split("=", 1)
        kv[key.strip()] = float(value)
    if "midi" not in kv:
        raise ValueError(f"synth descriptor needs midi=..., got {descriptor!r}")

    midi = kv.pop("midi")
    duration = kv.pop("duration", 2.0)
    sr = int(kv.pop("sr", DEFAULT_SAMPLE_RATE))
    dysphonic_keys = {"jitter", "shimmer", "noise", "duty", "seed"}
    if dysphonic_keys & kv.keys():
        return synth_dysphonic(
            base_midi=midi,
            duration_s=duration,
            sample_rate=sr,
            jitter_pct=kv.pop("jitter", 0.0),
            shimmer_pct=kv.pop("shimmer", 0.0),
            breath_noise_level=kv.pop("noise", 0.0),
            voiced_duty_cycle=kv.pop("duty", 1.0),
            seed=int(kv.pop("seed", 0)),
        )
    return synth_sine(midi, duration, sr, amplitude=kv.pop("amplitude", 0.8))
