"""Live engine and its wire boundary.

The engine pulls audio frames from the configured input, runs the detector
and pipeline, steps the game, and emits JSON wire messages: one "sample"
per frame, "snapshot" display states at 20 Hz or better, "event" for game
events, and "config" echoes whenever settings are announced or a control
is applied (or rejected). Every message carries the current session id and
a per-family monotone sequence number, so two clients of one run can check
they saw identical streams.

Therapist controls arrive as {"type": "control", "action": ..., "value":
...} and take effect at the next frame boundary. The engine runs frames
only while a session is active; start opens the input, stop or a terminal
game event persists the session log and closes it.

The FastAPI application wraps the engine in an asyncio driver plus a
broadcaster with bounded per-client queues: a slow client loses snapshot
messages first (counted, never samples); a client whose queue fills with
undroppable messages is disconnected rather than allowed to stall capture.
"""

from __future__ import annotations

import asyncio
import json
import logging
import math
import os
import time
import uuid
from collections import deque
from contextlib import asynccontextmanager
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from .audio import AudioFrame, frames, parse_source, synth_sine
from .detectors import AlgorithmId, detect
from .detectors.common import DEFAULT_CONFIG, DetectorConfig
from .game import (
    EventKind,
    GameEvent,
    GameState,
    LevelConfig,
    SessionLog,
    SessionStore,
    compute_summary,
    level_from_dict,
    level_to_dict,
    load_level_presets,
    spawn_level,
    step,
)
from .pipeline import (
    Pipeline,
    PipelineConfig,
    effective_critical,
    sample_to_wire,
)

__all__ = [
    "ServiceError",
    "EngineConfig",
    "PitchEngine",
    "Broadcaster",
    "ClientHandle",
    "run_engine",
    "open_frames",
    "list_devices",
    "measure_frame_budget",
    "create_app",
    "DEFAULT_STORE_PATH",
    "SNAPSHOT_INTERVAL_S",
]

log = logging.getLogger(__name__)

VALID_BUFFER_SIZES = (1024, 2048, 4096, 8192, 16384)
SNAPSHOT_INTERVAL_S = 0.05
DEFAULT_STORE_PATH = "sessions.jsonl"
DEFAULT_CLIENT_QUEUE = 4096

# Snapshot viewport: world units of obstacle field sent to clients.
VIEW_BEHIND = 10.0
VIEW_AHEAD = 120.0


class ServiceError(Exception):
    pass


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class EngineConfig:
    """Everything the live engine needs to run one patient setup."""

    algorithm: AlgorithmId = AlgorithmId.CLASSIC_AUTOCORRELATOR
    buffer_size: int = 4096
    input: str = "synth:midi=57,duration=10"
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    level: LevelConfig = None  # type: ignore[assignment]
    level_name: str = "easiest"
    detector: DetectorConfig = DEFAULT_CONFIG
    patient_alias: str = "anonymous"
    realtime: bool = False

    def __post_init__(self) -> None:
        if self.buffer_size not in VALID_BUFFER_SIZES:
            raise ValueError(
                f"buffer_size must be one of {VALID_BUFFER_SIZES}, "
                f"got {self.buffer_size}"
            )
        object.__setattr__(self, "algorithm", AlgorithmId(self.algorithm))
        if self.level is None:
            object.__setattr__(
                self, "level", load_level_presets()[self.level_name]
            )

    @staticmethod
    def from_dict(payload: dict) -> "EngineConfig":
        kwargs = dict(payload)
        if "pipeline" in kwargs and isinstance(kwargs["pipeline"], dict):
            kwargs["pipeline"] = PipelineConfig(**kwargs["pipeline"])
        level = kwargs.get("level")
        if isinstance(level, str):
            kwargs["level_name"] = level
            kwargs["level"] = load_level_presets()[level]
        elif isinstance(level, dict):
            kwargs["level"] = level_from_dict(level)
            kwargs.setdefault("level_name", "custom")
        return EngineConfig(**kwargs)

    @staticmethod
    def from_json_file(path: Union[str, Path]) -> "EngineConfig":
        with open(path, encoding="utf-8") as fh:
            return EngineConfig.from_dict(json.load(fh))


def list_devices() -> list[dict]:
    """Input descriptors the engine accepts on this machine."""
    devices = [
        {
            "descriptor": "wav:PATH",
            "kind": "file",
            "label": "WAV file replay",
        },
        {
            "descriptor": "synth:midi=57,duration=10",
            "kind": "synth",
            "label": "synthetic tone/voice generator",
        },
    ]
    try:
        import sounddevice  # type: ignore

        for idx, dev in enumerate(sounddevice.query_devices()):
            if dev.get("max_input_channels", 0) > 0:
                devices.append(
                    {
                        "descriptor": f"device:{dev['name']}",
                        "kind": "capture",
                        "label": f"input {idx}: {dev['name']}",
                    }
                )
    except Exception:
        pass
    return devices


def open_frames(descriptor: str, buffer_size: int) -> Iterator[AudioFrame]:
    """Turn an input descriptor into a frame iterator.

    Live capture needs the optional sounddevice package; without it, device
    descriptors fail at startup with the list of usable inputs.
    """
    if descriptor.startswith("device:"):
        return _open_device(descriptor[len("device:") :], buffer_size)
    try:
        stream = parse_source(descriptor)
    except Exception as exc:
        raise ServiceError(f"cannot open input {descriptor!r}: {exc}") from exc
    return iter(frames(stream, buffer_size))


def _open_device(name: str, buffer_size: int) -> Iterator[AudioFrame]:
    try:
        import sounddevice  # type: ignore
    except ImportError as exc:
        available = ", ".join(d["descriptor"] for d in list_devices())
        raise ServiceError(
            f"live capture from {name!r} needs the sounddevice package; "
            f"available inputs: {available}"
        ) from exc

    import numpy as np
    import queue as _queue

    # Bounded hand-off from the audio callback; on overflow the oldest
    # buffer is dropped and counted so capture never blocks.
    pending: _queue.Queue = _queue.Queue(maxsize=32)
    dropped = [0]

    def _callback(indata, frames_count, time_info, status):
        mono = np.mean(indata, axis=1) if indata.ndim > 1 else indata[:, 0]
        try:
            pending.put_nowait(mono.copy())
        except _queue.Full:
            try:
                pending.get_nowait()
                dropped[0] += 1
            except _queue.Empty:
                pass
            pending.put_nowait(mono.copy())

    def _generate() -> Iterator[AudioFrame]:
        sample_rate = 44100
        start_index = 0
        with sounddevice.InputStream(
            device=name or None,
            channels=1,
            samplerate=sample_rate,
            blocksize=buffer_size,
            callback=_callback,
        ):
            while True:
                block = pending.get()
                clipped = np.clip(block.astype(np.float64), -1.0, 1.0)
                yield AudioFrame(clipped, sample_rate, start_index)
                start_index += buffer_size

    return _generate()


class PitchEngine:
    """Single-owner state machine behind the wire protocol.

    All mutation happens through apply_control and process_frame, called by
    one driver at frame boundaries, so a live run is the same fold the
    scripted replay performs.
    """

    def __init__(self, cfg: EngineConfig, store: SessionStore) -> None:
        self.cfg = cfg
        self.store = store
        self.algorithm = cfg.algorithm
        self.buffer_size = cfg.buffer_size
        self.input_descriptor = cfg.input
        self.level = cfg.level
        self.level_name = cfg.level_name
        self.detector_cfg = cfg.detector
        # The level owns the base critical pitch; set_critical_mel is the
        # live override on top of it.
        self.pipeline = Pipeline(
            replace(cfg.pipeline, critical_mel=cfg.level.critical_mel)
        )
        self.presets = load_level_presets()

        self.session_id: Optional[str] = None
        self.game_state: Optional[GameState] = None
        self._alias = cfg.patient_alias
        self._started_at = ""
        self._threshold = 0.0
        self._samples: list = []
        self._events: list[GameEvent] = []
        self._seq = {"sample": 0, "snapshot": 0, "event": 0, "config": 0}

    # -- wire plumbing ---------------------------------------------------

    def _wire(self, family: str, payload: dict) -> dict:
        self._seq[family] += 1
        message = {
            "type": family,
            "seq": self._seq[family],
            "session_id": self.session_id,
        }
        message.update(payload)
        return message

    def config_payload(self) -> dict:
        return {
            "algorithm": str(self.algorithm),
            "buffer_size": self.buffer_size,
            "input": self.input_descriptor,
            "level_name": self.level_name,
            "level": level_to_dict(self.level),
            "pipeline": {
                "critical_mel": self.pipeline.cfg.critical_mel,
                "difficulty_divisor": self.pipeline.cfg.difficulty_divisor,
                "mel_ceiling": self.pipeline.cfg.mel_ceiling,
                "smoothing_window": self.pipeline.cfg.smoothing_window,
            },
            "effective_critical_mel": effective_critical(self.pipeline.cfg),
            "running": self.running,
        }

    def config_echo(self, applied: Optional[str] = None, error: Optional[str] = None) -> dict:
        payload = self.config_payload()
        payload["applied"] = applied
        payload["error"] = error
        return self._wire("config", payload)

    @property
    def running(self) -> bool:
        return self.game_state is not None

    # -- controls --------------------------------------------------------

    def apply_control(self, payload: dict) -> list[dict]:
        """Apply one control message; always answers with a config echo.

        Invalid values change nothing and come back with the reason in the
        echo's error field.
        """
        action = payload.get("action")
        value = payload.get("value")
        try:
            if action == "start":
                return self._start_session(value)
            if action == "stop":
                return self._stop_session()
            if action == "set_critical_mel":
                cfg = replace(self.pipeline.cfg, critical_mel=float(value))
                self.pipeline.reconfigure(cfg)
            elif action == "set_difficulty_divisor":
                cfg = replace(self.pipeline.cfg, difficulty_divisor=float(value))
                self.pipeline.reconfigure(cfg)
            elif action == "set_algorithm":
                self.algorithm = AlgorithmId(value)
            elif action == "set_level":
                return self._set_level(value)
            else:
                return [self.config_echo(error=f"unknown control action: {action!r}")]
        except (ValueError, TypeError) as exc:
            return [self.config_echo(error=str(exc))]
        return [self.config_echo(applied=action)]

    def _set_level(self, value) -> list[dict]:
        if self.running:
            return [self.config_echo(error="cannot change level during an active session")]
        if isinstance(value, str):
            preset = self.presets.get(value)
            if preset is None:
                return [
                    self.config_echo(
                        error=f"unknown level {value!r}; presets: {sorted(self.presets)}"
                    )
                ]
            self.level, self.level_name = preset, value
        elif isinstance(value, dict):
            self.level, self.level_name = level_from_dict(value), "custom"
        else:
            return [self.config_echo(error="set_level takes a preset name or a config object")]
        self.pipeline.reconfigure(
            replace(self.pipeline.cfg, critical_mel=self.level.critical_mel)
        )
        return [self.config_echo(applied="set_level")]

    def _start_session(self, value) -> list[dict]:
        if self.running:
            return [self.config_echo(error="session already active")]
        alias = self._alias
        if isinstance(value, dict) and value.get("patient_alias"):
            alias = str(value["patient_alias"])
        self.session_id = uuid.uuid4().hex
        self._alias = alias
        self._started_at = _utc_now()
        self._threshold = effective_critical(self.pipeline.cfg)
        self.pipeline = Pipeline(self.pipeline.cfg)  # fresh smoothing history
        self.game_state = spawn_level(self.level)
        self._samples = []
        self._events = []
        return [self.config_echo(applied="start")]

    def _stop_session(self) -> list[dict]:
        if not self.running:
            return [self.config_echo(error="no active session")]
        return self._fail_session("stopped by control", applied="stop")

    def abort_session(self, context: str) -> list[dict]:
        """Input loss or other external failure during a run."""
        if not self.running:
            return [self.config_echo(error=context)]
        return self._fail_session(context, applied="input_lost")

    def end_of_input(self) -> list[dict]:
        if not self.running:
            return []
        return self._fail_session("input ended before level completion", applied="input_ended")

    def _fail_session(self, context: str, applied: str) -> list[dict]:
        event = GameEvent(EventKind.LEVEL_FAILED, self.game_state.elapsed_s, context)
        self._events.append(event)
        messages = [self._wire("event", {"event": _event_payload(event)})]
        messages.extend(self._finish(applied))
        return messages

    def _finish(self, applied: str) -> list[dict]:
        log_entry = SessionLog(
            session_id=self.session_id,
            patient_alias=self._alias,
            started_at=self._started_at,
            level=self.level,
            effective_critical_mel=self._threshold,
            pitch_samples=list(self._samples),
            events=list(self._events),
            summary=compute_summary(self._samples, self._events, self._threshold),
        )
        self.store.persist(log_entry)
        self.game_state = None
        messages = [self.config_echo(applied=applied)]
        self.session_id = None
        self._samples = []
        self._events = []
        return messages

    # -- frame processing --------------------------------------------------

    def process_frame(self, frame: AudioFrame) -> list[dict]:
        """Detect, threshold, step the game, and emit this frame's messages."""
        result = detect(self.algorithm, frame, self.detector_cfg)
        signal = self.pipeline.process(result, frame)
        messages = [
            self._wire(
                "sample",
                {
                    "algorithm": str(self.algorithm),
                    "above_critical": signal.above_critical,
                    "effective_critical_mel": signal.effective_critical_mel,
                    "sample": sample_to_wire(signal.source),
                },
            )
        ]
        if not self.running:
            return messages

        self._samples.append(signal.source)
        dt = signal.source.duration_ms / 1000.0
        before = self.game_state
        after, events = step(before, signal, dt)
        self.game_state = after
        self._events.extend(events)
        for event in events:
            messages.append(self._wire("event", {"event": _event_payload(event)}))

        ticks = max(1, math.ceil(dt / SNAPSHOT_INTERVAL_S - 1e-9))
        for i in range(1, ticks + 1):
            messages.append(self._snapshot(before, after, i / ticks))

        if any(e.kind is EventKind.LEVEL_COMPLETE for e in events):
            messages.extend(self._finish("session_complete"))
        return messages

    def _snapshot(self, before: GameState, after: GameState, frac: float) -> dict:
        avatar_y = before.avatar_y + (after.avatar_y - before.avatar_y) * frac
        scroll_x = before.scroll_x + (after.scroll_x - before.scroll_x) * frac
        elapsed = before.elapsed_s + (after.elapsed_s - before.elapsed_s) * frac
        visible = [
            {"x": o.x, "y": o.y, "radius": o.radius, "spent": o.spent}
            for o in after.obstacles
            if scroll_x - VIEW_BEHIND <= o.x <= scroll_x + VIEW_AHEAD
        ]
        return self._wire(
            "snapshot",
            {
                "state": {
                    "avatar_y": avatar_y,
                    "scroll_x": scroll_x,
                    "elapsed_s": elapsed,
                    "score": after.score,
                    "collisions": after.collisions,
                    "obstacles": visible,
                }
            },
        )


def _event_payload(event: GameEvent) -> dict:
    return {"kind": str(event.kind), "at_s": event.at_s, "context": event.context}


def run_engine(
    cfg: EngineConfig,
    store_path: Union[str, Path],
    *,
    controls_at: Optional[dict[int, list[dict]]] = None,
) -> Iterator[dict]:
    """Headless single-session run: start, stream every message, finish.

    controls_at maps a frame index to control payloads applied at that
    frame's boundary, which is how tests retune the therapist knobs
    mid-session deterministically.
    """
    engine = PitchEngine(cfg, SessionStore(store_path))
    yield from engine.apply_control({"action": "start"})
    source = open_frames(cfg.input, cfg.buffer_size)
    for index, frame in enumerate(source):
        for payload in (controls_at or {}).get(index, ()):
            yield from engine.apply_control(payload)
        yield from engine.process_frame(frame)
        if not engine.running:
            return
    yield from engine.end_of_input()


def measure_frame_budget(cfg: EngineConfig, iterations: int = 10) -> dict:
    """Wall-clock one detect+pipeline+step cycle against the frame duration."""
    sample_rate = 44100
    stream = synth_sine(69, cfg.buffer_size / sample_rate + 0.01, sample_rate, amplitude=0.8)
    frame = AudioFrame(stream.samples[: cfg.buffer_size], sample_rate, 0)
    floor = 2 * sample_rate / cfg.buffer_size
    detector_cfg = cfg.detector
    if detector_cfg.min_freq_hz < floor:
        detector_cfg = replace(detector_cfg, min_freq_hz=floor)
    pipeline = Pipeline(cfg.pipeline)
    state = spawn_level(cfg.level)
    frame_s = cfg.buffer_size / sample_rate
    start = time.perf_counter()
    for _ in range(iterations):
        result = detect(cfg.algorithm, frame, detector_cfg)
        signal = pipeline.process(result, frame)
        step(state, signal, frame_s)
    mean_ms = (time.perf_counter() - start) / iterations * 1000.0
    frame_ms = frame_s * 1000.0
    return {
        "algorithm": str(cfg.algorithm),
        "buffer_size": cfg.buffer_size,
        "frame_ms": frame_ms,
        "cycle_ms": mean_ms,
        "within_budget": mean_ms <= frame_ms,
    }


class ClientHandle:
    """Bounded outbound queue for one connected client.

    When full, the oldest snapshot in the queue is dropped (and counted);
    if nothing is droppable the client is closed instead of blocking the
    engine.
    """

    def __init__(self, maxlen: int = DEFAULT_CLIENT_QUEUE) -> None:
        self.maxlen = maxlen
        self.queue: deque = deque()
        self.dropped_snapshots = 0
        self.closed = False
        self._wakeup = asyncio.Event()

    def push(self, message: dict) -> None:
        if self.closed:
            return
        if len(self.queue) >= self.maxlen:
            for i, queued in enumerate(self.queue):
                if queued["type"] == "snapshot":
                    del self.queue[i]
                    self.dropped_snapshots += 1
                    break
            else:
                self.closed = True
                self._wakeup.set()
                return
        self.queue.append(message)
        self._wakeup.set()

    def close(self) -> None:
        self.closed = True
        self._wakeup.set()

    async def pop(self) -> Optional[dict]:
        while not self.queue:
            if self.closed:
                return None
            self._wakeup.clear()
            await self._wakeup.wait()
        return self.queue.popleft()


class Broadcaster:
    def __init__(self, maxlen: int = DEFAULT_CLIENT_QUEUE) -> None:
        self.maxlen = maxlen
        self.clients: list[ClientHandle] = []

    def register(self) -> ClientHandle:
        handle = ClientHandle(self.maxlen)
        self.clients.append(handle)
        return handle

    def unregister(self, handle: ClientHandle) -> None:
        handle.close()
        if handle in self.clients:
            self.clients.remove(handle)

    def publish(self, message: dict) -> None:
        for handle in list(self.clients):
            handle.push(message)
            if handle.closed:
                self.clients.remove(handle)

    def publish_all(self, messages: Sequence[dict]) -> None:
        for message in messages:
            self.publish(message)


class EngineDriver:
    """Owns the engine inside the server event loop.

    Controls land in an inbox and are applied only between frames; the
    input is opened when a session starts and dropped when it ends, so an
    idle server consumes nothing.
    """

    def __init__(
        self, engine: PitchEngine, broadcaster: Broadcaster, *, realtime: bool
    ) -> None:
        self.engine = engine
        self.broadcaster = broadcaster
        self.realtime = realtime
        self.inbox: asyncio.Queue = asyncio.Queue()
        self.budget: Optional[dict] = None
        self._task: Optional[asyncio.Task] = None

    async def submit(self, payload: dict) -> None:
        await self.inbox.put(payload)

    def start(self) -> None:
        self._task = asyncio.get_running_loop().create_task(self.run())

    async def stop(self) -> None:
        if self._task is not None:
            self._task.cancel()
            try:
                await self._task
            except asyncio.CancelledError:
                pass

    async def run(self) -> None:
        self.budget = measure_frame_budget(self.engine.cfg)
        log.info(
            "frame budget: %s cycle %.2f ms vs frame %.2f ms (%s)",
            self.budget["algorithm"],
            self.budget["cycle_ms"],
            self.budget["frame_ms"],
            "ok" if self.budget["within_budget"] else "over budget",
        )
        source: Optional[Iterator[AudioFrame]] = None
        frame_s = self.engine.buffer_size / 44100
        while True:
            while not self.inbox.empty():
                payload = self.inbox.get_nowait()
                self.broadcaster.publish_all(self.engine.apply_control(payload))

            if self.engine.running and source is None:
                try:
                    source = open_frames(
                        self.engine.input_descriptor, self.engine.buffer_size
                    )
                except ServiceError as exc:
                    self.broadcaster.publish_all(
                        self.engine.abort_session(str(exc))
                    )
                    continue

            if not self.engine.running:
                source = None
                try:
                    payload = await asyncio.wait_for(self.inbox.get(), timeout=0.05)
                except asyncio.TimeoutError:
                    continue
                self.broadcaster.publish_all(self.engine.apply_control(payload))
                continue

            try:
                frame = next(source)
            except StopIteration:
                self.broadcaster.publish_all(self.engine.end_of_input())
                source = None
                continue
            except Exception as exc:  # device loss mid-stream
                self.broadcaster.publish_all(
                    self.engine.abort_session(f"input lost: {exc}")
                )
                source = None
                continue

            self.broadcaster.publish_all(self.engine.process_frame(frame))
            if not self.engine.running:
                source = None
            await asyncio.sleep(frame_s if self.realtime else 0)


def create_app(
    cfg: Optional[EngineConfig] = None,
    store_path: Optional[Union[str, Path]] = None,
    ui_dir: Optional[Union[str, Path]] = None,
):
    """Build the FastAPI application serving /stream and the REST views.

    With ui_dir (or PITCHGATE_UI) set, the directory is served as static
    assets at the root, behind the API routes, so one listener carries
    both the browser client and the protocol it talks to.
    """
    engine_cfg = cfg or EngineConfig()
    resolved_store = Path(
        store_path or os.environ.get("PITCHGATE_STORE") or DEFAULT_STORE_PATH
    )
    store = SessionStore(resolved_store)
    engine = PitchEngine(engine_cfg, store)
    broadcaster = Broadcaster()
    driver = EngineDriver(engine, broadcaster, realtime=engine_cfg.realtime)

    @asynccontextmanager
    async def _lifespan(_app):
        driver.start()
        try:
            yield
        finally:
            await driver.stop()

    app = FastAPI(title="pitchgate", version="0.1.0", lifespan=_lifespan)
    app.state.engine = engine
    app.state.driver = driver
    app.state.broadcaster = broadcaster
    app.state.store = store

    @app.websocket("/stream")
    async def stream(socket: WebSocket) -> None:
        await socket.accept()
        handle = broadcaster.register()
        # Announce current settings to everyone so all clients stay on
        # identical streams, new joiners included.
        broadcaster.publish(engine.config_echo(applied="client_connected"))

        async def _pump() -> None:
            while True:
                message = await handle.pop()
                if message is None:
                    break
                await socket.send_json(message)

        pump_task = asyncio.get_running_loop().create_task(_pump())
        try:
            while True:
                payload = await socket.receive_json()
                if payload.get("type") == "control":
                    await driver.submit(payload)
                else:
                    handle.push(
                        engine.config_echo(
                            error=f"unsupported message type: {payload.get('type')!r}"
                        )
                    )
        except WebSocketDisconnect:
            pass
        finally:
            pump_task.cancel()
            broadcaster.unregister(handle)

    @app.get("/sessions")
    def sessions_index() -> list[dict]:
        return [
            {
                "session_id": entry.session_id,
                "patient_alias": entry.patient_alias,
                "started_at": entry.started_at,
                "summary": entry.summary,
            }
            for entry in store.sessions()
        ]

    @app.get("/sessions/{session_id}")
    def session_detail(session_id: str) -> dict:
        from .game import log_to_dict

        try:
            return log_to_dict(store.get(session_id))
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")

    @app.get("/config")
    def config_view() -> dict:
        return {"config": engine.config_payload(), "frame_budget": driver.budget}

    @app.get("/devices")
    def devices_view() -> list[dict]:
        return list_devices()

    resolved_ui = ui_dir or os.environ.get("PITCHGATE_UI")
    if resolved_ui:
        ui_path = Path(resolved_ui)
        if not ui_path.is_dir():
            raise ServiceError(f"ui directory not found: {ui_path}")
        # Mounted last so the API routes above keep precedence.
        app.mount("/", StaticFiles(directory=ui_path, html=True), name="ui")

    return app
