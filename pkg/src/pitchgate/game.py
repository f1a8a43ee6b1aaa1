"""Pitch-controlled avoidance game and the persisted session record.

The avatar rises while the control signal is above the critical pitch and
falls otherwise; the obstacle field scrolls past at constant speed. Every
quantity evolves through :func:`step` in a fixed order, so a level run is a
pure fold over (config, signal sequence) and replays bit-identically. The
session store keeps one JSON document per run for long-term review.

Obstacle heights come from a PCG64 generator seeded by (level seed,
obstacle position), which makes a denser field a strict superset of a
sparser one when the spacing divides evenly.
"""

from __future__ import annotations

import json
import math
import os
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .pipeline import ControlSignal, PitchSample, sample_from_wire, sample_to_wire

__all__ = [
    "WORLD_HEIGHT",
    "RISE_RATE",
    "FALL_RATE",
    "AVATAR_RADIUS",
    "AVATAR_START_Y",
    "MIN_OBSTACLE_RADIUS",
    "LevelConfig",
    "Obstacle",
    "GameState",
    "EventKind",
    "GameEvent",
    "SessionLog",
    "SessionIntegrityError",
    "SessionStore",
    "spawn_level",
    "step",
    "run_scripted",
    "persist_session",
    "compute_summary",
    "load_level_presets",
    "level_to_dict",
    "level_from_dict",
    "log_to_dict",
    "log_from_dict",
]

WORLD_HEIGHT = 100.0
RISE_RATE = 40.0
FALL_RATE = 30.0
AVATAR_RADIUS = 2.0
AVATAR_START_Y = 50.0
MIN_OBSTACLE_RADIUS = 1.0

# Obstacles stay inside the middle band so floor and ceiling are always safe.
_OBSTACLE_BAND_LO = 0.2
_OBSTACLE_BAND_HI = 0.8

# Proportional mode: velocity per mel above/below the critical pitch.
PROPORTIONAL_GAIN = 0.4


@dataclass(frozen=True)
class LevelConfig:
    """Therapist-tunable level parameters.

    obstacle_spacing is the world-unit gap between obstacle centers; the
    always-passable invariant requires it to exceed one obstacle diameter.
    proportional_control switches the avatar from binary rise/fall to
    velocity proportional to (mel - critical).
    """

    critical_mel: float
    obstacle_spacing: float
    obstacle_radius: float
    scroll_speed: float
    duration_s: float
    rng_seed: int
    proportional_control: bool = False

    def __post_init__(self) -> None:
        # Presets arrive from JSON with integer literals; normalize so
        # serialized forms are identical however the config was built.
        for name in (
            "critical_mel",
            "obstacle_spacing",
            "obstacle_radius",
            "scroll_speed",
            "duration_s",
        ):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "rng_seed", int(self.rng_seed))
        if not self.critical_mel > 0:
            raise ValueError(f"critical_mel must be > 0, got {self.critical_mel}")
        if self.obstacle_radius < MIN_OBSTACLE_RADIUS:
            raise ValueError(
                f"obstacle_radius must be >= {MIN_OBSTACLE_RADIUS}, "
                f"got {self.obstacle_radius}"
            )
        if not self.obstacle_spacing > 2 * self.obstacle_radius:
            raise ValueError(
                f"obstacle_spacing {self.obstacle_spacing} must exceed one "
                f"obstacle diameter {2 * self.obstacle_radius}"
            )
        if not self.scroll_speed > 0:
            raise ValueError(f"scroll_speed must be > 0, got {self.scroll_speed}")
        if not self.duration_s > 0:
            raise ValueError(f"duration_s must be > 0, got {self.duration_s}")


@dataclass(frozen=True)
class Obstacle:
    x: float
    y: float
    radius: float
    spent: bool = False


@dataclass(frozen=True)
class GameState:
    avatar_y: float
    avatar_vy: float
    scroll_x: float
    obstacles: tuple[Obstacle, ...]
    score: int
    collisions: int
    elapsed_s: float
    level: LevelConfig


class EventKind(str, Enum):
    OBSTACLE_CLEARED = "ObstacleCleared"
    COLLISION = "Collision"
    LEVEL_COMPLETE = "LevelComplete"
    LEVEL_FAILED = "LevelFailed"

    def __str__(self) -> str:  # keep wire/file values free of the class name
        return self.value


@dataclass(frozen=True)
class GameEvent:
    kind: EventKind
    at_s: float
    context: str


def _obstacle_height(seed: int, x: float) -> float:
    rng = np.random.default_rng([seed, round(x * 1024)])
    lo = _OBSTACLE_BAND_LO * WORLD_HEIGHT
    hi = _OBSTACLE_BAND_HI * WORLD_HEIGHT
    return float(rng.uniform(lo, hi))


def spawn_level(cfg: LevelConfig) -> GameState:
    """Lay out the obstacle field and place the avatar at mid-height."""
    count = int(cfg.duration_s * cfg.scroll_speed / cfg.obstacle_spacing + 1e-9)
    obstacles = []
    for k in range(1, count + 1):
        x = k * cfg.obstacle_spacing
        obstacles.append(
            Obstacle(x=x, y=_obstacle_height(cfg.rng_seed, x), radius=cfg.obstacle_radius)
        )
    return GameState(
        avatar_y=AVATAR_START_Y,
        avatar_vy=0.0,
        scroll_x=0.0,
        obstacles=tuple(obstacles),
        score=0,
        collisions=0,
        elapsed_s=0.0,
        level=cfg,
    )


def _velocity(signal: ControlSignal, cfg: LevelConfig) -> float:
    if not cfg.proportional_control:
        return RISE_RATE if signal.above_critical else -FALL_RATE
    if not signal.source.pitched:
        return -FALL_RATE
    delta = signal.source.mel - signal.effective_critical_mel
    return min(max(delta * PROPORTIONAL_GAIN, -FALL_RATE), RISE_RATE)


def _overlaps(avatar_x: float, avatar_y: float, obs: Obstacle) -> bool:
    reach = AVATAR_RADIUS + obs.radius
    return math.hypot(obs.x - avatar_x, obs.y - avatar_y) < reach


def step(
    state: GameState, signal: ControlSignal, dt: float
) -> tuple[GameState, list[GameEvent]]:
    """Advance one frame: move, scroll, then resolve obstacle outcomes.

    Each obstacle resolves exactly once, as a Collision on first overlap or
    as ObstacleCleared after passing fully behind the avatar. When the level
    duration is reached, obstacles the avatar has reached but not yet passed
    resolve by the final geometry, and LevelComplete closes the run. A
    finished level no longer changes state.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    cfg = state.level
    if state.elapsed_s >= cfg.duration_s:
        return state, []

    vy = _velocity(signal, cfg)
    avatar_y = min(max(state.avatar_y + vy * dt, 0.0), WORLD_HEIGHT)
    scroll_x = state.scroll_x + cfg.scroll_speed * dt
    elapsed = state.elapsed_s + dt

    obstacles = list(state.obstacles)
    events: list[GameEvent] = []
    collisions = state.collisions
    score = state.score

    for i, obs in enumerate(obstacles):
        if obs.spent:
            continue
        if _overlaps(scroll_x, avatar_y, obs):
            obstacles[i] = replace(obs, spent=True)
            collisions += 1
            events.append(
                GameEvent(EventKind.COLLISION, elapsed, f"obstacle x={obs.x:g}")
            )

    for i, obs in enumerate(obstacles):
        if obs.spent:
            continue
        if obs.x + obs.radius < scroll_x - AVATAR_RADIUS:
            obstacles[i] = replace(obs, spent=True)
            score += 1
            events.append(
                GameEvent(EventKind.OBSTACLE_CLEARED, elapsed, f"obstacle x={obs.x:g}")
            )

    if elapsed >= cfg.duration_s:
        # Unspent obstacles the scroll has reached cannot be overlapping
        # (the collision pass above ran on the same geometry), so they clear.
        for i, obs in enumerate(obstacles):
            if obs.spent or obs.x > scroll_x:
                continue
            obstacles[i] = replace(obs, spent=True)
            score += 1
            events.append(
                GameEvent(
                    EventKind.OBSTACLE_CLEARED,
                    elapsed,
                    f"obstacle x={obs.x:g} resolved at level end",
                )
            )
        events.append(
            GameEvent(
                EventKind.LEVEL_COMPLETE,
                elapsed,
                f"score={score} collisions={collisions}",
            )
        )

    next_state = GameState(
        avatar_y=avatar_y,
        avatar_vy=vy,
        scroll_x=scroll_x,
        obstacles=tuple(obstacles),
        score=score,
        collisions=collisions,
        elapsed_s=elapsed,
        level=cfg,
    )
    return next_state, events


class SessionIntegrityError(Exception):
    """A stored session fails verification against its raw lists."""


@dataclass
class SessionLog:
    """One complete treatment run: inputs, events, and the derived summary.

    effective_critical_mel records the threshold in force for the session;
    the summary is always recomputable from the sample and event lists plus
    that value, and both write and read verify it.
    """

    session_id: str
    patient_alias: str
    started_at: str
    level: LevelConfig
    effective_critical_mel: float
    pitch_samples: list[PitchSample]
    events: list[GameEvent]
    summary: dict = field(default_factory=dict)


def compute_summary(
    samples: Sequence[PitchSample],
    events: Sequence[GameEvent],
    effective_critical_mel: float,
) -> dict:
    pitched = [s for s in samples if s.pitched]
    return {
        "frames": len(samples),
        "pitched_frames": len(pitched),
        "above_critical_frames": sum(
            1 for s in pitched if s.mel >= effective_critical_mel
        ),
        "max_mel": max((s.mel for s in pitched), default=None),
        "score": sum(1 for e in events if e.kind is EventKind.OBSTACLE_CLEARED),
        "collisions": sum(1 for e in events if e.kind is EventKind.COLLISION),
    }


def _verify(log: SessionLog) -> None:
    expected = compute_summary(
        log.pitch_samples, log.events, log.effective_critical_mel
    )
    if log.summary != expected:
        raise SessionIntegrityError(
            f"session {log.session_id}: stored summary {log.summary} "
            f"does not match recomputed {expected}"
        )


def run_scripted(
    level: LevelConfig,
    signals: Sequence[ControlSignal],
    *,
    patient_alias: str = "anonymous",
    session_id: Optional[str] = None,
    started_at: Optional[str] = None,
) -> SessionLog:
    """Replay a signal sequence through a fresh level and log the run.

    Each signal advances the clock by its sample's duration. If the signals
    run out before the level duration, the run is logged as LevelFailed.
    """
    state = spawn_level(level)
    events: list[GameEvent] = []
    samples: list[PitchSample] = []
    completed = False
    for signal in signals:
        samples.append(signal.source)
        state, new_events = step(state, signal, signal.source.duration_ms / 1000.0)
        events.extend(new_events)
        if any(e.kind is EventKind.LEVEL_COMPLETE for e in new_events):
            completed = True
            break
    if not completed:
        events.append(
            GameEvent(
                EventKind.LEVEL_FAILED,
                state.elapsed_s,
                f"signal stream ended after {len(samples)} frames",
            )
        )
    effective = signals[0].effective_critical_mel if signals else level.critical_mel
    log = SessionLog(
        session_id=session_id or uuid.uuid4().hex,
        patient_alias=patient_alias,
        started_at=started_at or datetime.now(timezone.utc).isoformat(),
        level=level,
        effective_critical_mel=effective,
        pitch_samples=samples,
        events=events,
        summary=compute_summary(samples, events, effective),
    )
    return log


def level_to_dict(cfg: LevelConfig) -> dict:
    return {
        "critical_mel": cfg.critical_mel,
        "obstacle_spacing": cfg.obstacle_spacing,
        "obstacle_radius": cfg.obstacle_radius,
        "scroll_speed": cfg.scroll_speed,
        "duration_s": cfg.duration_s,
        "rng_seed": cfg.rng_seed,
        "proportional_control": cfg.proportional_control,
    }


def level_from_dict(payload: dict) -> LevelConfig:
    return LevelConfig(**payload)


def log_to_dict(log: SessionLog) -> dict:
    return {
        "session_id": log.session_id,
        "patient_alias": log.patient_alias,
        "started_at": log.started_at,
        "level": level_to_dict(log.level),
        "effective_critical_mel": log.effective_critical_mel,
        "pitch_samples": [sample_to_wire(s) for s in log.pitch_samples],
        "events": [
            {"kind": str(e.kind), "at_s": e.at_s, "context": e.context}
            for e in log.events
        ],
        "summary": log.summary,
    }


def log_from_dict(payload: dict) -> SessionLog:
    return SessionLog(
        session_id=payload["session_id"],
        patient_alias=payload["patient_alias"],
        started_at=payload["started_at"],
        level=level_from_dict(payload["level"]),
        effective_critical_mel=payload["effective_critical_mel"],
        pitch_samples=[sample_from_wire(s) for s in payload["pitch_samples"]],
        events=[
            GameEvent(EventKind(e["kind"]), e["at_s"], e["context"])
            for e in payload["events"]
        ],
        summary=payload["summary"],
    )


class SessionStore:
    """Append-only JSON-lines session archive, one SessionLog per line.

    Every write and read verifies the summary against the raw lists, so
    tampering or truncation surfaces as SessionIntegrityError.
    """

    def __init__(self, path: Union[str, Path]) -> None:
        self.path = Path(path)

    def persist(self, log: SessionLog) -> str:
        _verify(log)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = json.dumps(log_to_dict(log), separators=(",", ":"))
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        return log.session_id

    def _iter_logs(self) -> Iterable[SessionLog]:
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    payload = json.loads(line)
                    log = log_from_dict(payload)
                except (ValueError, KeyError, TypeError) as exc:
                    raise SessionIntegrityError(
                        f"{self.path}:{lineno}: unreadable session record: {exc}"
                    ) from exc
                _verify(log)
                yield log

    def sessions(self) -> list[SessionLog]:
        return list(self._iter_logs())

    def ids(self) -> list[str]:
        return [log.session_id for log in self._iter_logs()]

    def get(self, session_id: str) -> SessionLog:
        for log in self._iter_logs():
            if log.session_id == session_id:
                return log
        raise KeyError(session_id)


def persist_session(log: SessionLog, store_path: Union[str, Path]) -> str:
    return SessionStore(store_path).persist(log)


def load_level_presets() -> dict[str, LevelConfig]:
    """Named difficulty ladder shipped with the package."""
    raw = resources.files("pitchgate").joinpath("data/levels.json").read_text()
    payload = json.loads(raw)
    return {name: level_from_dict(cfg) for name, cfg in payload.items()}
