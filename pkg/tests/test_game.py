"""Game layer: deterministic physics, scoring, session records, the store."""

import json
import math
from pathlib import Path

import pytest

from pitchgate.audio import freq_from_mel, midi_from_freq, note_name
from pitchgate.game import (
    AVATAR_RADIUS,
    AVATAR_START_Y,
    FALL_RATE,
    RISE_RATE,
    WORLD_HEIGHT,
    EventKind,
    GameEvent,
    LevelConfig,
    SessionIntegrityError,
    SessionStore,
    compute_summary,
    load_level_presets,
    level_from_dict,
    level_to_dict,
    log_from_dict,
    log_to_dict,
    run_scripted,
    spawn_level,
    step,
)
from pitchgate.pipeline import ControlSignal, PitchSample

GOLDEN = Path(__file__).parent / "golden"

FRAME_MS = 100.0  # script steps in tidy tenths of a second


def make_signal(mel: float | None, threshold: float = 200.0,
                index: int = 0, duration: float = FRAME_MS) -> ControlSignal:
    if mel is None:
        sample = PitchSample(
            frequency_hz=None, mel=None, note_name=None, midi_number=None,
            amplitude_rms=0.05, sample_index=index,
            duration_ms=duration, pitched=False,
        )
    else:
        freq = freq_from_mel(mel)
        midi = midi_from_freq(freq)
        sample = PitchSample(
            frequency_hz=freq, mel=mel, note_name=note_name(midi),
            midi_number=midi, amplitude_rms=0.2, sample_index=index,
            duration_ms=duration, pitched=True,
        )
    above = mel is not None and mel >= threshold
    return ControlSignal(above_critical=above,
                         effective_critical_mel=threshold, source=sample)


def small_level(**overrides) -> LevelConfig:
    base = dict(critical_mel=200.0, obstacle_spacing=20.0, obstacle_radius=3.0,
                scroll_speed=20.0, duration_s=5.0, rng_seed=42)
    base.update(overrides)
    return LevelConfig(**base)


# -- level configuration -------------------------------------------------------


def test_level_config_validation():
    with pytest.raises(ValueError):
        small_level(critical_mel=0.0)
    with pytest.raises(ValueError):
        small_level(obstacle_radius=0.5)  # below the minimum radius
    with pytest.raises(ValueError):
        small_level(obstacle_spacing=6.0, obstacle_radius=3.0)  # not passable
    with pytest.raises(ValueError):
        small_level(scroll_speed=0.0)
    with pytest.raises(ValueError):
        small_level(duration_s=-1.0)


def test_level_config_normalizes_numeric_types():
    cfg = LevelConfig(critical_mel=200, obstacle_spacing=20, obstacle_radius=3,
                      scroll_speed=20, duration_s=5, rng_seed=42.0)
    assert isinstance(cfg.critical_mel, float)
    assert isinstance(cfg.rng_seed, int)
    assert cfg == small_level()


def test_level_dict_round_trip():
    cfg = small_level(proportional_control=True)
    assert level_from_dict(level_to_dict(cfg)) == cfg


# -- spawning -------------------------------------------------------------------


def test_spawn_count_and_positions():
    # scroll covers duration * speed = 100 world units at spacing 10: ten obstacles
    cfg = small_level(obstacle_spacing=10.0, scroll_speed=20.0, duration_s=5.0)
    state = spawn_level(cfg)
    assert len(state.obstacles) == 10
    assert [o.x for o in state.obstacles] == [10.0 * k for k in range(1, 11)]
    assert state.avatar_y == AVATAR_START_Y
    assert state.scroll_x == 0.0
    assert state.score == 0 and state.collisions == 0


def test_spawn_is_deterministic():
    cfg = small_level()
    assert spawn_level(cfg) == spawn_level(cfg)


def test_spawn_heights_stay_inside_band():
    cfg = small_level(obstacle_spacing=7.0, duration_s=60.0, rng_seed=7)
    for obs in spawn_level(cfg).obstacles:
        assert 20.0 <= obs.y <= 80.0


def test_spawn_heights_keyed_by_position_not_order():
    # halving the spacing keeps every existing obstacle at the same height
    sparse = spawn_level(small_level(obstacle_spacing=20.0))
    dense = spawn_level(small_level(obstacle_spacing=10.0))
    dense_by_x = {o.x: o.y for o in dense.obstacles}
    for obs in sparse.obstacles:
        assert dense_by_x[obs.x] == obs.y
    assert len(dense.obstacles) == 2 * len(sparse.obstacles)


# -- physics ----------------------------------------------------------------------


def test_step_rises_above_critical_and_falls_below():
    state = spawn_level(small_level())
    up, _ = step(state, make_signal(300.0), 0.1)
    assert up.avatar_y == pytest.approx(AVATAR_START_Y + RISE_RATE * 0.1)
    down, _ = step(state, make_signal(100.0), 0.1)
    assert down.avatar_y == pytest.approx(AVATAR_START_Y - FALL_RATE * 0.1)
    silent, _ = step(state, make_signal(None), 0.1)
    assert silent.avatar_y == down.avatar_y


def test_avatar_saturates_at_world_bounds():
    state = spawn_level(small_level(duration_s=1000.0, obstacle_spacing=1000.0,
                                    scroll_speed=1.0))
    for _ in range(50):
        state, _ = step(state, make_signal(300.0), 0.1)
    assert state.avatar_y == WORLD_HEIGHT
    for _ in range(100):
        state, _ = step(state, make_signal(100.0), 0.1)
    assert state.avatar_y == 0.0


def test_step_rejects_nonpositive_dt():
    state = spawn_level(small_level())
    with pytest.raises(ValueError):
        step(state, make_signal(300.0), 0.0)
    with pytest.raises(ValueError):
        step(state, make_signal(300.0), -0.1)


def test_step_on_finished_level_is_inert():
    state = spawn_level(small_level(duration_s=0.2))
    state, _ = step(state, make_signal(300.0), 0.25)
    assert state.elapsed_s >= 0.2
    frozen, events = step(state, make_signal(100.0), 0.1)
    assert frozen is state
    assert events == []


def test_proportional_mode_velocity():
    cfg = small_level(proportional_control=True)
    state = spawn_level(cfg)
    # 50 mel above critical at gain 0.4 -> +20/s
    up, _ = step(state, make_signal(250.0), 0.1)
    assert up.avatar_vy == pytest.approx(50.0 * 0.4)
    # far above critical clamps to the binary rise rate
    fast, _ = step(state, make_signal(400.0), 0.1)
    assert fast.avatar_vy == RISE_RATE
    # far below clamps to the fall rate; silence falls at the fall rate
    slow, _ = step(state, make_signal(50.0), 0.1)
    assert slow.avatar_vy == -FALL_RATE
    silent, _ = step(state, make_signal(None), 0.1)
    assert silent.avatar_vy == -FALL_RATE


# -- obstacle resolution ------------------------------------------------------------


def run_to_completion(level, mel):
    state = spawn_level(level)
    events = []
    for _ in range(10000):
        state, new = step(state, make_signal(mel), 0.05)
        events.extend(new)
        if any(e.kind is EventKind.LEVEL_COMPLETE for e in new):
            return state, events
    raise AssertionError("level never completed")


def test_every_obstacle_resolves_exactly_once():
    level = small_level()
    state, events = run_to_completion(level, 100.0)  # hug the floor
    encountered = len(spawn_level(level).obstacles)
    assert state.score + state.collisions == encountered
    assert all(o.spent for o in state.obstacles)
    cleared = sum(1 for e in events if e.kind is EventKind.OBSTACLE_CLEARED)
    hit = sum(1 for e in events if e.kind is EventKind.COLLISION)
    assert (cleared, hit) == (state.score, state.collisions)


def test_floor_hugging_clears_mid_band_obstacles():
    # obstacles never spawn below y=20, the avatar at y=0 reaches up to 2+r
    state, _ = run_to_completion(small_level(), 100.0)
    assert state.collisions == 0
    assert state.score == len(state.obstacles)


def test_collision_when_avatar_holds_obstacle_height():
    # pin the avatar at an obstacle's height and scroll into it
    level = small_level(obstacle_spacing=30.0, duration_s=3.0)
    target = spawn_level(level).obstacles[0]
    state = spawn_level(level)
    collisions = []
    for _ in range(200):
        mel = 300.0 if state.avatar_y < target.y else 100.0
        state, new = step(state, make_signal(mel), 0.02)
        collisions.extend(e for e in new if e.kind is EventKind.COLLISION)
        if state.elapsed_s >= level.duration_s:
            break
    assert any(f"x={target.x:g}" in e.context for e in collisions)


def test_monotone_difficulty_under_spacing_halving():
    # denser field with identical heights at shared positions can only add hits
    flight = [300.0] * 20 + [100.0] * 30 + [300.0] * 25 + [100.0] * 25
    results = {}
    for spacing in (20.0, 10.0, 5.0):
        level = small_level(obstacle_spacing=spacing, obstacle_radius=2.0,
                            duration_s=5.0)
        state = spawn_level(level)
        for mel in flight:
            state, _ = step(state, make_signal(mel), 0.05)
        results[spacing] = state.collisions
    assert results[20.0] <= results[10.0] <= results[5.0]


# -- scripted runs and summaries ------------------------------------------------------


def test_run_scripted_short_stream_fails_level():
    signals = [make_signal(250.0, index=i * 4096) for i in range(5)]
    log = run_scripted(small_level(), signals)
    kinds = [e.kind for e in log.events]
    assert EventKind.LEVEL_FAILED in kinds
    assert EventKind.LEVEL_COMPLETE not in kinds
    assert "after 5 frames" in log.events[-1].context
    assert log.summary["frames"] == 5


def test_run_scripted_complete_run():
    signals = [make_signal(100.0, index=i) for i in range(60)]  # 6 s of frames
    log = run_scripted(small_level(), signals)
    assert any(e.kind is EventKind.LEVEL_COMPLETE for e in log.events)
    # the run stops at completion, leftover signals are not consumed
    assert log.summary["frames"] < 60
    assert log.summary["collisions"] == 0
    assert log.effective_critical_mel == 200.0


def test_compute_summary_fields():
    samples = [make_signal(m).source for m in (250.0, None, 150.0, 320.0)]
    events = [GameEvent(EventKind.OBSTACLE_CLEARED, 1.0, "x"),
              GameEvent(EventKind.COLLISION, 2.0, "y"),
              GameEvent(EventKind.OBSTACLE_CLEARED, 3.0, "z")]
    summary = compute_summary(samples, events, 200.0)
    assert summary == {
        "frames": 4,
        "pitched_frames": 3,
        "above_critical_frames": 2,
        "max_mel": 320.0,
        "score": 2,
        "collisions": 1,
    }


def test_compute_summary_empty_run():
    summary = compute_summary([], [], 200.0)
    assert summary["max_mel"] is None
    assert summary["frames"] == 0


# -- golden replay ----------------------------------------------------------------------


def scripted_session_log():
    # a fixed flight plan exercising rises, falls, silence, and completion
    plan = ([250.0] * 8 + [None] * 4 + [300.0] * 10 + [120.0] * 6) * 4
    signals = [make_signal(mel, index=i * 4096) for i, mel in enumerate(plan)]
    return run_scripted(
        small_level(duration_s=8.0),
        signals,
        patient_alias="golden",
        session_id="golden-replay",
        started_at="2026-01-01T00:00:00+00:00",
    )


def test_golden_scripted_session_replays_bit_identically(regen_golden):
    path = GOLDEN / "scripted_session.json"
    log = scripted_session_log()
    text = json.dumps(log_to_dict(log), indent=2, sort_keys=True)
    if regen_golden:
        path.parent.mkdir(exist_ok=True)
        path.write_text(text + "\n")
        pytest.skip("golden file rewritten")
    assert text + "\n" == path.read_text()


def test_scripted_run_is_deterministic():
    a = log_to_dict(scripted_session_log())
    b = log_to_dict(scripted_session_log())
    assert a == b


# -- session store -------------------------------------------------------------------------


def test_store_round_trip_exact(tmp_path):
    store = SessionStore(tmp_path / "sessions.jsonl")
    log = scripted_session_log()
    store.persist(log)
    (back,) = store.sessions()
    assert log_to_dict(back) == log_to_dict(log)
    assert back.level == log.level


def test_store_preserves_insertion_order(tmp_path):
    store = SessionStore(tmp_path / "sessions.jsonl")
    ids = []
    for i in range(3):
        log = run_scripted(small_level(), [make_signal(250.0)] * 3,
                           session_id=f"run-{i}")
        ids.append(store.persist(log))
    assert store.ids() == ids == ["run-0", "run-1", "run-2"]
    assert store.get("run-1").session_id == "run-1"
    with pytest.raises(KeyError):
        store.get("run-9")


def test_store_rejects_tampered_summary(tmp_path):
    path = tmp_path / "sessions.jsonl"
    store = SessionStore(path)
    store.persist(run_scripted(small_level(), [make_signal(250.0)] * 3))
    doc = json.loads(path.read_text())
    doc["summary"]["score"] += 5
    path.write_text(json.dumps(doc) + "\n")
    with pytest.raises(SessionIntegrityError):
        store.sessions()


def test_store_reports_corrupt_line_location(tmp_path):
    path = tmp_path / "sessions.jsonl"
    store = SessionStore(path)
    store.persist(run_scripted(small_level(), [make_signal(250.0)] * 3))
    with open(path, "a", encoding="utf-8") as fh:
        fh.write("{not json\n")
    with pytest.raises(SessionIntegrityError, match=r"sessions\.jsonl:2"):
        store.sessions()


def test_persist_refuses_inconsistent_log(tmp_path):
    log = run_scripted(small_level(), [make_signal(250.0)] * 3)
    log.summary = dict(log.summary, score=99)
    store = SessionStore(tmp_path / "sessions.jsonl")
    with pytest.raises(SessionIntegrityError):
        store.persist(log)
    assert not (tmp_path / "sessions.jsonl").exists()


def test_log_dict_round_trip_with_unpitched_samples():
    log = scripted_session_log()
    back = log_from_dict(json.loads(json.dumps(log_to_dict(log))))
    assert log_to_dict(back) == log_to_dict(log)


# -- presets ----------------------------------------------------------------------------------


def test_level_presets_ladder():
    presets = load_level_presets()
    assert list(presets) == ["easiest", "easy", "medium", "hard", "senior"]
    assert presets["easiest"].critical_mel == 50.0
    assert presets["senior"].critical_mel == 400.0
    criticals = [cfg.critical_mel for cfg in presets.values()]
    assert criticals == sorted(criticals)
    # spacing tightens as the ladder climbs
    spacings = [cfg.obstacle_spacing for cfg in presets.values()]
    assert spacings == sorted(spacings, reverse=True)
    for cfg in presets.values():
        assert not cfg.proportional_control
