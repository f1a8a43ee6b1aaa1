/**
 * Wire protocol mirror.
 *
 * Shapes here match the server's JSON message contract one to one; the UI
 * never invents fields and never computes pitch quantities of its own.
 * Parsing is strict: a message with a missing key, an extra key, or a
 * wrongly typed value is rejected rather than half-rendered.
 */

export type Family = "sample" | "snapshot" | "event" | "config";

export interface WirePitchFields {
  frequency_hz: number | null;
  mel: number | null;
  note_name: string | null;
  midi_number: number | null;
  amplitude_rms: number;
  sample_index: number;
  duration_ms: number;
  pitched: boolean;
}

export interface WireSample {
  type: "sample";
  seq: number;
  session_id: string | null;
  algorithm: string;
  above_critical: boolean;
  effective_critical_mel: number;
  sample: WirePitchFields;
}

export interface WireObstacle {
  x: number;
  y: number;
  radius: number;
  spent: boolean;
}

export interface WireGameView {
  avatar_y: number;
  scroll_x: number;
  elapsed_s: number;
  score: number;
  collisions: number;
  obstacles: WireObstacle[];
}

export interface WireSnapshot {
  type: "snapshot";
  seq: number;
  session_id: string | null;
  state: WireGameView;
}

export interface WireEventBody {
  kind: string;
  at_s: number;
  context: string;
}

export interface WireEvent {
  type: "event";
  seq: number;
  session_id: string | null;
  event: WireEventBody;
}

export interface WireLevel {
  critical_mel: number;
  obstacle_spacing: number;
  obstacle_radius: number;
  scroll_speed: number;
  duration_s: number;
  rng_seed: number;
  proportional_control: boolean;
}

export interface WirePipeline {
  critical_mel: number;
  difficulty_divisor: number;
  mel_ceiling: number;
  smoothing_window: number;
}

export interface WireConfig {
  type: "config";
  seq: number;
  session_id: string | null;
  algorithm: string;
  buffer_size: number;
  input: string;
  level_name: string;
  level: WireLevel;
  pipeline: WirePipeline;
  effective_critical_mel: number;
  running: boolean;
  applied: string | null;
  error: string | null;
}

export type WireMessage = WireSample | WireSnapshot | WireEvent | WireConfig;

export type ControlAction =
  | "start"
  | "stop"
  | "set_critical_mel"
  | "set_difficulty_divisor"
  | "set_algorithm"
  | "set_level";

export interface ControlMessage {
  type: "control";
  action: ControlAction;
  value?: unknown;
}

export function buildControl(action: ControlAction, value?: unknown): ControlMessage {
  return value === undefined ? { type: "control", action } : { type: "control", action, value };
}

export class WireFormatError extends Error {}

type Obj = Record<string, unknown>;

function asObject(value: unknown, path: string): Obj {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new WireFormatError(`${path}: expected an object`);
  }
  return value as Obj;
}

function exactKeys(obj: Obj, keys: readonly string[], path: string): void {
  const have = Object.keys(obj).sort();
  const want = [...keys].sort();
  if (have.length !== want.length || have.some((k, i) => k !== want[i])) {
    throw new WireFormatError(`${path}: keys [${have.join(", ")}] do not match [${want.join(", ")}]`);
  }
}

// JSON has a single number type, so "float" accepts integral values too;
// "int" additionally requires integrality.
function num(obj: Obj, key: string, path: string): number {
  const v = obj[key];
  if (typeof v !== "number" || !Number.isFinite(v)) {
    throw new WireFormatError(`${path}.${key}: expected a finite number`);
  }
  return v;
}

function int(obj: Obj, key: string, path: string): number {
  const v = num(obj, key, path);
  if (!Number.isInteger(v)) {
    throw new WireFormatError(`${path}.${key}: expected an integer`);
  }
  return v;
}

function numOrNull(obj: Obj, key: string, path: string): number | null {
  return obj[key] === null ? null : num(obj, key, path);
}

function str(obj: Obj, key: string, path: string): string {
  const v = obj[key];
  if (typeof v !== "string") {
    throw new WireFormatError(`${path}.${key}: expected a string`);
  }
  return v;
}

function strOrNull(obj: Obj, key: string, path: string): string | null {
  return obj[key] === null ? null : str(obj, key, path);
}

function bool(obj: Obj, key: string, path: string): boolean {
  const v = obj[key];
  if (typeof v !== "boolean") {
    throw new WireFormatError(`${path}.${key}: expected a boolean`);
  }
  return v;
}

function parsePitchFields(value: unknown, path: string): WirePitchFields {
  const o = asObject(value, path);
  exactKeys(
    o,
    ["frequency_hz", "mel", "note_name", "midi_number", "amplitude_rms", "sample_index", "duration_ms", "pitched"],
    path,
  );
  return {
    frequency_hz: numOrNull(o, "frequency_hz", path),
    mel: numOrNull(o, "mel", path),
    note_name: strOrNull(o, "note_name", path),
    midi_number: numOrNull(o, "midi_number", path),
    amplitude_rms: num(o, "amplitude_rms", path),
    sample_index: int(o, "sample_index", path),
    duration_ms: num(o, "duration_ms", path),
    pitched: bool(o, "pitched", path),
  };
}

function parseSample(o: Obj): WireSample {
  const path = "sample";
  exactKeys(o, ["type", "seq", "session_id", "algorithm", "above_critical", "effective_critical_mel", "sample"], path);
  return {
    type: "sample",
    seq: int(o, "seq", path),
    session_id: strOrNull(o, "session_id", path),
    algorithm: str(o, "algorithm", path),
    above_critical: bool(o, "above_critical", path),
    effective_critical_mel: num(o, "effective_critical_mel", path),
    sample: parsePitchFields(o.sample, `${path}.sample`),
  };
}

function parseObstacle(value: unknown, path: string): WireObstacle {
  const o = asObject(value, path);
  exactKeys(o, ["x", "y", "radius", "spent"], path);
  return {
    x: num(o, "x", path),
    y: num(o, "y", path),
    radius: num(o, "radius", path),
    spent: bool(o, "spent", path),
  };
}

function parseSnapshot(o: Obj): WireSnapshot {
  const path = "snapshot";
  exactKeys(o, ["type", "seq", "session_id", "state"], path);
  const s = asObject(o.state, `${path}.state`);
  exactKeys(s, ["avatar_y", "scroll_x", "elapsed_s", "score", "collisions", "obstacles"], `${path}.state`);
  const rawObstacles = s.obstacles;
  if (!Array.isArray(rawObstacles)) {
    throw new WireFormatError(`${path}.state.obstacles: expected an array`);
  }
  return {
    type: "snapshot",
    seq: int(o, "seq", path),
    session_id: strOrNull(o, "session_id", path),
    state: {
      avatar_y: num(s, "avatar_y", `${path}.state`),
      scroll_x: num(s, "scroll_x", `${path}.state`),
      elapsed_s: num(s, "elapsed_s", `${path}.state`),
      score: int(s, "score", `${path}.state`),
      collisions: int(s, "collisions", `${path}.state`),
      obstacles: rawObstacles.map((item, i) => parseObstacle(item, `${path}.state.obstacles[${i}]`)),
    },
  };
}

function parseEvent(o: Obj): WireEvent {
  const path = "event";
  exactKeys(o, ["type", "seq", "session_id", "event"], path);
  const body = asObject(o.event, `${path}.event`);
  exactKeys(body, ["kind", "at_s", "context"], `${path}.event`);
  return {
    type: "event",
    seq: int(o, "seq", path),
    session_id: strOrNull(o, "session_id", path),
    event: {
      kind: str(body, "kind", `${path}.event`),
      at_s: num(body, "at_s", `${path}.event`),
      context: str(body, "context", `${path}.event`),
    },
  };
}

function parseConfig(o: Obj): WireConfig {
  const path = "config";
  exactKeys(
    o,
    [
      "type",
      "seq",
      "session_id",
      "algorithm",
      "buffer_size",
      "input",
      "level_name",
      "level",
      "pipeline",
      "effective_critical_mel",
      "running",
      "applied",
      "error",
    ],
    path,
  );
  const level = asObject(o.level, `${path}.level`);
  exactKeys(
    level,
    ["critical_mel", "obstacle_spacing", "obstacle_radius", "scroll_speed", "duration_s", "rng_seed", "proportional_control"],
    `${path}.level`,
  );
  const pipeline = asObject(o.pipeline, `${path}.pipeline`);
  exactKeys(pipeline, ["critical_mel", "difficulty_divisor", "mel_ceiling", "smoothing_window"], `${path}.pipeline`);
  return {
    type: "config",
    seq: int(o, "seq", path),
    session_id: strOrNull(o, "session_id", path),
    algorithm: str(o, "algorithm", path),
    buffer_size: int(o, "buffer_size", path),
    input: str(o, "input", path),
    level_name: str(o, "level_name", path),
    level: {
      critical_mel: num(level, "critical_mel", `${path}.level`),
      obstacle_spacing: num(level, "obstacle_spacing", `${path}.level`),
      obstacle_radius: num(level, "obstacle_radius", `${path}.level`),
      scroll_speed: num(level, "scroll_speed", `${path}.level`),
      duration_s: num(level, "duration_s", `${path}.level`),
      rng_seed: int(level, "rng_seed", `${path}.level`),
      proportional_control: bool(level, "proportional_control", `${path}.level`),
    },
    pipeline: {
      critical_mel: num(pipeline, "critical_mel", `${path}.pipeline`),
      difficulty_divisor: num(pipeline, "difficulty_divisor", `${path}.pipeline`),
      mel_ceiling: num(pipeline, "mel_ceiling", `${path}.pipeline`),
      smoothing_window: int(pipeline, "smoothing_window", `${path}.pipeline`),
    },
    effective_critical_mel: num(o, "effective_critical_mel", path),
    running: bool(o, "running", path),
    applied: strOrNull(o, "applied", path),
    error: strOrNull(o, "error", path),
  };
}

export function parseWireMessage(text: string): WireMessage {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    throw new WireFormatError("message is not valid JSON");
  }
  const o = asObject(raw, "message");
  switch (o.type) {
    case "sample":
      return parseSample(o);
    case "snapshot":
      return parseSnapshot(o);
    case "event":
      return parseEvent(o);
    case "config":
      return parseConfig(o);
    default:
      throw new WireFormatError(
        `message.type: ${JSON.stringify(o.type)} is not one of sample, snapshot, event, config`,
      );
  }
}
