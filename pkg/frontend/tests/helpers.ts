/** Shared fixtures: wire message builders, a recording canvas, a scriptable socket. */

import type { Draw2D } from "../src/game.js";
import type { SocketCtor, SocketLike } from "../src/client.js";
import type { WireConfig, WireEvent, WireSample, WireSnapshot, WireObstacle } from "../src/wire.js";

export interface SampleOptions {
  mel?: number | null;
  amplitude?: number;
  index?: number;
  algorithm?: string;
  sessionId?: string | null;
}

export function makeSample(seq: number, opts: SampleOptions = {}): WireSample {
  const mel = opts.mel === undefined ? 308.3 : opts.mel;
  const pitched = mel !== null;
  return {
    type: "sample",
    seq,
    session_id: opts.sessionId === undefined ? "s-1" : opts.sessionId,
    algorithm: opts.algorithm ?? "AdvancedAutocorrelator",
    above_critical: pitched && mel >= 50,
    effective_critical_mel: 50,
    sample: {
      frequency_hz: pitched ? 220.0 : null,
      mel,
      note_name: pitched ? "A3" : null,
      midi_number: pitched ? 57.0 : null,
      amplitude_rms: opts.amplitude ?? 0.42,
      sample_index: opts.index ?? seq * 4096,
      duration_ms: 92.9,
      pitched,
    },
  };
}

export interface SnapshotOptions {
  scroll?: number;
  elapsed?: number;
  score?: number;
  collisions?: number;
  obstacles?: WireObstacle[];
}

export function makeSnapshot(seq: number, avatarY: number, opts: SnapshotOptions = {}): WireSnapshot {
  return {
    type: "snapshot",
    seq,
    session_id: "s-1",
    state: {
      avatar_y: avatarY,
      scroll_x: opts.scroll ?? 0,
      elapsed_s: opts.elapsed ?? 1.0,
      score: opts.score ?? 0,
      collisions: opts.collisions ?? 0,
      obstacles: opts.obstacles ?? [],
    },
  };
}

export function makeEvent(seq: number, kind: string, context = "obstacle x=20", atS = 1.0): WireEvent {
  return { type: "event", seq, session_id: "s-1", event: { kind, at_s: atS, context } };
}

export interface ConfigOptions {
  criticalMel?: number;
  divisor?: number;
  effective?: number;
  algorithm?: string;
  levelName?: string;
  running?: boolean;
  applied?: string | null;
  error?: string | null;
}

export function makeConfig(seq: number, opts: ConfigOptions = {}): WireConfig {
  const critical = opts.criticalMel ?? 400;
  const divisor = opts.divisor ?? 1;
  return {
    type: "config",
    seq,
    session_id: null,
    algorithm: opts.algorithm ?? "AdvancedAutocorrelator",
    buffer_size: 4096,
    input: "synth:midi=57,duration=6",
    level_name: opts.levelName ?? "senior",
    level: {
      critical_mel: critical,
      obstacle_spacing: 14,
      obstacle_radius: 3,
      scroll_speed: 20,
      duration_s: 60,
      rng_seed: 7,
      proportional_control: true,
    },
    pipeline: {
      critical_mel: critical,
      difficulty_divisor: divisor,
      mel_ceiling: 400,
      smoothing_window: 1,
    },
    effective_critical_mel: opts.effective ?? critical / divisor,
    running: opts.running ?? false,
    applied: opts.applied === undefined ? "client_connected" : opts.applied,
    error: opts.error ?? null,
  };
}

export interface DrawCall {
  op: string;
  args: unknown[];
  fillStyle: string;
}

export class RecordingContext implements Draw2D {
  calls: DrawCall[] = [];
  fillStyle: string | CanvasGradient | CanvasPattern = "";
  strokeStyle: string | CanvasGradient | CanvasPattern = "";
  lineWidth = 1;
  font = "";
  textAlign: CanvasTextAlign = "left";

  private record(op: string, args: unknown[]): void {
    this.calls.push({ op, args, fillStyle: String(this.fillStyle) });
  }

  clearRect(...args: number[]): void {
    this.record("clearRect", args);
  }
  fillRect(...args: number[]): void {
    this.record("fillRect", args);
  }
  beginPath(): void {
    this.record("beginPath", []);
  }
  arc(...args: number[]): void {
    this.record("arc", args);
  }
  fill(): void {
    this.record("fill", []);
  }
  stroke(): void {
    this.record("stroke", []);
  }
  fillText(text: string, x: number, y: number): void {
    this.record("fillText", [text, x, y]);
  }

  ops(op: string): DrawCall[] {
    return this.calls.filter((c) => c.op === op);
  }

  texts(): string[] {
    return this.ops("fillText").map((c) => String(c.args[0]));
  }

  arcs(): { x: number; y: number; r: number; fillStyle: string }[] {
    return this.ops("arc").map((c) => {
      const [x, y, r] = c.args as number[];
      return { x, y, r, fillStyle: c.fillStyle };
    });
  }
}

export class FakeSocket implements SocketLike {
  sent: string[] = [];
  closedByClient = false;
  onopen: ((evt?: unknown) => void) | null = null;
  onmessage: ((evt: { data: unknown }) => void) | null = null;
  onclose: ((evt?: unknown) => void) | null = null;
  onerror: ((evt?: unknown) => void) | null = null;

  constructor(readonly url: string) {}

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.closedByClient = true;
    this.onclose?.();
  }

  serverOpen(): void {
    this.onopen?.();
  }

  serverMessage(data: unknown): void {
    this.onmessage?.({ data });
  }

  serverClose(): void {
    this.onclose?.();
  }
}

export function fakeSocketFactory(): { Ctor: SocketCtor; instances: FakeSocket[] } {
  const instances: FakeSocket[] = [];
  const Ctor = class extends FakeSocket {
    constructor(url: string) {
      super(url);
      instances.push(this);
    }
  };
  return { Ctor, instances };
}
