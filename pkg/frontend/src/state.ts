/**
 * Client state: a pure fold over wire messages.
 *
 * Rendering reads this and nothing else, so every number on screen can be
 * traced to a message. Controls the user has sent but the engine has not
 * echoed yet are tracked as `pending`; the panel keeps showing the echoed
 * values until the next config message resolves them.
 */

import type { Family, WireConfig, WireEventBody, WireMessage, WireSample, WireSnapshot } from "./wire.js";

export type ConnectionState = "connecting" | "open" | "closed";

export interface MelPoint {
  seq: number;
  mel: number | null;
}

export interface FlashState {
  kind: string;
  atMs: number;
}

export interface PendingControl {
  action: string;
  value: unknown;
}

export interface UiState {
  connection: ConnectionState;
  config: WireConfig | null;
  pending: PendingControl | null;
  lastError: string | null;
  rows: WireSample[];
  melHistory: MelPoint[];
  snapshot: WireSnapshot | null;
  events: WireEventBody[];
  flash: FlashState | null;
  seqs: Partial<Record<Family, number>>;
  snapshotGaps: number;
}

export const MONITOR_ROWS = 20;
export const HISTORY_POINTS = 240;
export const EVENT_LOG_CAP = 500;

const FLASHED_KINDS = new Set(["Collision", "ObstacleCleared"]);

export function initialState(): UiState {
  return {
    connection: "connecting",
    config: null,
    pending: null,
    lastError: null,
    rows: [],
    melHistory: [],
    snapshot: null,
    events: [],
    flash: null,
    seqs: {},
    snapshotGaps: 0,
  };
}

export function setConnection(state: UiState, connection: ConnectionState): UiState {
  return { ...state, connection };
}

export function markPending(state: UiState, action: string, value: unknown): UiState {
  return { ...state, pending: { action, value } };
}

export function effectiveCritical(state: UiState): number | null {
  return state.config ? state.config.effective_critical_mel : null;
}

export function applyMessage(state: UiState, msg: WireMessage, nowMs: number): UiState {
  const next: UiState = { ...state, seqs: { ...state.seqs, [msg.type]: msg.seq } };
  switch (msg.type) {
    case "sample": {
      next.rows = [msg, ...state.rows].slice(0, MONITOR_ROWS);
      next.melHistory = [...state.melHistory, { seq: msg.seq, mel: msg.sample.mel }].slice(-HISTORY_POINTS);
      return next;
    }
    case "snapshot": {
      // The server sheds snapshots first under backpressure; a seq gap
      // here is expected load shedding, not corruption.
      const prev = state.seqs.snapshot;
      if (prev !== undefined && msg.seq > prev + 1) {
        next.snapshotGaps = state.snapshotGaps + (msg.seq - prev - 1);
      }
      next.snapshot = msg;
      return next;
    }
    case "event": {
      next.events = [...state.events, msg.event].slice(-EVENT_LOG_CAP);
      if (FLASHED_KINDS.has(msg.event.kind)) {
        next.flash = { kind: msg.event.kind, atMs: nowMs };
      }
      return next;
    }
    case "config": {
      next.config = msg;
      next.lastError = msg.error;
      next.pending = null;
      return next;
    }
  }
}
