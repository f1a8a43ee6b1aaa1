/**
 * Therapist panel: the live-retuning controls.
 *
 * Every input renders the value from the latest config echo, never the value
 * just sent; mid-flight changes show as a pending marker until the engine
 * answers. A rejected control surfaces its reason inline and leaves the
 * controls on the engine's actual settings, so the panel can never drift
 * from the session it steers.
 */

import { escapeHtml } from "./format.js";
import type { PendingControl } from "./state.js";
import type { ControlMessage, WireConfig } from "./wire.js";
import { buildControl } from "./wire.js";

export const CRITICAL_MEL_MIN = 10;
export const CRITICAL_MEL_MAX = 400;
export const DIVISOR_MIN = 1;
export const DIVISOR_MAX = 8;

export const ALGORITHMS = [
  "ClassicAutocorrelator",
  "AdvancedAutocorrelator",
  "DynamicWavelet",
  "Yin",
  "FastYin",
  "Mpm",
  "FftPeak",
] as const;

export const LEVEL_PRESETS = ["easiest", "easy", "medium", "hard", "senior"] as const;

export interface PanelView {
  collapsed: boolean;
  config: WireConfig | null;
  pending: PendingControl | null;
  lastError: string | null;
}

export type PanelInput = "critical" | "divisor" | "algorithm" | "level";

export function controlForInput(input: PanelInput, raw: string): ControlMessage {
  switch (input) {
    case "critical":
      return buildControl("set_critical_mel", Number(raw));
    case "divisor":
      return buildControl("set_difficulty_divisor", Number(raw));
    case "algorithm":
      return buildControl("set_algorithm", raw);
    case "level":
      return buildControl("set_level", raw);
  }
}

function options(values: readonly string[], selected: string): string {
  const known = values.includes(selected) ? values : [selected, ...values];
  return known
    .map((v) => `<option value="${escapeHtml(v)}"${v === selected ? " selected" : ""}>${escapeHtml(v)}</option>`)
    .join("");
}

export function renderPanel(view: PanelView): string {
  const arrow = view.collapsed ? "&#9656;" : "&#9662;";
  const header =
    `<button type="button" class="panel-toggle" data-panel="toggle">` +
    `${arrow} therapist panel</button>`;
  if (view.collapsed) {
    return `<div class="panel collapsed">${header}</div>`;
  }
  if (view.config === null) {
    return `<div class="panel"><div class="panel-body">${header}<p class="panel-note">waiting for engine settings</p></div></div>`;
  }
  const cfg = view.config;
  const pending = view.pending
    ? `<p class="panel-pending">sent ${escapeHtml(view.pending.action)}, waiting for the engine</p>`
    : "";
  const error = view.lastError
    ? `<p class="panel-error">${escapeHtml(view.lastError)}</p>`
    : "";
  const critical = cfg.pipeline.critical_mel;
  const divisor = cfg.pipeline.difficulty_divisor;
  const session = cfg.running
    ? `<button type="button" data-panel="stop">stop session</button>`
    : `<button type="button" data-panel="start">start session</button>`;
  return (
    `<div class="panel"><div class="panel-body">${header}` +
    `<label>critical pitch <output>${critical.toFixed(0)} mel</output>` +
    `<input type="range" data-panel="critical" min="${CRITICAL_MEL_MIN}" max="${CRITICAL_MEL_MAX}" step="1" value="${critical.toFixed(0)}"></label>` +
    `<label>difficulty divisor <output>/${divisor.toFixed(0)}</output>` +
    `<input type="range" data-panel="divisor" min="${DIVISOR_MIN}" max="${DIVISOR_MAX}" step="1" value="${divisor.toFixed(0)}"></label>` +
    `<p class="panel-effective">effective critical: ${cfg.effective_critical_mel.toFixed(1)} mel</p>` +
    `<label>algorithm <select data-panel="algorithm">${options(ALGORITHMS, cfg.algorithm)}</select></label>` +
    `<label>level <select data-panel="level"${cfg.running ? " disabled" : ""}>${options(LEVEL_PRESETS, cfg.level_name)}</select></label>` +
    `${session}${pending}${error}</div></div>`
  );
}
