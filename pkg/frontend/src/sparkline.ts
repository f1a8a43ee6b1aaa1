/**
 * Rolling mel-over-time sparkline with the effective critical pitch drawn
 * across it, so the therapist sees at a glance how far the voice sits from
 * the line the avatar needs.
 */

import { escapeHtml } from "./format.js";
import type { MelPoint } from "./state.js";
import { HISTORY_POINTS } from "./state.js";

export interface SparklineGeometry {
  width: number;
  height: number;
  melMax: number;
}

export const DEFAULT_GEOMETRY: SparklineGeometry = { width: 360, height: 90, melMax: 400 };

export function melY(mel: number, geo: SparklineGeometry): number {
  const clamped = Math.min(Math.max(mel, 0), geo.melMax);
  return geo.height - (clamped / geo.melMax) * geo.height;
}

/**
 * Path data for the pitched runs of the history, newest point pinned to the
 * right edge. Unpitched points break the line, leaving visible gaps where
 * the voice dropped out.
 */
export function sparklinePath(history: MelPoint[], geo: SparklineGeometry): string {
  if (history.length === 0) {
    return "";
  }
  const step = geo.width / (HISTORY_POINTS - 1);
  const offset = geo.width - (history.length - 1) * step;
  const parts: string[] = [];
  let penDown = false;
  history.forEach((point, i) => {
    if (point.mel === null) {
      penDown = false;
      return;
    }
    const x = offset + i * step;
    const y = melY(point.mel, geo);
    parts.push(`${penDown ? "L" : "M"} ${x.toFixed(2)} ${y.toFixed(2)}`);
    penDown = true;
  });
  return parts.join(" ");
}

export function renderSparkline(
  history: MelPoint[],
  critical: number | null,
  geo: SparklineGeometry = DEFAULT_GEOMETRY,
): string {
  const path = sparklinePath(history, geo);
  let overlay = "";
  if (critical !== null) {
    const y = melY(critical, geo).toFixed(2);
    overlay =
      `<line class="critical" x1="0" y1="${y}" x2="${geo.width}" y2="${y}"></line>` +
      `<text class="critical-label" x="4" y="${(Number(y) - 4).toFixed(2)}">` +
      `${escapeHtml(critical.toFixed(1))} mel</text>`;
  }
  return (
    `<svg class="sparkline" viewBox="0 0 ${geo.width} ${geo.height}" preserveAspectRatio="none">` +
    `${overlay}<path d="${path}" fill="none"></path></svg>`
  );
}
