/**
 * The estimated-pitch monitor: the newest rows of detector output, rendered
 * verbatim from sample messages.
 *
 * Column mapping from the wire record: frequency is frequency_hz, pitch is
 * the mel value (the unit the whole therapy pipeline works in), midi note is
 * the note name, midi note number is the fractional MIDI value, amplitude is
 * the frame RMS, sample is the stream position, duration the frame length.
 * Unpitched frames get dashes in the pitch columns but keep amplitude and
 * position, so silence is visible rather than missing.
 */

import { DASH, escapeHtml, formatAmplitude, formatHz, formatMel, formatMidi, formatMs } from "./format.js";
import type { WireSample } from "./wire.js";

export const MONITOR_COLUMNS = [
  "frequency",
  "pitch",
  "amplitude",
  "midi note",
  "midi note number",
  "sample",
  "duration",
] as const;

export interface MonitorRowView {
  frequency: string;
  pitch: string;
  amplitude: string;
  midiNote: string;
  midiNoteNumber: string;
  sample: string;
  duration: string;
  pitched: boolean;
  algorithm: string;
}

export function monitorRow(sample: WireSample): MonitorRowView {
  const s = sample.sample;
  return {
    frequency: formatHz(s.frequency_hz),
    pitch: formatMel(s.mel),
    amplitude: formatAmplitude(s.amplitude_rms),
    midiNote: s.note_name === null ? DASH : s.note_name,
    midiNoteNumber: formatMidi(s.midi_number),
    sample: String(s.sample_index),
    duration: formatMs(s.duration_ms),
    pitched: s.pitched,
    algorithm: sample.algorithm,
  };
}

export function renderMonitorTable(samples: WireSample[]): string {
  const headers = [...MONITOR_COLUMNS, "algorithm"]
    .map((name) => `<th>${escapeHtml(name)}</th>`)
    .join("");
  const body = samples
    .map((sample) => {
      const row = monitorRow(sample);
      const cells = [
        row.frequency,
        row.pitch,
        row.amplitude,
        row.midiNote,
        row.midiNoteNumber,
        row.sample,
        row.duration,
        row.algorithm,
      ]
        .map((cell) => `<td>${escapeHtml(cell)}</td>`)
        .join("");
      return `<tr class="${row.pitched ? "pitched" : "unpitched"}">${cells}</tr>`;
    })
    .join("");
  return `<table class="monitor"><thead><tr>${headers}</tr></thead><tbody>${body}</tbody></table>`;
}
