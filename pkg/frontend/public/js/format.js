/**
 * Display formatting. The only arithmetic the client is allowed to do with
 * wire values is rounding them for humans; everything else stays server-side.
 */
export const DASH = "-";
export function formatHz(value) {
    return value === null ? DASH : `${value.toFixed(1)} Hz`;
}
export function formatMel(value) {
    return value === null ? DASH : `${value.toFixed(1)} mel`;
}
export function formatMidi(value) {
    return value === null ? DASH : value.toFixed(2);
}
export function formatNote(value) {
    return value === null ? DASH : value;
}
export function formatAmplitude(value) {
    return value.toFixed(3);
}
export function formatMs(value) {
    return `${value.toFixed(1)} ms`;
}
export function formatSeconds(value) {
    return `${value.toFixed(1)} s`;
}
export function escapeHtml(text) {
    return text
        .replaceAll("&", "&amp;")
        .replaceAll("<", "&lt;")
        .replaceAll(">", "&gt;")
        .replaceAll('"', "&quot;");
}
