/**
 * Browser bootstrap: wires the stream client, the message fold, and the
 * renderers to the page. Everything interesting lives in the imported
 * modules; this file only owns the DOM.
 */

import { StreamClient } from "./client.js";
import { attachCanvasGuard, renderGame } from "./game.js";
import { renderMonitorTable } from "./monitor.js";
import { controlForInput, renderPanel, type PanelInput } from "./panel.js";
import { renderSparkline } from "./sparkline.js";
import { applyMessage, effectiveCritical, initialState, markPending, setConnection } from "./state.js";

const canvas = document.getElementById("game") as HTMLCanvasElement;
const stage = document.getElementById("stage") as HTMLElement;
const sparkHost = document.getElementById("spark") as HTMLElement;
const rowsHost = document.getElementById("rows") as HTMLElement;
const panelHost = document.getElementById("panel") as HTMLElement;
const statusBadge = document.getElementById("status") as HTMLElement;

const ctx = canvas.getContext("2d");
if (ctx === null) {
  throw new Error("canvas 2d context unavailable");
}

let state = initialState();
const local = { hintUntilMs: 0, collapsed: false };
let panelsDirty = true;

const wsProtocol = location.protocol === "https:" ? "wss" : "ws";
const client = new StreamClient(`${wsProtocol}://${location.host}/stream`, {
  WebSocketImpl: WebSocket,
});
client.onstatus = (status) => {
  state = setConnection(state, status);
  statusBadge.textContent = status;
  statusBadge.className = `badge ${status}`;
  panelsDirty = true;
};
client.connect();

attachCanvasGuard(canvas, local);

function sizeCanvas(): void {
  const ratio = window.devicePixelRatio || 1;
  canvas.width = Math.max(1, Math.round(stage.clientWidth * ratio));
  canvas.height = Math.max(1, Math.round(stage.clientHeight * ratio));
}
new ResizeObserver(sizeCanvas).observe(stage);
sizeCanvas();

panelHost.addEventListener("change", (evt) => {
  const target = evt.target as HTMLInputElement | HTMLSelectElement;
  const kind = target.dataset.panel as PanelInput | undefined;
  if (!kind || client.status !== "open") {
    return;
  }
  const control = controlForInput(kind, target.value);
  client.send(control);
  state = markPending(state, control.action, control.value);
  panelsDirty = true;
});

panelHost.addEventListener("click", (evt) => {
  const target = (evt.target as HTMLElement).closest("[data-panel]") as HTMLElement | null;
  if (!target) {
    return;
  }
  const kind = target.dataset.panel;
  if (kind === "toggle") {
    local.collapsed = !local.collapsed;
    panelsDirty = true;
  } else if ((kind === "start" || kind === "stop") && client.status === "open") {
    client.send({ type: "control", action: kind });
    state = markPending(state, kind, undefined);
    panelsDirty = true;
  }
});

function frame(nowMs: number): void {
  const applied = client.drain((msg) => {
    state = applyMessage(state, msg, nowMs);
  });
  if (applied > 0) {
    panelsDirty = true;
    rowsHost.innerHTML = renderMonitorTable(state.rows);
    sparkHost.innerHTML = renderSparkline(state.melHistory, effectiveCritical(state));
  }
  if (panelsDirty) {
    panelHost.innerHTML = renderPanel({
      collapsed: local.collapsed,
      config: state.config,
      pending: state.pending,
      lastError: state.lastError,
    });
    panelsDirty = false;
  }
  renderGame(ctx!, canvas.width, canvas.height, {
    snapshot: state.snapshot,
    connection: state.connection,
    flash: state.flash,
    hintUntilMs: local.hintUntilMs,
  }, nowMs);
  requestAnimationFrame(frame);
}
requestAnimationFrame(frame);
