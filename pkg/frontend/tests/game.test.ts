import { describe, expect, it } from "vitest";

import { StreamClient } from "../src/client.js";
import {
  AVATAR_DRAW_BOOST,
  AVATAR_SCREEN_X,
  AVATAR_WORLD_RADIUS,
  FLASH_MS,
  GUARDED_EVENTS,
  HINT_MS,
  PALETTE,
  attachCanvasGuard,
  avatarCanvasY,
  renderGame,
  type GameView,
} from "../src/game.js";
import { applyMessage, initialState } from "../src/state.js";
import { RecordingContext, fakeSocketFactory, makeConfig, makeEvent, makeSample, makeSnapshot } from "./helpers.js";

const W = 1000;
const H = 500;
const SY = H / 100;

function view(overrides: Partial<GameView> = {}): GameView {
  return { snapshot: null, connection: "open", flash: null, hintUntilMs: 0, ...overrides };
}

// -- scene geometry ----------------------------------------------------------

describe("renderGame scene", () => {
  it("draws the avatar at its world height, sized from the viewport", () => {
    const ctx = new RecordingContext();
    renderGame(ctx, W, H, view({ snapshot: makeSnapshot(1, 50) }), 0);
    const arcs = ctx.arcs();
    expect(arcs).toHaveLength(2);
    const [halo, core] = arcs;
    expect(halo.x).toBe(AVATAR_SCREEN_X * W);
    expect(halo.y).toBe(H / 2);
    expect(halo.r).toBe(AVATAR_WORLD_RADIUS * SY * AVATAR_DRAW_BOOST);
    expect(halo.fillStyle).toBe(PALETTE.avatarHalo);
    expect(core.x).toBe(halo.x);
    expect(core.y).toBe(halo.y);
    expect(core.r).toBe(AVATAR_WORLD_RADIUS * SY);
    expect(core.fillStyle).toBe(PALETTE.avatarCore);
  });

  it("scales with a larger canvas instead of using fixed pixels", () => {
    const small = new RecordingContext();
    const large = new RecordingContext();
    renderGame(small, W, H, view({ snapshot: makeSnapshot(1, 50) }), 0);
    renderGame(large, W * 2, H * 2, view({ snapshot: makeSnapshot(1, 50) }), 0);
    expect(large.arcs()[0].r).toBe(small.arcs()[0].r * 2);
    expect(large.arcs()[1].y).toBe(small.arcs()[1].y * 2);
  });

  it("places obstacles relative to the scroll position", () => {
    const ctx = new RecordingContext();
    const snapshot = makeSnapshot(1, 50, {
      scroll: 10,
      obstacles: [{ x: 50, y: 60, radius: 3, spent: false }],
    });
    renderGame(ctx, W, H, view({ snapshot }), 0);
    const obstacle = ctx.arcs()[0];
    expect(obstacle.x).toBe(AVATAR_SCREEN_X * W + (50 - 10) * SY);
    expect(obstacle.y).toBe(H - 60 * SY);
    expect(obstacle.r).toBe(3 * SY);
    expect(obstacle.fillStyle).toBe(PALETTE.obstacle);
  });

  it("dims a spent obstacle and skips offscreen ones", () => {
    const ctx = new RecordingContext();
    const snapshot = makeSnapshot(1, 50, {
      obstacles: [
        { x: 20, y: 40, radius: 3, spent: true },
        { x: 400, y: 40, radius: 3, spent: false },
        { x: -80, y: 40, radius: 3, spent: false },
      ],
    });
    renderGame(ctx, W, H, view({ snapshot }), 0);
    const arcs = ctx.arcs();
    expect(arcs).toHaveLength(3);
    expect(arcs[0].fillStyle).toBe(PALETTE.obstacleSpent);
  });

  it("draws the score line from the snapshot", () => {
    const ctx = new RecordingContext();
    renderGame(ctx, W, H, view({ snapshot: makeSnapshot(1, 50, { score: 3, collisions: 1, elapsed: 12.34 }) }), 0);
    expect(ctx.texts()).toContain("score 3   hits 1   12.3 s");
  });

  it("maps world height to canvas rows top-down", () => {
    expect(avatarCanvasY(0, H)).toBe(H);
    expect(avatarCanvasY(100, H)).toBe(0);
    expect(avatarCanvasY(62.5, 400)).toBe(150);
  });
});

// -- idle, flashes, banner, hint ----------------------------------------------

describe("renderGame chrome", () => {
  it("shows a waiting note before any snapshot", () => {
    const ctx = new RecordingContext();
    renderGame(ctx, W, H, view(), 0);
    expect(ctx.texts()).toContain("waiting for a session");
  });

  it("shows a connecting note before the stream opens", () => {
    const ctx = new RecordingContext();
    renderGame(ctx, W, H, view({ connection: "connecting" }), 0);
    expect(ctx.texts()).toContain("connecting to engine");
  });

  it("flashes a collision within the flash window and not after", () => {
    const flash = { kind: "Collision", atMs: 1000 };
    const during = new RecordingContext();
    renderGame(during, W, H, view({ snapshot: makeSnapshot(1, 50), flash }), 1000 + FLASH_MS / 2);
    expect(during.ops("fillRect").some((c) => c.fillStyle === PALETTE.collisionFlash)).toBe(true);

    const after = new RecordingContext();
    renderGame(after, W, H, view({ snapshot: makeSnapshot(1, 50), flash }), 1000 + FLASH_MS + 1);
    expect(after.ops("fillRect").some((c) => c.fillStyle === PALETTE.collisionFlash)).toBe(false);
  });

  it("uses a distinct flash for cleared obstacles", () => {
    const ctx = new RecordingContext();
    renderGame(ctx, W, H, view({ snapshot: makeSnapshot(1, 50), flash: { kind: "ObstacleCleared", atMs: 0 } }), 1);
    expect(ctx.ops("fillRect").some((c) => c.fillStyle === PALETTE.clearedFlash)).toBe(true);
  });

  it("draws the reconnect banner over a frozen scene after a disconnect", () => {
    const ctx = new RecordingContext();
    renderGame(ctx, W, H, view({ snapshot: makeSnapshot(1, 50), connection: "closed" }), 0);
    const texts = ctx.texts();
    expect(texts[texts.length - 1]).toBe("connection lost - reconnecting");
    expect(ctx.arcs().length).toBeGreaterThan(0);
  });

  it("shows the voice hint only while it is fresh", () => {
    const fresh = new RecordingContext();
    renderGame(fresh, W, H, view({ hintUntilMs: 500 }), 100);
    expect(fresh.texts()).toContain("use your voice");

    const stale = new RecordingContext();
    renderGame(stale, W, H, view({ hintUntilMs: 500 }), 600);
    expect(stale.texts()).not.toContain("use your voice");
  });
});

// -- the touch guard -----------------------------------------------------------

describe("attachCanvasGuard", () => {
  it("surfaces the hint and swallows the event for every pointer gesture", () => {
    const canvas = new EventTarget();
    const local = { hintUntilMs: 0 };
    attachCanvasGuard(canvas, local, () => 5000);
    for (const type of GUARDED_EVENTS) {
      local.hintUntilMs = 0;
      const evt = new Event(type, { cancelable: true });
      canvas.dispatchEvent(evt);
      expect(local.hintUntilMs).toBe(5000 + HINT_MS);
      expect(evt.defaultPrevented).toBe(true);
    }
  });

  it("stops acting once detached", () => {
    const canvas = new EventTarget();
    const local = { hintUntilMs: 0 };
    const detach = attachCanvasGuard(canvas, local, () => 5000);
    detach();
    canvas.dispatchEvent(new Event("touchstart", { cancelable: true }));
    expect(local.hintUntilMs).toBe(0);
  });

  it("cannot alter the event log or emit controls", () => {
    // Full wiring: a client with a live fold, exactly as the page runs it.
    const { Ctor, instances } = fakeSocketFactory();
    const client = new StreamClient("ws://stub/stream", { WebSocketImpl: Ctor });
    client.connect();
    const socket = instances[0];
    socket.serverOpen();
    for (const msg of [makeConfig(1), makeSample(1), makeEvent(1, "Collision"), makeSnapshot(1, 50)]) {
      socket.serverMessage(JSON.stringify(msg));
    }
    let state = initialState();
    client.drain((msg) => {
      state = applyMessage(state, msg, 0);
    });
    expect(state.events).toHaveLength(1);

    const eventsRef = state.events;
    const eventsCopy = structuredClone(state.events);
    const canvas = new EventTarget();
    const local = { hintUntilMs: 0 };
    attachCanvasGuard(canvas, local, () => 123);
    for (const type of GUARDED_EVENTS) {
      canvas.dispatchEvent(new Event(type, { cancelable: true }));
    }
    // Nothing new to fold, nothing sent, the log is byte-identical.
    expect(client.drain(() => {})).toBe(0);
    expect(client.sentCount).toBe(0);
    expect(socket.sent).toHaveLength(0);
    expect(state.events).toBe(eventsRef);
    expect(state.events).toEqual(eventsCopy);
    expect(local.hintUntilMs).toBe(123 + HINT_MS);
  });
});
