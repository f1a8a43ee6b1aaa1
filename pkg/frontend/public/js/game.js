/**
 * Game canvas renderer and the input guard that keeps it voice-only.
 *
 * The renderer is a pure function of (context, size, view, clock): it draws
 * the latest snapshot and never touches client state, so tests can replay it
 * against a recording context and assert exact geometry. All sizes derive
 * from the canvas dimensions; there are no fixed pixel constants to outgrow
 * a larger screen.
 */
// Mirrors of the engine's world geometry, used only to place pixels.
export const WORLD_HEIGHT = 100;
export const AVATAR_WORLD_RADIUS = 2;
// Therapists asked for an avatar they can see from across the room: the
// sprite is drawn larger than its true hitbox, with a solid core at the
// real collision radius so near misses still read honestly.
export const AVATAR_DRAW_BOOST = 2.5;
export const AVATAR_SCREEN_X = 0.3;
export const FLASH_MS = 400;
export const HINT_MS = 1500;
export const PALETTE = {
    background: "#101418",
    obstacle: "#e8893c",
    obstacleSpent: "#4a4f55",
    avatarHalo: "rgba(86, 183, 255, 0.35)",
    avatarCore: "#56b7ff",
    hud: "#c7d0d9",
    collisionFlash: "rgba(232, 72, 72, 0.35)",
    clearedFlash: "rgba(72, 201, 110, 0.30)",
    banner: "rgba(16, 20, 24, 0.85)",
    bannerText: "#ffd166",
    hintText: "#9fe2bf",
};
export function avatarCanvasY(avatarY, height) {
    return height - (avatarY / WORLD_HEIGHT) * height;
}
export function renderGame(ctx, width, height, view, nowMs) {
    const sy = height / WORLD_HEIGHT;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = PALETTE.background;
    ctx.fillRect(0, 0, width, height);
    if (view.snapshot === null) {
        ctx.fillStyle = PALETTE.hud;
        ctx.font = `${Math.round(height / 18)}px system-ui, sans-serif`;
        ctx.textAlign = "center";
        const idle = view.connection === "open" ? "waiting for a session" : "connecting to engine";
        ctx.fillText(idle, width / 2, height / 2);
    }
    else {
        const state = view.snapshot.state;
        const avatarX = AVATAR_SCREEN_X * width;
        for (const obstacle of state.obstacles) {
            const cx = avatarX + (obstacle.x - state.scroll_x) * sy;
            const r = obstacle.radius * sy;
            if (cx + r < 0 || cx - r > width) {
                continue;
            }
            ctx.fillStyle = obstacle.spent ? PALETTE.obstacleSpent : PALETTE.obstacle;
            ctx.beginPath();
            ctx.arc(cx, height - obstacle.y * sy, r, 0, Math.PI * 2);
            ctx.fill();
        }
        const cy = avatarCanvasY(state.avatar_y, height);
        const coreRadius = AVATAR_WORLD_RADIUS * sy;
        ctx.fillStyle = PALETTE.avatarHalo;
        ctx.beginPath();
        ctx.arc(avatarX, cy, coreRadius * AVATAR_DRAW_BOOST, 0, Math.PI * 2);
        ctx.fill();
        ctx.fillStyle = PALETTE.avatarCore;
        ctx.beginPath();
        ctx.arc(avatarX, cy, coreRadius, 0, Math.PI * 2);
        ctx.fill();
        ctx.fillStyle = PALETTE.hud;
        ctx.font = `${Math.round(height / 24)}px system-ui, sans-serif`;
        ctx.textAlign = "left";
        ctx.fillText(`score ${state.score}   hits ${state.collisions}   ${state.elapsed_s.toFixed(1)} s`, Math.round(height / 24), Math.round(height / 16));
    }
    if (view.flash !== null && nowMs - view.flash.atMs < FLASH_MS) {
        ctx.fillStyle = view.flash.kind === "Collision" ? PALETTE.collisionFlash : PALETTE.clearedFlash;
        ctx.fillRect(0, 0, width, height);
    }
    if (nowMs < view.hintUntilMs) {
        ctx.fillStyle = PALETTE.hintText;
        ctx.font = `${Math.round(height / 16)}px system-ui, sans-serif`;
        ctx.textAlign = "center";
        ctx.fillText("use your voice", width / 2, height - height / 10);
    }
    if (view.connection === "closed") {
        ctx.fillStyle = PALETTE.banner;
        ctx.fillRect(0, height / 2 - height / 12, width, height / 6);
        ctx.fillStyle = PALETTE.bannerText;
        ctx.font = `${Math.round(height / 20)}px system-ui, sans-serif`;
        ctx.textAlign = "center";
        ctx.fillText("connection lost - reconnecting", width / 2, height / 2);
    }
}
export const GUARDED_EVENTS = ["touchstart", "touchmove", "pointerdown", "mousedown", "click"];
/**
 * The canvas is deliberately inert: touching it must never move the avatar
 * or emit a control. The guard holds no reference to the socket or the
 * message fold, so by construction all it can do is surface the hint; it
 * swallows the events to stop scrolling and double-tap zoom on tablets.
 */
export function attachCanvasGuard(target, local, now = () => performance.now()) {
    const onPointer = (evt) => {
        evt.preventDefault?.();
        local.hintUntilMs = now() + HINT_MS;
    };
    for (const type of GUARDED_EVENTS) {
        target.addEventListener(type, onPointer, { passive: false });
    }
    return () => {
        for (const type of GUARDED_EVENTS) {
            target.removeEventListener(type, onPointer);
        }
    };
}
