/**
 * WebSocket client with a message buffer between the stream and the screen.
 *
 * Incoming frames are queued as raw text and parsed only when the render
 * loop calls drain(), so a burst from the engine never re-renders the page
 * hundreds of times in one tick. The socket constructor is injected, which
 * lets tests (and the Node smoke run) drive the same code the browser uses.
 */
import { WireFormatError, parseWireMessage } from "./wire.js";
export class StreamClient {
    url;
    status = "connecting";
    onstatus = null;
    /** Outbound control count; lets tests prove an interaction sent nothing. */
    sentCount = 0;
    impl;
    reconnectDelayMs;
    scheduler;
    socket = null;
    buffer = [];
    stopped = false;
    constructor(url, options) {
        this.url = url;
        this.impl = options.WebSocketImpl;
        this.reconnectDelayMs = options.reconnectDelayMs ?? 1000;
        this.scheduler = options.scheduler ?? ((fn, ms) => setTimeout(fn, ms));
    }
    get queued() {
        return this.buffer.length;
    }
    connect() {
        this.setStatus("connecting");
        const socket = new this.impl(this.url);
        this.socket = socket;
        socket.onopen = () => this.setStatus("open");
        socket.onmessage = (evt) => {
            this.buffer.push(String(evt.data));
        };
        socket.onerror = () => {
            // The close handler owns recovery; errors always end in a close.
        };
        socket.onclose = () => {
            this.socket = null;
            if (this.stopped) {
                return;
            }
            this.setStatus("closed");
            this.scheduler(() => {
                if (!this.stopped) {
                    this.connect();
                }
            }, this.reconnectDelayMs);
        };
    }
    /** Parse and hand over everything buffered; returns how many were taken. */
    drain(apply, onBadMessage) {
        if (this.buffer.length === 0) {
            return 0;
        }
        const batch = this.buffer;
        this.buffer = [];
        for (const raw of batch) {
            let parsed;
            try {
                parsed = parseWireMessage(raw);
            }
            catch (err) {
                if (err instanceof WireFormatError) {
                    onBadMessage?.(err, raw);
                    continue;
                }
                throw err;
            }
            apply(parsed);
        }
        return batch.length;
    }
    send(control) {
        if (this.socket === null || this.status !== "open") {
            throw new Error("stream is not connected");
        }
        this.socket.send(JSON.stringify(control));
        this.sentCount += 1;
    }
    close() {
        this.stopped = true;
        const socket = this.socket;
        this.socket = null;
        socket?.close();
        this.setStatus("closed");
    }
    setStatus(status) {
        this.status = status;
        this.onstatus?.(status);
    }
}
