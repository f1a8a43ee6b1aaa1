/**
 * WebSocket client with a message buffer between the stream and the screen.
 *
 * Incoming frames are queued as raw text and parsed only when the render
 * loop calls drain(), so a burst from the engine never re-renders the page
 * hundreds of times in one tick. The socket constructor is injected, which
 * lets tests (and the Node smoke run) drive the same code the browser uses.
 */

import type { ConnectionState } from "./state.js";
import type { ControlMessage, WireMessage } from "./wire.js";
import { WireFormatError, parseWireMessage } from "./wire.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((evt?: any) => void) | null;
  onmessage: ((evt: any) => void) | null;
  onclose: ((evt?: any) => void) | null;
  onerror: ((evt?: any) => void) | null;
}

export type SocketCtor = new (url: string) => SocketLike;

export interface StreamClientOptions {
  WebSocketImpl: SocketCtor;
  reconnectDelayMs?: number;
  scheduler?: (fn: () => void, ms: number) => unknown;
}

export class StreamClient {
  readonly url: string;
  status: ConnectionState = "connecting";
  onstatus: ((status: ConnectionState) => void) | null = null;
  /** Outbound control count; lets tests prove an interaction sent nothing. */
  sentCount = 0;

  private readonly impl: SocketCtor;
  private readonly reconnectDelayMs: number;
  private readonly scheduler: (fn: () => void, ms: number) => unknown;
  private socket: SocketLike | null = null;
  private buffer: string[] = [];
  private stopped = false;

  constructor(url: string, options: StreamClientOptions) {
    this.url = url;
    this.impl = options.WebSocketImpl;
    this.reconnectDelayMs = options.reconnectDelayMs ?? 1000;
    this.scheduler = options.scheduler ?? ((fn, ms) => setTimeout(fn, ms));
  }

  get queued(): number {
    return this.buffer.length;
  }

  connect(): void {
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
  drain(apply: (msg: WireMessage) => void, onBadMessage?: (err: WireFormatError, raw: string) => void): number {
    if (this.buffer.length === 0) {
      return 0;
    }
    const batch = this.buffer;
    this.buffer = [];
    for (const raw of batch) {
      let parsed: WireMessage;
      try {
        parsed = parseWireMessage(raw);
      } catch (err) {
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

  send(control: ControlMessage): void {
    if (this.socket === null || this.status !== "open") {
      throw new Error("stream is not connected");
    }
    this.socket.send(JSON.stringify(control));
    this.sentCount += 1;
  }

  close(): void {
    this.stopped = true;
    const socket = this.socket;
    this.socket = null;
    socket?.close();
    this.setStatus("closed");
  }

  private setStatus(status: ConnectionState): void {
    this.status = status;
    this.onstatus?.(status);
  }
}
