/**
 * WebSocket client for the session service.  Applies snapshots with
 * latest-wins semantics: however many scene frames arrive between two
 * animation ticks, exactly one (the newest) reaches the renderer, so
 * every visible update is a whole consistent snapshot.
 *
 * Sockets and schedulers are injectable so the protocol logic is
 * testable without a browser or a live server.
 */
import { parseFrame, SceneParseError, type SceneDoc } from "./scenedoc.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onmessage: ((event: { data: string }) => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
}

export type ConnectionStatus = "connecting" | "open" | "retrying" | "closed";

export interface ConnectionHandlers {
  /** called once per animation tick with the newest snapshot */
  onScene: (doc: SceneDoc) => void;
  /** service-reported or protocol errors; connection stays up */
  onError?: (message: string) => void;
  onStatus?: (status: ConnectionStatus) => void;
}

export interface ConnectionOptions {
  /** socket factory, defaults to the browser WebSocket */
  makeSocket?: (url: string) => SocketLike;
  /** animation-tick scheduler, defaults to requestAnimationFrame */
  requestTick?: (callback: () => void) => void;
  /** delayed-call scheduler for reconnects, defaults to setTimeout */
  setTimer?: (callback: () => void, ms: number) => void;
  retryBaseMs?: number;
  retryMaxMs?: number;
}

const defaultTick: (callback: () => void) => void =
  typeof requestAnimationFrame === "function"
    ? (cb) => requestAnimationFrame(() => cb())
    : (cb) => setTimeout(cb, 16);

export class SessionConnection {
  private socket: SocketLike | null = null;
  private pending: SceneDoc | null = null;
  private tickScheduled = false;
  private retryMs: number;
  private stopped = false;

  private readonly makeSocket: (url: string) => SocketLike;
  private readonly requestTick: (callback: () => void) => void;
  private readonly setTimer: (callback: () => void, ms: number) => void;
  private readonly retryBaseMs: number;
  private readonly retryMaxMs: number;

  constructor(
    private readonly url: string,
    private readonly handlers: ConnectionHandlers,
    options: ConnectionOptions = {},
  ) {
    this.makeSocket =
      options.makeSocket ??
      ((target) => new WebSocket(target) as unknown as SocketLike);
    this.requestTick = options.requestTick ?? defaultTick;
    this.setTimer = options.setTimer ?? ((cb, ms) => setTimeout(cb, ms));
    this.retryBaseMs = options.retryBaseMs ?? 500;
    this.retryMaxMs = options.retryMaxMs ?? 8000;
    this.retryMs = this.retryBaseMs;
  }

  connect(): void {
    if (this.stopped) {
      return;
    }
    this.status("connecting");
    const socket = this.makeSocket(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.retryMs = this.retryBaseMs;
      this.status("open");
    };
    socket.onmessage = (event) => this.receive(event.data);
    socket.onerror = () => {
      /* the close handler owns recovery */
    };
    socket.onclose = () => {
      this.socket = null;
      if (this.stopped) {
        this.status("closed");
        return;
      }
      this.status("retrying");
      const wait = this.retryMs;
      this.retryMs = Math.min(this.retryMs * 2, this.retryMaxMs);
      this.setTimer(() => this.connect(), wait);
    };
  }

  close(): void {
    this.stopped = true;
    if (this.socket) {
      this.socket.close();
    } else {
      this.status("closed");
    }
  }

  /** Forward one raw key press; the keymap lives server-side. */
  sendKey(key: string): void {
    if (key.length === 1 && this.socket) {
      this.socket.send(JSON.stringify({ type: "key", key }));
    }
  }

  /** Ask the service to change a session setting. */
  sendSet(field: string, value: number | string): void {
    if (this.socket) {
      this.socket.send(JSON.stringify({ type: "set", field, value }));
    }
  }

  private receive(text: string): void {
    let frame;
    try {
      frame = parseFrame(text);
    } catch (err) {
      if (err instanceof SceneParseError) {
        this.handlers.onError?.(err.message);
        return;
      }
      throw err;
    }
    if (frame.type === "error") {
      this.handlers.onError?.(frame.message);
      return;
    }
    this.pending = frame.doc;
    if (!this.tickScheduled) {
      this.tickScheduled = true;
      this.requestTick(() => this.applyPending());
    }
  }

  private applyPending(): void {
    this.tickScheduled = false;
    const doc = this.pending;
    this.pending = null;
    if (doc) {
      this.handlers.onScene(doc);
    }
  }

  private status(status: ConnectionStatus): void {
    this.handlers.onStatus?.(status);
  }
}
