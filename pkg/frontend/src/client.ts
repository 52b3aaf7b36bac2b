// Session client: one WebSocket speaking newline-delimited records, with
// automatic reconnect and exponential backoff. The socket construction is
// injected so tests (and the node-based scripted session) can supply a
// non-browser implementation.

import { parseRecord, ProtocolError, SessionRecord } from "./protocol.js";

export interface WebSocketLike {
  // handler params typed loosely so both the DOM WebSocket and the node
  // "ws" client fit structurally
  onopen: ((ev: any) => void) | null;
  onmessage: ((ev: any) => void) | null;
  onclose: ((ev: any) => void) | null;
  onerror: ((ev: any) => void) | null;
  send(data: string): void;
  close(): void;
}

export type SocketFactory = (url: string) => WebSocketLike;

export type ClientStatus = "connecting" | "connected" | "reconnecting" | "closed";

export interface ClientHandlers {
  onRecord?: (record: SessionRecord) => void;
  onStatus?: (status: ClientStatus, detail?: string) => void;
  onBadRecord?: (error: ProtocolError) => void;
}

const BACKOFF_MIN_MS = 500;
const BACKOFF_MAX_MS = 8000;

export class SessionClient {
  private socket: WebSocketLike | null = null;
  private backoffMs = BACKOFF_MIN_MS;
  private closed = false;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly url: string,
    private readonly factory: SocketFactory,
    private readonly handlers: ClientHandlers = {},
  ) {}

  connect(): void {
    this.closed = false;
    this.open();
  }

  close(): void {
    this.closed = true;
    if (this.reconnectTimer !== null) {
      clearTimeout(this.reconnectTimer);
      this.reconnectTimer = null;
    }
    this.socket?.close();
    this.socket = null;
    this.handlers.onStatus?.("closed");
  }

  /** Send one line (a trailing newline is added if missing). */
  sendLine(line: string): void {
    if (this.socket === null) return;
    try {
      this.socket.send(line.endsWith("\n") ? line : line + "\n");
    } catch {
      // connection raced shut; the reconnect path takes over
    }
  }

  private open(): void {
    this.handlers.onStatus?.(this.socket === null ? "connecting" : "reconnecting");
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.backoffMs = BACKOFF_MIN_MS;
      this.handlers.onStatus?.("connected");
    };
    socket.onmessage = (ev) => {
      const text = typeof ev.data === "string" ? ev.data : String(ev.data);
      for (const line of text.split("\n")) {
        if (!line.trim()) continue;
        try {
          this.handlers.onRecord?.(parseRecord(line));
        } catch (err) {
          if (err instanceof ProtocolError) {
            this.handlers.onBadRecord?.(err);
          } else {
            throw err;
          }
        }
      }
    };
    socket.onerror = () => {
      // the close handler does the scheduling
    };
    socket.onclose = () => {
      if (this.closed) return;
      this.handlers.onStatus?.("reconnecting", `retry in ${this.backoffMs} ms`);
      this.reconnectTimer = setTimeout(() => {
        this.reconnectTimer = null;
        if (!this.closed) this.open();
      }, this.backoffMs);
      this.backoffMs = Math.min(this.backoffMs * 2, BACKOFF_MAX_MS);
    };
  }
}
