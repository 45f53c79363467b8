/** Thin typed wrapper over the session service's HTTP and WebSocket
 * endpoints.  The WebSocket constructor is injected so the same code runs
 * in the browser (window.WebSocket) and under node tests (the `ws`
 * package). */
import {
  ClientMessage,
  ServerMessage,
  SessionCreated,
  Snapshot,
} from "./protocol.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function jsonOrThrow(resp: Response): Promise<unknown> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = (await resp.json()) as { detail?: unknown };
      if (typeof body.detail === "string") detail = body.detail;
    } catch {
      /* non-JSON error body: keep the status text */
    }
    throw new ApiError(resp.status, detail);
  }
  return resp.json();
}

export interface SessionConfig {
  streetmap: unknown;
  n: number;
  sigma: number;
  rho: number;
}

export class SessionApi {
  constructor(private readonly baseUrl: string) {}

  async createSession(config: SessionConfig): Promise<SessionCreated> {
    const resp = await fetch(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(config),
    });
    return SessionCreated.parse(await jsonOrThrow(resp));
  }

  async submitBoards(
    sessionId: string,
    boards: unknown[],
  ): Promise<{ win: { copier: number } | null; snapshot: Snapshot }> {
    const resp = await fetch(`${this.baseUrl}/sessions/${sessionId}/boards`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ boards }),
    });
    const body = (await jsonOrThrow(resp)) as {
      win: { copier: number } | null;
      snapshot: unknown;
    };
    return { win: body.win, snapshot: Snapshot.parse(body.snapshot) };
  }

  async getSnapshot(sessionId: string): Promise<Snapshot> {
    const resp = await fetch(`${this.baseUrl}/sessions/${sessionId}`);
    return Snapshot.parse(await jsonOrThrow(resp));
  }

  async getTrace(sessionId: string): Promise<string> {
    const resp = await fetch(`${this.baseUrl}/sessions/${sessionId}/trace`);
    if (!resp.ok) throw new ApiError(resp.status, resp.statusText);
    return resp.text();
  }

  async teleport(
    sessionId: string,
    copier: number,
    target: { position?: unknown; board?: unknown },
  ): Promise<{ win: { copier: number } | null; snapshot: Snapshot }> {
    const resp = await fetch(
      `${this.baseUrl}/sessions/${sessionId}/debug/teleport`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ copier, ...target }),
      },
    );
    const body = (await jsonOrThrow(resp)) as {
      win: { copier: number } | null;
      snapshot: unknown;
    };
    return { win: body.win, snapshot: Snapshot.parse(body.snapshot) };
  }
}

/** Minimal browser-compatible WebSocket surface (the `ws` package also
 * implements it). */
export interface SocketLike {
  onopen: ((ev: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onerror: ((ev: unknown) => void) | null;
  onclose: ((ev: unknown) => void) | null;
  send(data: string): void;
  close(): void;
}

export type SocketCtor = new (url: string) => SocketLike;

/** Ordered play channel: sends client messages, queues validated server
 * messages for sequential consumption. */
export class PlaySocket {
  private queue: ServerMessage[] = [];
  private waiters: ((msg: ServerMessage) => void)[] = [];
  private socket: SocketLike | null = null;
  private closed = false;

  constructor(
    private readonly url: string,
    private readonly ctor: SocketCtor,
  ) {}

  connect(): Promise<void> {
    return new Promise((resolve, reject) => {
      const socket = new this.ctor(this.url);
      socket.onopen = () => resolve();
      socket.onerror = (ev) => reject(new Error(`websocket error: ${ev}`));
      socket.onclose = () => {
        this.closed = true;
      };
      socket.onmessage = (ev) => {
        const msg = ServerMessage.parse(JSON.parse(String(ev.data)));
        const waiter = this.waiters.shift();
        if (waiter) waiter(msg);
        else this.queue.push(msg);
      };
      this.socket = socket;
    });
  }

  send(msg: ClientMessage): void {
    if (!this.socket || this.closed) {
      throw new Error("socket is not open");
    }
    this.socket.send(JSON.stringify(msg));
  }

  next(): Promise<ServerMessage> {
    const queued = this.queue.shift();
    if (queued !== undefined) return Promise.resolve(queued);
    return new Promise((resolve) => this.waiters.push(resolve));
  }

  close(): void {
    this.socket?.close();
  }
}
