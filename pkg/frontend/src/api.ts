/** Typed client for the session service JSON API. */

export type Mode = "ann-starts" | "ben-starts";
export type Player = "A" | "B";

export interface Witness {
  start: number;
  period: number;
}

export interface LastExchange {
  ben: string;
  ann: string | null;
}

export interface SessionView {
  id: string;
  mode: Mode;
  word: string[];
  players: Player[];
  turn: "ben" | null;
  status: "awaiting-ben" | "finished";
  finished_reason: string | null;
  witness: Witness | null;
  favourite_track: number;
  tau_counter: number;
  unary_squares: number[];
  threat: number;
  moves: number;
  created_at: string;
  last_exchange?: LastExchange;
}

export interface ApiError {
  error: string;
  message: string;
}

export type ApiResult<T> =
  | { ok: true; status: number; value: T }
  | { ok: false; status: number; error: ApiError };

/** Thin fetch wrapper; never throws, network failures map to status 0. */
export class SessionApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = globalThis.fetch.bind(globalThis),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<ApiResult<T>> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    } catch (cause) {
      const message = cause instanceof Error ? cause.message : String(cause);
      return { ok: false, status: 0, error: { error: "network", message } };
    }
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      body = null;
    }
    if (response.ok) {
      return { ok: true, status: response.status, value: body as T };
    }
    const error =
      body !== null && typeof body === "object" && "error" in (body as object)
        ? (body as ApiError)
        : { error: `http-${response.status}`, message: response.statusText };
    return { ok: false, status: response.status, error };
  }

  createSession(mode: Mode): Promise<ApiResult<SessionView>> {
    return this.request<SessionView>("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ mode }),
    });
  }

  getSession(id: string): Promise<ApiResult<SessionView>> {
    return this.request<SessionView>(`/sessions/${encodeURIComponent(id)}`);
  }

  /** Submit Ben's letter; `turn` is the expected word length, so a stale
   * submission is refused by the service with 409 instead of applying. */
  submitMove(id: string, letter: string, turn?: number): Promise<ApiResult<SessionView>> {
    const body: Record<string, unknown> = { letter };
    if (turn !== undefined) {
      body.turn = turn;
    }
    return this.request<SessionView>(`/sessions/${encodeURIComponent(id)}/moves`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }
}
