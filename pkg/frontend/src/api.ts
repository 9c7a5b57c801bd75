import type {
  CreateResponse,
  DispatchResponse,
  MoveDoc,
  SolveDoc,
  StateDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly reason?: string,
  ) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(
      response.status,
      (body as { error?: string }).error ?? response.statusText,
      (body as { reason?: string }).reason,
    );
  }
  return body as T;
}

/** What the controller needs from the service; ApiClient is the real one. */
export interface SessionApi {
  createSession(instanceText: string): Promise<CreateResponse>;
  state(sessionId: string): Promise<StateDoc>;
  moves(
    sessionId: string,
    annotate: boolean,
    signal?: AbortSignal,
  ): Promise<{ moves: MoveDoc[] }>;
  dispatch(sessionId: string, bus: string): Promise<DispatchResponse>;
  undo(sessionId: string): Promise<{ state: StateDoc }>;
  reset(sessionId: string): Promise<{ state: StateDoc }>;
  solveFromHere(sessionId: string): Promise<SolveDoc>;
}

/** Thin typed client for the /v1 session endpoints. */
export class ApiClient implements SessionApi {
  constructor(readonly base: string) {}

  private url(path: string): string {
    return `${this.base.replace(/\/$/, "")}${path}`;
  }

  async createSession(instanceText: string): Promise<CreateResponse> {
    return asJson(
      await fetch(this.url("/sessions"), { method: "POST", body: instanceText }),
    );
  }

  async state(sessionId: string): Promise<StateDoc> {
    return asJson(await fetch(this.url(`/sessions/${sessionId}/state`)));
  }

  async moves(
    sessionId: string,
    annotate: boolean,
    signal?: AbortSignal,
  ): Promise<{ moves: MoveDoc[] }> {
    const query = annotate ? "?annotate=1" : "";
    return asJson(
      await fetch(this.url(`/sessions/${sessionId}/moves${query}`), { signal }),
    );
  }

  async dispatch(sessionId: string, bus: string): Promise<DispatchResponse> {
    return asJson(
      await fetch(this.url(`/sessions/${sessionId}/dispatch`), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ bus }),
      }),
    );
  }

  async undo(sessionId: string): Promise<{ state: StateDoc }> {
    return asJson(
      await fetch(this.url(`/sessions/${sessionId}/undo`), { method: "POST" }),
    );
  }

  async reset(sessionId: string): Promise<{ state: StateDoc }> {
    return asJson(
      await fetch(this.url(`/sessions/${sessionId}/reset`), { method: "POST" }),
    );
  }

  async solveFromHere(sessionId: string): Promise<SolveDoc> {
    return asJson(
      await fetch(this.url(`/sessions/${sessionId}/solve`), { method: "POST" }),
    );
  }
}
