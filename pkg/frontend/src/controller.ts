import { ApiError, type SessionApi } from "./api.js";
import { boardingFrames, type BoardingFrame } from "./events.js";
import type { Annotation, BoardingEventDoc, StateDoc } from "./types.js";

export interface PlanOverlay {
  plan: string[];
  next: number; // index of the next step to play
}

type Listener = () => void;

/**
 * Holds everything the page shows for one session and talks to the service.
 *
 * The service is the single source of truth: every displayed transition is
 * a service response, moves are only ever taken from `state.legalMoves`,
 * and at most one mutating request is in flight at a time.  Annotation
 * fetches are cancellable and re-issued per state.
 */
export class SessionController {
  state: StateDoc | null = null;
  lastError: string | null = null;
  annotationsOn = false;
  annotations: Map<string, Annotation> | null = null;
  annotationsPending = false;
  overlay: PlanOverlay | null = null;
  frames: BoardingFrame[] = [];
  busy = false;

  private annotationFetch: AbortController | null = null;
  private listeners: Listener[] = [];

  constructor(private readonly api: SessionApi) {}

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  private sessionId(): string {
    if (!this.state) throw new Error("no session loaded");
    return this.state.sessionId;
  }

  /** Moves the page may enable: exactly what the service reported legal. */
  enabledMoves(): string[] {
    if (!this.state || this.busy) return [];
    return this.state.legalMoves;
  }

  async load(instanceText: string): Promise<boolean> {
    if (this.busy) return false;
    this.busy = true;
    this.emit();
    try {
      const created = await this.api.createSession(instanceText);
      this.state = created.state;
      this.frames = boardingFrames(created.state.spots, []);
      this.overlay = null;
      this.lastError = null;
      await this.refreshAnnotations();
      return true;
    } catch (error) {
      this.lastError = describe(error);
      return false;
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  async dispatch(bus: string, fromOverlay = false): Promise<boolean> {
    if (this.busy || !this.state) return false;
    if (!this.state.legalMoves.includes(bus)) {
      this.lastError = `bus ${bus} is not dispatchable here`;
      this.emit();
      return false;
    }
    this.busy = true;
    this.emit();
    try {
      const before = this.state.spots;
      const response = await this.api.dispatch(this.sessionId(), bus);
      this.frames = boardingFrames(before, response.events);
      this.state = response.state;
      this.lastError = null;
      if (!fromOverlay) this.overlay = null;
      await this.refreshAnnotations();
      return true;
    } catch (error) {
      this.lastError = describe(error);
      return false;
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  async undo(): Promise<boolean> {
    return this.simpleMutation(() => this.api.undo(this.sessionId()));
  }

  async reset(): Promise<boolean> {
    return this.simpleMutation(() => this.api.reset(this.sessionId()));
  }

  private async simpleMutation(
    call: () => Promise<{ state: StateDoc }>,
  ): Promise<boolean> {
    if (this.busy || !this.state) return false;
    this.busy = true;
    this.emit();
    try {
      const response = await call();
      this.state = response.state;
      this.frames = [];
      this.overlay = null;
      this.lastError = null;
      await this.refreshAnnotations();
      return true;
    } catch (error) {
      this.lastError = describe(error);
      return false;
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  async toggleAnnotations(): Promise<void> {
    this.annotationsOn = !this.annotationsOn;
    if (!this.annotationsOn) {
      this.annotationFetch?.abort();
      this.annotations = null;
      this.annotationsPending = false;
    } else {
      await this.refreshAnnotations();
    }
    this.emit();
  }

  /** Fetch per-move verdicts for the current state; stale fetches abort. */
  private async refreshAnnotations(): Promise<void> {
    this.annotationFetch?.abort();
    this.annotations = null;
    if (!this.annotationsOn || !this.state) return;
    if (this.state.legalMoves.length === 0) {
      this.annotations = new Map();
      return;
    }
    const controller = new AbortController();
    this.annotationFetch = controller;
    this.annotationsPending = true;
    this.emit();
    try {
      const doc = await this.api.moves(this.sessionId(), true, controller.signal);
      if (controller.signal.aborted) return;
      this.annotations = new Map(
        doc.moves.map((m) => [m.bus, m.annotation ?? "unknown"]),
      );
    } catch (error) {
      if (!controller.signal.aborted) this.lastError = describe(error);
    } finally {
      if (this.annotationFetch === controller) {
        this.annotationsPending = false;
        this.annotationFetch = null;
      }
      this.emit();
    }
  }

  async solveFromHere(): Promise<boolean> {
    if (this.busy || !this.state) return false;
    this.busy = true;
    this.emit();
    try {
      const doc = await this.api.solveFromHere(this.sessionId());
      if (doc.verdict === "solvable" && doc.plan) {
        this.overlay = { plan: doc.plan, next: 0 };
        this.lastError = null;
      } else {
        this.overlay = null;
        this.lastError =
          doc.verdict === "unsolvable"
            ? "no winning line exists from here"
            : "solver budget exhausted before a verdict";
      }
      return this.overlay !== null;
    } catch (error) {
      this.lastError = describe(error);
      return false;
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  /** Play the next move of the solver overlay, if any. */
  async stepOverlay(): Promise<boolean> {
    if (!this.overlay || this.overlay.next >= this.overlay.plan.length) {
      return false;
    }
    const overlay = this.overlay;
    const bus = overlay.plan[overlay.next];
    const ok = await this.dispatch(bus, true);
    if (ok && this.overlay === overlay) {
      overlay.next += 1;
      if (overlay.next >= overlay.plan.length) this.overlay = null;
      this.emit();
    }
    return ok;
  }

  lastBoardingLog(): BoardingEventDoc[] {
    if (!this.state || this.state.history.length === 0) return [];
    return this.state.history[this.state.history.length - 1].events;
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) {
    return error.reason ? `${error.message} (${error.reason})` : error.message;
  }
  return error instanceof Error ? error.message : String(error);
}
