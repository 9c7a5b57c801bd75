import { describe, expect, it } from "vitest";

import { ApiError, type SessionApi } from "../src/api.js";
import { SessionController } from "../src/controller.js";
import type {
  CreateResponse,
  DispatchResponse,
  MoveDoc,
  SolveDoc,
  StateDoc,
} from "../src/types.js";

function stateDoc(overrides: Partial<StateDoc> = {}): StateDoc {
  return {
    sessionId: "s1",
    classification: "live",
    palette: ["red"],
    spots: [null],
    queue: { runs: [["red", 2]], cursor: 0, total: 2 },
    graph: {
      buses: [
        { id: "a", color: "red", capacity: 1, free: true },
        { id: "b", color: "red", capacity: 1, free: false },
      ],
      blocks: [["b", "a"]],
    },
    legalMoves: ["a"],
    history: [],
    ...overrides,
  };
}

class FakeApi implements SessionApi {
  dispatched: string[] = [];
  annotationCalls = 0;
  moveDocs: MoveDoc[] = [{ bus: "a", annotation: "safe" }];
  solveDoc: SolveDoc = {
    verdict: "solvable",
    plan: ["a", "b"],
    stats: { statesVisited: 1, peakFrontier: 1, elapsed: 0 },
  };
  nextState: StateDoc = stateDoc();

  async createSession(): Promise<CreateResponse> {
    return { sessionId: "s1", state: stateDoc(), initialEvents: [] };
  }
  async state(): Promise<StateDoc> {
    return this.nextState;
  }
  async moves(): Promise<{ moves: MoveDoc[] }> {
    this.annotationCalls += 1;
    return { moves: this.moveDocs };
  }
  async dispatch(_: string, bus: string): Promise<DispatchResponse> {
    if (bus === "b") throw new ApiError(409, "blocked", "not-free");
    this.dispatched.push(bus);
    const done = stateDoc({
      classification: "empty",
      legalMoves: [],
      queue: { runs: [["red", 2]], cursor: 2, total: 2 },
      graph: { buses: [], blocks: [] },
      history: [{ bus, events: [{ kind: "board", spot: 0, color: "red", seatsLeft: 0 }] }],
    });
    return {
      state: this.dispatched.length >= 2 ? done : stateDoc({ legalMoves: ["b"] }),
      events: [
        { kind: "board", spot: 0, color: "red", seatsLeft: 0 },
        { kind: "depart", spot: 0, color: "red", seatsLeft: 0 },
      ],
    };
  }
  async undo(): Promise<{ state: StateDoc }> {
    return { state: stateDoc() };
  }
  async reset(): Promise<{ state: StateDoc }> {
    return { state: stateDoc() };
  }
  async solveFromHere(): Promise<SolveDoc> {
    return this.solveDoc;
  }
}

describe("SessionController", () => {
  it("loads a session and exposes the service's legal moves", async () => {
    const controller = new SessionController(new FakeApi());
    expect(await controller.load("{}")).toBe(true);
    expect(controller.state?.sessionId).toBe("s1");
    expect(controller.enabledMoves()).toEqual(["a"]);
  });

  it("refuses to send moves the service did not list", async () => {
    const api = new FakeApi();
    const controller = new SessionController(api);
    await controller.load("{}");
    expect(await controller.dispatch("b")).toBe(false);
    expect(api.dispatched).toEqual([]);
    expect(controller.lastError).toContain("b");
  });

  it("applies dispatches and keeps the boarding frames for animation", async () => {
    const controller = new SessionController(new FakeApi());
    await controller.load("{}");
    expect(await controller.dispatch("a")).toBe(true);
    expect(controller.frames).toHaveLength(2);
    expect(controller.frames.at(-1)!.cursorDelta).toBe(1);
  });

  it("surfaces service refusals without changing state", async () => {
    const api = new FakeApi();
    const controller = new SessionController(api);
    await controller.load("{}");
    // bypass the legality guard to simulate a racing client
    controller.state!.legalMoves.push("b");
    const before = controller.state;
    expect(await controller.dispatch("b")).toBe(false);
    expect(controller.state).toBe(before);
    expect(controller.lastError).toContain("not-free");
  });

  it("allows only one mutating request at a time", async () => {
    const api = new FakeApi();
    const controller = new SessionController(api);
    await controller.load("{}");
    const first = controller.dispatch("a");
    const second = controller.dispatch("a");
    expect(await second).toBe(false); // rejected while the first is in flight
    expect(await first).toBe(true);
    expect(api.dispatched).toEqual(["a"]);
  });

  it("fetches annotations lazily and only when toggled on", async () => {
    const api = new FakeApi();
    const controller = new SessionController(api);
    await controller.load("{}");
    expect(api.annotationCalls).toBe(0);
    await controller.toggleAnnotations();
    expect(api.annotationCalls).toBe(1);
    expect(controller.annotations?.get("a")).toBe("safe");
    await controller.toggleAnnotations();
    expect(controller.annotations).toBeNull();
  });

  it("plays a solver overlay step by step and finishes clean", async () => {
    const api = new FakeApi();
    const controller = new SessionController(api);
    await controller.load("{}");
    expect(await controller.solveFromHere()).toBe(true);
    expect(controller.overlay?.plan).toEqual(["a", "b"]);
    expect(await controller.stepOverlay()).toBe(true);
    expect(controller.overlay?.next).toBe(1);
    // manual interference clears the overlay
    controller.state!.legalMoves.push("a");
    await controller.dispatch("a");
    expect(controller.overlay).toBeNull();
    expect(await controller.stepOverlay()).toBe(false);
  });

  it("reports unsolvable positions instead of overlaying", async () => {
    const api = new FakeApi();
    api.solveDoc = {
      verdict: "unsolvable",
      plan: null,
      stats: { statesVisited: 1, peakFrontier: 1, elapsed: 0 },
    };
    const controller = new SessionController(api);
    await controller.load("{}");
    expect(await controller.solveFromHere()).toBe(false);
    expect(controller.overlay).toBeNull();
    expect(controller.lastError).toContain("no winning line");
  });
});
