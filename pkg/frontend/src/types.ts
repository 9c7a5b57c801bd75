// Mirrors of the service's /v1 documents (docs/service-api.md).
// The client renders these verbatim and implements no game rules itself.

export interface SpotDoc {
  color: string;
  remaining: number;
}

export interface BusDoc {
  id: string;
  color: string;
  capacity: number;
  free: boolean;
}

export interface QueueDoc {
  runs: [string, number][];
  cursor: number;
  total: number;
}

export interface BoardingEventDoc {
  kind: "board" | "depart";
  spot: number;
  color: string;
  seatsLeft: number;
}

export interface HistoryEntryDoc {
  bus: string;
  events: BoardingEventDoc[];
}

export type Classification = "live" | "deadlock" | "empty";

export interface StateDoc {
  sessionId: string;
  classification: Classification;
  palette: string[];
  spots: (SpotDoc | null)[];
  queue: QueueDoc;
  graph: {
    buses: BusDoc[];
    blocks: [string, string][];
  };
  legalMoves: string[];
  history: HistoryEntryDoc[];
}

export type Annotation = "safe" | "losing" | "unknown";

export interface MoveDoc {
  bus: string;
  annotation?: Annotation;
}

export interface SolveDoc {
  verdict: "solvable" | "unsolvable" | "inconclusive";
  plan: string[] | null;
  stats: { statesVisited: number; peakFrontier: number; elapsed: number };
}

export interface DispatchResponse {
  state: StateDoc;
  events: BoardingEventDoc[];
}

export interface CreateResponse {
  sessionId: string;
  state: StateDoc;
  initialEvents: BoardingEventDoc[];
}
