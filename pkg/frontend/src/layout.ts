import type { BusDoc } from "./types.js";

export interface NodePosition {
  x: number;
  y: number;
  layer: number;
}

export interface GraphLayout {
  positions: Map<string, NodePosition>;
  width: number;
  height: number;
}

const COLUMN = 130;
const ROW = 66;
const MARGIN = 60;

/**
 * Layered left-to-right layout of the blocking graph.
 *
 * A bus's layer is the length of its longest chain of blockers, so free
 * buses sit in the front-most column and every edge points toward an
 * earlier column.  Within a layer, buses keep their declaration order.
 */
export function layoutGraph(
  buses: BusDoc[],
  blocks: [string, string][],
): GraphLayout {
  const blockers = new Map<string, string[]>();
  for (const bus of buses) blockers.set(bus.id, []);
  for (const [blocked, blocker] of blocks) {
    blockers.get(blocked)?.push(blocker);
  }
  const layer = new Map<string, number>();
  const resolve = (id: string, trail: Set<string>): number => {
    const known = layer.get(id);
    if (known !== undefined) return known;
    if (trail.has(id)) return 0; // cycles only occur in ineligible uploads
    trail.add(id);
    const above = (blockers.get(id) ?? []).map((b) => resolve(b, trail));
    trail.delete(id);
    const value = above.length ? Math.max(...above) + 1 : 0;
    layer.set(id, value);
    return value;
  };
  for (const bus of buses) resolve(bus.id, new Set());

  const rows = new Map<number, number>();
  const positions = new Map<string, NodePosition>();
  let maxLayer = 0;
  let maxRow = 0;
  for (const bus of buses) {
    const l = layer.get(bus.id) ?? 0;
    const row = rows.get(l) ?? 0;
    rows.set(l, row + 1);
    positions.set(bus.id, {
      x: MARGIN + l * COLUMN,
      y: MARGIN + row * ROW,
      layer: l,
    });
    maxLayer = Math.max(maxLayer, l);
    maxRow = Math.max(maxRow, row);
  }
  return {
    positions,
    width: MARGIN * 2 + maxLayer * COLUMN,
    height: MARGIN * 2 + maxRow * ROW,
  };
}
