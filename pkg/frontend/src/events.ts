import type { BoardingEventDoc, SpotDoc } from "./types.js";

/** One animation frame: spot contents plus how far the queue has advanced. */
export interface BoardingFrame {
  spots: (SpotDoc | null)[];
  cursorDelta: number;
}

/**
 * Expand a boarding log into per-event frames for animation.
 *
 * The log is authoritative: each "board" event advances the queue by exactly
 * one passenger and decrements one seat; "depart" clears a spot.  The final
 * frame's spots must therefore equal the state document the service sent
 * alongside the log.
 */
export function boardingFrames(
  spots: (SpotDoc | null)[],
  events: BoardingEventDoc[],
): BoardingFrame[] {
  const frames: BoardingFrame[] = [];
  let current = spots.slice();
  let boarded = 0;
  for (const event of events) {
    current = current.slice();
    if (event.kind === "board") {
      boarded += 1;
      current[event.spot] =
        event.seatsLeft > 0
          ? { color: event.color, remaining: event.seatsLeft }
          : { color: event.color, remaining: 0 };
    } else {
      current[event.spot] = null;
    }
    frames.push({ spots: current, cursorDelta: boarded });
  }
  return frames;
}

/** Queue advance implied by a boarding log: one per "board" event. */
export function cursorDelta(events: BoardingEventDoc[]): number {
  return events.filter((e) => e.kind === "board").length;
}
