import type { SessionController } from "./controller.js";
import { layoutGraph } from "./layout.js";
import type { Annotation, StateDoc } from "./types.js";

const KNOWN_COLORS: Record<string, string> = {
  red: "#d7352c",
  green: "#1f9d55",
  blue: "#2a6fdb",
  yellow: "#e0a800",
  purple: "#8e44ad",
  orange: "#e67e22",
  pink: "#e05297",
  cyan: "#17a2b8",
};

export function cssColor(name: string): string {
  const known = KNOWN_COLORS[name.toLowerCase()];
  if (known) return known;
  let hash = 0;
  for (const ch of name) hash = (hash * 31 + ch.charCodeAt(0)) % 360;
  return `hsl(${hash}, 62%, 42%)`;
}

const BANNERS: Record<StateDoc["classification"], [string, string]> = {
  live: ["Your move", "banner-live"],
  deadlock: ["Deadlock — no move can help. Undo or reset.", "banner-deadlock"],
  empty: ["Cleared! Every passenger is on their way.", "banner-empty"],
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function render(root: HTMLElement, controller: SessionController): void {
  root.textContent = "";
  const state = controller.state;
  if (!state) {
    root.append(el("p", "hint", "Load an instance to start playing."));
    if (controller.lastError) {
      root.append(el("p", "error", controller.lastError));
    }
    return;
  }

  const [bannerText, bannerClass] = BANNERS[state.classification];
  root.append(el("div", `banner ${bannerClass}`, bannerText));
  if (controller.lastError) {
    root.append(el("p", "error", controller.lastError));
  }
  if (controller.overlay) {
    const { plan, next } = controller.overlay;
    root.append(
      el(
        "p",
        "overlay-note",
        `Solver line: ${plan
          .map((bus, i) => (i < next ? `✓${bus}` : bus))
          .join(" → ")}`,
      ),
    );
  }

  root.append(renderQueue(state));
  root.append(renderSpots(state));
  root.append(renderMoves(state, controller));
  root.append(renderGraph(state, controller));
  root.append(renderHistory(state));
}

function renderQueue(state: StateDoc): HTMLElement {
  const section = el("section", "queue");
  section.append(el("h2", undefined, `Queue (${state.queue.cursor}/${state.queue.total} boarded)`));
  const strip = el("div", "queue-strip");
  let position = 0;
  for (const [color, count] of state.queue.runs) {
    for (let i = 0; i < count; i++) {
      const dot = el("span", "passenger");
      dot.style.backgroundColor = cssColor(color);
      dot.title = color;
      if (position < state.queue.cursor) dot.classList.add("boarded");
      strip.append(dot);
      position += 1;
    }
  }
  section.append(strip);
  return section;
}

function renderSpots(state: StateDoc): HTMLElement {
  const section = el("section", "spots");
  section.append(el("h2", undefined, "Parking spots"));
  const row = el("div", "spot-row");
  state.spots.forEach((spot, index) => {
    const card = el("div", spot ? "spot occupied" : "spot empty");
    card.dataset.spot = String(index);
    if (spot) {
      card.style.borderColor = cssColor(spot.color);
      card.append(el("div", "spot-color", spot.color));
      card.append(el("div", "spot-seats", `${spot.remaining} seat${spot.remaining === 1 ? "" : "s"} left`));
    } else {
      card.append(el("div", "spot-color", "empty"));
    }
    row.append(card);
  });
  section.append(row);
  return section;
}

function badgeFor(annotation: Annotation | undefined): HTMLElement | null {
  if (!annotation) return null;
  return el("span", `badge badge-${annotation}`, annotation);
}

function renderMoves(state: StateDoc, controller: SessionController): HTMLElement {
  const section = el("section", "moves");
  section.append(el("h2", undefined, "Dispatch"));
  const row = el("div", "move-row");
  const enabled = new Set(controller.enabledMoves());
  for (const bus of state.graph.buses) {
    const button = el("button", "move-button", `${bus.id}`);
    button.dataset.bus = bus.id;
    button.style.backgroundColor = cssColor(bus.color);
    button.disabled = !enabled.has(bus.id);
    button.addEventListener("click", () => void controller.dispatch(bus.id));
    const wrap = el("div", "move-wrap");
    wrap.append(button);
    if (controller.annotationsOn && enabled.has(bus.id)) {
      const badge = badgeFor(controller.annotations?.get(bus.id));
      wrap.append(badge ?? el("span", "badge badge-pending", "…"));
    }
    row.append(wrap);
  }
  section.append(row);
  return section;
}

function renderGraph(state: StateDoc, controller: SessionController): HTMLElement {
  const section = el("section", "graph");
  section.append(el("h2", undefined, "Traffic"));
  const { positions, width, height } = layoutGraph(
    state.graph.buses,
    state.graph.blocks,
  );
  const svgns = "http://www.w3.org/2000/svg";
  const svg = document.createElementNS(svgns, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "graph-svg");

  for (const [blocked, blocker] of state.graph.blocks) {
    const from = positions.get(blocked);
    const to = positions.get(blocker);
    if (!from || !to) continue;
    const line = document.createElementNS(svgns, "line");
    line.setAttribute("x1", String(from.x));
    line.setAttribute("y1", String(from.y));
    line.setAttribute("x2", String(to.x));
    line.setAttribute("y2", String(to.y));
    line.setAttribute("class", "block-edge");
    svg.append(line);
  }

  const enabled = new Set(controller.enabledMoves());
  for (const bus of state.graph.buses) {
    const at = positions.get(bus.id);
    if (!at) continue;
    const group = document.createElementNS(svgns, "g");
    group.setAttribute("class", bus.free ? "bus free" : "bus stuck");
    const circle = document.createElementNS(svgns, "circle");
    circle.setAttribute("cx", String(at.x));
    circle.setAttribute("cy", String(at.y));
    circle.setAttribute("r", "24");
    circle.setAttribute("fill", cssColor(bus.color));
    if (bus.free) circle.setAttribute("stroke-width", "4");
    const label = document.createElementNS(svgns, "text");
    label.setAttribute("x", String(at.x));
    label.setAttribute("y", String(at.y + 4));
    label.setAttribute("text-anchor", "middle");
    label.textContent = bus.id;
    group.append(circle, label);
    if (enabled.has(bus.id)) {
      group.addEventListener("click", () => void controller.dispatch(bus.id));
      group.setAttribute("class", group.getAttribute("class") + " clickable");
    }
    svg.append(group);
  }
  section.append(svg);
  return section;
}

function renderHistory(state: StateDoc): HTMLElement {
  const section = el("section", "history");
  section.append(el("h2", undefined, "History"));
  const list = el("ol", "history-list");
  for (const entry of state.history) {
    const boards = entry.events.filter((e) => e.kind === "board").length;
    const departs = entry.events.filter((e) => e.kind === "depart").length;
    list.append(
      el(
        "li",
        undefined,
        `${entry.bus} — ${boards} boarded${departs ? `, ${departs} departed` : ""}`,
      ),
    );
  }
  section.append(list);
  return section;
}
