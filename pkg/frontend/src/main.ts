import { ApiClient } from "./api.js";
import { SessionController } from "./controller.js";
import { render } from "./render.js";
import { SAMPLE_INSTANCE } from "./sample.js";

function defaultBase(): string {
  // Served by `busout serve --ui-dir`: same origin. Otherwise point the
  // field at a running service.
  return `${window.location.origin.replace(/\/$/, "")}/v1`;
}

function boot(): void {
  const board = document.getElementById("board");
  const baseInput = document.getElementById("base-url") as HTMLInputElement;
  const pasteArea = document.getElementById("paste") as HTMLTextAreaElement;
  const fileInput = document.getElementById("file") as HTMLInputElement;
  const loadSample = document.getElementById("load-sample") as HTMLButtonElement;
  const loadPasted = document.getElementById("load-pasted") as HTMLButtonElement;
  const undoButton = document.getElementById("undo") as HTMLButtonElement;
  const resetButton = document.getElementById("reset") as HTMLButtonElement;
  const annotateToggle = document.getElementById("annotate") as HTMLInputElement;
  const solveButton = document.getElementById("solve") as HTMLButtonElement;
  const stepButton = document.getElementById("step") as HTMLButtonElement;
  if (!board) throw new Error("missing #board container");

  baseInput.value = defaultBase();
  let controller = new SessionController(new ApiClient(baseInput.value));

  const repaint = () => {
    render(board, controller);
    const hasSession = controller.state !== null;
    undoButton.disabled = !hasSession || controller.busy;
    resetButton.disabled = !hasSession || controller.busy;
    solveButton.disabled = !hasSession || controller.busy;
    stepButton.disabled = !controller.overlay;
  };

  const attach = () => {
    controller.onChange(repaint);
    repaint();
  };

  baseInput.addEventListener("change", () => {
    controller = new SessionController(new ApiClient(baseInput.value));
    attach();
  });
  loadSample.addEventListener("click", () => void controller.load(SAMPLE_INSTANCE));
  loadPasted.addEventListener("click", () => void controller.load(pasteArea.value));
  fileInput.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    void file.text().then((text) => controller.load(text));
  });
  undoButton.addEventListener("click", () => void controller.undo());
  resetButton.addEventListener("click", () => void controller.reset());
  annotateToggle.addEventListener("change", () => void controller.toggleAnnotations());
  solveButton.addEventListener("click", () => void controller.solveFromHere());
  stepButton.addEventListener("click", () => void controller.stepOverlay());

  attach();
}

document.addEventListener("DOMContentLoaded", boot);
