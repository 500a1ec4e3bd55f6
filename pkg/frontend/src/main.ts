import { CloudEditor, metricPanelRows } from "./app.js";
import { SemcloudClient } from "./api.js";
import { drawScene, fitViewport, measureTerm, toLayoutCoords, Viewport } from "./render.js";
import type { GuideName } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const canvas = el<HTMLCanvasElement>("cloud");
const ctx = canvas.getContext("2d");
if (!ctx) throw new Error("canvas 2d context unavailable");

let viewport: Viewport = { scale: 1, offsetX: 0, offsetY: 0 };

const editor = new CloudEditor(new SemcloudClient(""), {
  onRender: (scene) => {
    if (editor.layout) {
      viewport = fitViewport(editor.layout.bbox, canvas.width, canvas.height);
    }
    drawScene(ctx, scene, viewport);
    renderPanel();
  },
  onError: (message) => {
    const banner = el<HTMLDivElement>("error");
    banner.textContent = message;
    banner.style.display = "block";
    setTimeout(() => (banner.style.display = "none"), 4000);
  },
});

function renderPanel(): void {
  const rows = metricPanelRows(editor.view);
  el<HTMLTableSectionElement>("metric-rows").innerHTML = rows
    .map((r) => {
      const fmt = (v: number | null) => (v === null ? "–" : v.toFixed(4));
      return `<tr><td>${r.name}</td><td>${fmt(r.current)}</td><td>${fmt(
        r.previous,
      )}</td><td>${fmt(r.best)}</td></tr>`;
    })
    .join("");
}

function pointer(ev: MouseEvent): [number, number] {
  const rect = canvas.getBoundingClientRect();
  return toLayoutCoords(viewport, ev.clientX - rect.left, ev.clientY - rect.top);
}

canvas.addEventListener("mousedown", (ev) => {
  if (ev.button !== 0) return;
  const [x, y] = pointer(ev);
  editor.pointerDown(x, y);
});
canvas.addEventListener("mousemove", (ev) => {
  const [x, y] = pointer(ev);
  editor.pointerMove(x, y);
});
canvas.addEventListener("mouseup", (ev) => {
  if (ev.button !== 0) return;
  const [x, y] = pointer(ev);
  void editor.pointerUp(x, y);
});
canvas.addEventListener("contextmenu", (ev) => {
  ev.preventDefault();
  const [x, y] = pointer(ev);
  void editor.contextMenu(x, y);
});

for (const name of ["adjacency", "distortion", "compactness"] as GuideName[]) {
  el<HTMLInputElement>(`guide-${name}`).addEventListener("change", () => {
    void editor.toggleGuide(name);
  });
}
el<HTMLInputElement>("mode-neighbors").addEventListener("change", (ev) => {
  editor.setMode((ev.target as HTMLInputElement).checked ? "neighbors-follow" : "plain-drag");
});
el<HTMLInputElement>("fill-on-move").addEventListener("change", (ev) => {
  editor.setFillOnMove((ev.target as HTMLInputElement).checked);
});
el<HTMLInputElement>("show-boxes").addEventListener("change", (ev) => {
  editor.setShowBoxes((ev.target as HTMLInputElement).checked);
});
el<HTMLButtonElement>("undo").addEventListener("click", () => void editor.undo());
el<HTMLButtonElement>("fill").addEventListener("click", () => void editor.fillHoles());
el<HTMLButtonElement>("save").addEventListener("click", () => {
  const name = prompt("state name?");
  if (name) void editor.saveState(name);
});
el<HTMLButtonElement>("load").addEventListener("click", () => {
  const name = prompt("state name?");
  if (name) void editor.loadState(name);
});
el<HTMLButtonElement>("create").addEventListener("click", () => {
  const text = el<HTMLTextAreaElement>("text").value;
  if (!text.trim()) return;
  void editor.open(text, {}, (term) => measureTerm(ctx, term));
});
