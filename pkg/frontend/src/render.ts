import type { SceneItem } from "./scene.js";
import type { TermBox } from "./types.js";

export interface Viewport {
  scale: number;
  offsetX: number;
  offsetY: number;
}

/** Fit the layout bounding box into the canvas with a margin. */
export function fitViewport(
  bbox: { x: number; y: number; w: number; h: number },
  canvasWidth: number,
  canvasHeight: number,
  margin = 20,
): Viewport {
  const scale = Math.min(
    (canvasWidth - 2 * margin) / Math.max(bbox.w, 1),
    (canvasHeight - 2 * margin) / Math.max(bbox.h, 1),
  );
  return {
    scale,
    offsetX: canvasWidth / 2 - (bbox.x + bbox.w / 2) * scale,
    offsetY: canvasHeight / 2 - (bbox.y + bbox.h / 2) * scale,
  };
}

export function toLayoutCoords(view: Viewport, px: number, py: number): [number, number] {
  return [(px - view.offsetX) / view.scale, (py - view.offsetY) / view.scale];
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  scene: SceneItem[],
  view: Viewport,
): void {
  ctx.save();
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  ctx.translate(view.offsetX, view.offsetY);
  ctx.scale(view.scale, view.scale);

  for (const item of scene) {
    switch (item.kind) {
      case "heatcell":
        ctx.globalAlpha = item.alpha;
        ctx.fillStyle = item.color;
        ctx.fillRect(item.x, item.y, item.size, item.size);
        ctx.globalAlpha = 1;
        break;
      case "rect":
        ctx.strokeStyle = item.color;
        ctx.lineWidth = 1 / view.scale;
        ctx.strokeRect(item.x, item.y, item.w, item.h);
        break;
      case "highlight":
        ctx.globalAlpha = 0.35;
        ctx.fillStyle = item.color;
        ctx.fillRect(item.x, item.y, item.w, item.h);
        ctx.globalAlpha = 1;
        break;
      case "segment":
        ctx.strokeStyle = item.color;
        ctx.lineWidth = item.width / view.scale;
        ctx.beginPath();
        ctx.moveTo(item.x1, item.y1);
        ctx.lineTo(item.x2, item.y2);
        ctx.stroke();
        break;
      case "word":
        ctx.globalAlpha = item.ghost ? 0.5 : 1;
        ctx.fillStyle = "#1a1a1a";
        ctx.font = `${item.fontSize}px sans-serif`;
        ctx.textAlign = "center";
        ctx.textBaseline = "middle";
        ctx.fillText(item.surface, item.x, item.y);
        ctx.globalAlpha = 1;
        break;
    }
  }
  ctx.restore();
}

/** Measure a term's real glyph extents with the canvas text metrics, so the
 * engine can settle against true box sizes instead of estimates. */
export function measureTerm(ctx: CanvasRenderingContext2D, term: TermBox): {
  w: number;
  h: number;
} {
  ctx.font = `${term.font_size}px sans-serif`;
  const m = ctx.measureText(term.surface);
  const ascent = m.actualBoundingBoxAscent ?? term.font_size * 0.8;
  const descent = m.actualBoundingBoxDescent ?? term.font_size * 0.2;
  return { w: m.width, h: ascent + descent };
}
