import type {
  AdjacencyGuidePayload,
  CompactnessGuidePayload,
  DistortionGuidePayload,
  LayoutPayload,
  TermBox,
  ViewState,
} from "./types.js";

// Everything drawable is reduced to a flat display list first, so tests can
// assert rendering decisions without a real canvas.

export interface HeatCellItem {
  kind: "heatcell";
  x: number;
  y: number;
  size: number;
  color: string;
  alpha: number;
}

export interface SegmentItem {
  kind: "segment";
  from: number;
  to: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  color: string;
  width: number;
  realized: boolean;
}

export interface HighlightItem {
  kind: "highlight";
  word: number;
  x: number;
  y: number;
  w: number;
  h: number;
  color: string;
}

export interface RectItem {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  color: string;
}

export interface WordItem {
  kind: "word";
  id: number;
  x: number;
  y: number;
  surface: string;
  fontSize: number;
  ghost: boolean;
}

export type SceneItem = HeatCellItem | SegmentItem | HighlightItem | RectItem | WordItem;

export interface GuidePayloads {
  adjacency?: AdjacencyGuidePayload;
  distortion?: DistortionGuidePayload;
  compactness?: CompactnessGuidePayload;
}

export interface GhostPosition {
  id: number;
  x: number;
  y: number;
}

export const REALIZED_COLOR = "#2e7d32";
export const MISSED_COLOR = "#f9a825";
export const MISPLACED_COLOR = "#9e9e9e";
export const BOUNDARY_COLOR = "#ef6c00";
export const HEAT_LOW = { r: 27, g: 94, b: 32 }; // dark green
export const HEAT_HIGH = { r: 255, g: 249, b: 196 }; // pale yellow
export const HEAT_ALPHA = 0.5;

export function heatColor(value: number, min: number, max: number): string {
  const t = max > min ? (value - min) / (max - min) : 0.5;
  const r = Math.round(HEAT_LOW.r + (HEAT_HIGH.r - HEAT_LOW.r) * t);
  const g = Math.round(HEAT_LOW.g + (HEAT_HIGH.g - HEAT_LOW.g) * t);
  const b = Math.round(HEAT_LOW.b + (HEAT_HIGH.b - HEAT_LOW.b) * t);
  return `rgb(${r},${g},${b})`;
}

export function segmentWidth(weight: number): number {
  // width proportional to similarity, floored so hairline edges stay visible
  return Math.max(1, 6 * weight);
}

function byId(layout: LayoutPayload): Map<number, TermBox> {
  return new Map(layout.terms.map((t) => [t.id, t]));
}

function segment(
  terms: Map<number, TermBox>,
  u: number,
  v: number,
  weight: number,
  realized: boolean,
): SegmentItem | null {
  const a = terms.get(u);
  const b = terms.get(v);
  if (!a || !b) return null;
  return {
    kind: "segment",
    from: u,
    to: v,
    x1: a.x,
    y1: a.y,
    x2: b.x,
    y2: b.y,
    color: realized ? REALIZED_COLOR : MISSED_COLOR,
    width: segmentWidth(weight),
    realized,
  };
}

/** Build the draw-ordered display list for one frame.
 *
 * Order: heat map beneath everything, then compactness rectangle and
 * highlights, adjacency segments, optional word boxes, words on top. A ghost
 * position substitutes the dragged word's coordinates without mutating the
 * authoritative layout payload.
 */
export function buildScene(
  layout: LayoutPayload,
  view: ViewState,
  guides: GuidePayloads = {},
  ghost: GhostPosition | null = null,
): SceneItem[] {
  const items: SceneItem[] = [];
  const terms = byId(layout);

  const heat = guides.distortion;
  if (view.activeGuides.has("distortion") && heat) {
    const [ox, oy] = heat.origin;
    heat.cells.forEach((row, r) => {
      row.forEach((value, c) => {
        items.push({
          kind: "heatcell",
          x: ox + c * heat.cell_size,
          y: oy + r * heat.cell_size,
          size: heat.cell_size,
          color: heatColor(value, heat.min, heat.max),
          alpha: HEAT_ALPHA,
        });
      });
    });
    for (const id of heat.misplaced) {
      const t = terms.get(id);
      if (t) {
        items.push({
          kind: "highlight",
          word: id,
          x: t.x - t.w / 2,
          y: t.y - t.h / 2,
          w: t.w,
          h: t.h,
          color: MISPLACED_COLOR,
        });
      }
    }
  }

  const comp = guides.compactness;
  if (view.activeGuides.has("compactness") && comp) {
    items.push({
      kind: "rect",
      x: comp.bbox.x,
      y: comp.bbox.y,
      w: comp.bbox.w,
      h: comp.bbox.h,
      color: BOUNDARY_COLOR,
    });
    for (const id of comp.boundary_words) {
      const t = terms.get(id);
      if (t) {
        items.push({
          kind: "highlight",
          word: id,
          x: t.x - t.w / 2,
          y: t.y - t.h / 2,
          w: t.w,
          h: t.h,
          color: BOUNDARY_COLOR,
        });
      }
    }
  }

  const adj = guides.adjacency;
  if (view.activeGuides.has("adjacency") && adj) {
    for (const [u, v, w] of adj.realized) {
      const s = segment(terms, u, v, w, true);
      if (s) items.push(s);
    }
    if (adj.focus_word !== null && adj.focus_edges.length > 0) {
      // focus mode: the selected word's unrealized links replace top-missed
      for (const [u, v, w, realized] of adj.focus_edges) {
        if (realized) continue;
        const s = segment(terms, u, v, w, false);
        if (s) items.push(s);
      }
    } else {
      for (const [u, v, w] of adj.top_missed) {
        const s = segment(terms, u, v, w, false);
        if (s) items.push(s);
      }
    }
  }

  for (const t of layout.terms) {
    const isGhost = ghost !== null && ghost.id === t.id;
    const x = isGhost ? ghost.x : t.x;
    const y = isGhost ? ghost.y : t.y;
    if (view.showBoxes) {
      items.push({
        kind: "rect",
        x: x - t.w / 2,
        y: y - t.h / 2,
        w: t.w,
        h: t.h,
        color: "#cccccc",
      });
    }
    items.push({
      kind: "word",
      id: t.id,
      x,
      y,
      surface: t.surface,
      fontSize: t.font_size,
      ghost: isGhost,
    });
  }
  return items;
}

/** Hit test in layout coordinates; topmost (last drawn) word wins. */
export function wordAt(layout: LayoutPayload, x: number, y: number): number | null {
  for (let i = layout.terms.length - 1; i >= 0; i--) {
    const t = layout.terms[i];
    if (Math.abs(x - t.x) <= t.w / 2 && Math.abs(y - t.y) <= t.h / 2) {
      return t.id;
    }
  }
  return null;
}
