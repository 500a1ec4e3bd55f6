// Wire types mirroring the engine's JSON interchange schemas.

export interface TermBox {
  id: number;
  x: number;
  y: number;
  w: number;
  h: number;
  surface: string;
  font_size: number;
}

export interface LayoutPayload {
  terms: TermBox[];
  bbox: { x: number; y: number; w: number; h: number };
}

export interface MetricsPayload {
  ra: number;
  distortion: number;
  compactness: number;
  realized_edges: number[][];
}

export interface MetricTriple {
  current: MetricsPayload | null;
  previous: MetricsPayload | null;
  best: Record<string, number> | null;
}

export interface CreateCloudResponse {
  session_id: string;
  graph: unknown;
  layout: LayoutPayload;
  metrics: MetricsPayload;
}

export interface MutationResponse {
  layout: LayoutPayload;
  metrics: MetricsPayload;
  previous_metrics: MetricsPayload | null;
  best: Record<string, number>;
}

export interface AdjacencyGuidePayload {
  realized: [number, number, number][];
  top_missed: [number, number, number][];
  focus_word: number | null;
  focus_edges: [number, number, number, boolean][];
}

export interface DistortionGuidePayload {
  origin: [number, number];
  cell_size: number;
  cells: number[][];
  focus_word: number;
  misplaced: number[];
  min: number;
  max: number;
}

export interface CompactnessGuidePayload {
  bbox: { x: number; y: number; w: number; h: number };
  boundary_words: number[];
}

export type GuideName = "adjacency" | "distortion" | "compactness";
export type InteractionMode = "plain-drag" | "neighbors-follow";

export interface ViewState {
  sessionId: string | null;
  activeGuides: Set<GuideName>;
  mode: InteractionMode;
  fillOnMove: boolean;
  showBoxes: boolean;
  focusWord: number | null;
  metrics: MetricTriple;
}
