import { ApiError, SemcloudClient } from "./api.js";
import {
  buildScene,
  GhostPosition,
  GuidePayloads,
  SceneItem,
  wordAt,
} from "./scene.js";
import type {
  GuideName,
  LayoutPayload,
  MetricsPayload,
  MutationResponse,
  TermBox,
  ViewState,
} from "./types.js";

export type MeasureFn = (term: TermBox) => { w: number; h: number };

export interface EditorOptions {
  onRender?: (scene: SceneItem[]) => void;
  onError?: (message: string) => void;
}

/** UI controller: holds the view state, turns pointer gestures into service
 * mutations and keeps the rendered scene in sync with service responses.
 * All coordinates are layout-space; the canvas shell does the transform. */
export class CloudEditor {
  readonly view: ViewState = {
    sessionId: null,
    activeGuides: new Set<GuideName>(),
    mode: "plain-drag",
    fillOnMove: false,
    showBoxes: false,
    focusWord: null,
    metrics: { current: null, previous: null, best: null },
  };

  layout: LayoutPayload | null = null;
  guides: GuidePayloads = {};
  lastError: string | null = null;

  private drag: { id: number; ghost: GhostPosition } | null = null;

  constructor(
    private client: SemcloudClient,
    private opts: EditorOptions = {},
  ) {}

  /** Create a session. When a glyph measurer is supplied, the measured boxes
   * are patched to the service before the first frame so engine boxes match
   * rendered extents. */
  async open(text: string, cloudOpts: { k?: number; seed?: number } = {}, measure?: MeasureFn) {
    const created = await this.client.createCloud(text, cloudOpts);
    this.view.sessionId = created.session_id;
    this.layout = created.layout;
    this.view.metrics = { current: created.metrics, previous: null, best: null };
    if (measure) {
      const boxes: Record<string, { w: number; h: number }> = {};
      for (const t of created.layout.terms) boxes[String(t.id)] = measure(t);
      const patched = await this.client.patchBoxes(created.session_id, boxes);
      this.layout = patched.layout;
    }
    await this.refreshGuides();
    this.render();
  }

  // -- pointer gestures ----------------------------------------------------

  pointerDown(x: number, y: number): boolean {
    if (!this.layout) return false;
    const id = wordAt(this.layout, x, y);
    if (id === null) return false;
    this.drag = { id, ghost: { id, x, y } };
    return true;
  }

  pointerMove(x: number, y: number): void {
    if (!this.drag) return;
    this.drag.ghost = { id: this.drag.id, x, y };
    this.render();
  }

  /** Drag release: exactly one move mutation (plus fill_holes only when the
   * fill-on-move toggle is on). On failure the pre-drag layout stays. */
  async pointerUp(x: number, y: number): Promise<void> {
    if (!this.drag || !this.view.sessionId) {
      this.drag = null;
      return;
    }
    const word = this.drag.id;
    this.drag = null;
    const action = this.view.mode === "neighbors-follow" ? "move_with_neighbors" : "move";
    try {
      let resp = await this.client.action(this.view.sessionId, action, { word, x, y });
      if (this.view.fillOnMove) {
        resp = await this.client.action(this.view.sessionId, "fill_holes");
      }
      this.applyMutation(resp);
    } catch (err) {
      this.fail(err);
      this.render(); // drop the ghost, keep pre-drag positions
    }
  }

  contextMenu(x: number, y: number): Promise<void> {
    if (!this.layout) return Promise.resolve();
    const id = wordAt(this.layout, x, y);
    this.view.focusWord = id;
    return this.refreshGuides().then(() => this.render());
  }

  // -- toolbar operations --------------------------------------------------

  async undo(): Promise<void> {
    if (!this.view.sessionId) return;
    try {
      this.applyMutation(await this.client.action(this.view.sessionId, "undo"));
    } catch (err) {
      this.fail(err);
    }
  }

  async fillHoles(): Promise<void> {
    if (!this.view.sessionId) return;
    try {
      this.applyMutation(await this.client.action(this.view.sessionId, "fill_holes"));
    } catch (err) {
      this.fail(err);
    }
  }

  async saveState(name: string): Promise<void> {
    if (!this.view.sessionId) return;
    try {
      this.applyMutation(
        await this.client.action(this.view.sessionId, "save_state", { name }),
      );
    } catch (err) {
      this.fail(err);
    }
  }

  async loadState(name: string): Promise<void> {
    if (!this.view.sessionId) return;
    try {
      this.applyMutation(
        await this.client.action(this.view.sessionId, "load_state", { name }),
      );
    } catch (err) {
      this.fail(err);
    }
  }

  async toggleGuide(name: GuideName): Promise<void> {
    if (this.view.activeGuides.has(name)) {
      this.view.activeGuides.delete(name);
    } else {
      this.view.activeGuides.add(name);
    }
    await this.refreshGuides();
    this.render();
  }

  setMode(mode: "plain-drag" | "neighbors-follow"): void {
    this.view.mode = mode;
  }

  setFillOnMove(on: boolean): void {
    this.view.fillOnMove = on;
  }

  setShowBoxes(on: boolean): void {
    this.view.showBoxes = on;
    this.render();
  }

  // -- internals -----------------------------------------------------------

  scene(): SceneItem[] {
    if (!this.layout) return [];
    return buildScene(this.layout, this.view, this.guides, this.drag?.ghost ?? null);
  }

  private applyMutation(resp: MutationResponse): void {
    this.layout = resp.layout;
    this.view.metrics = {
      current: resp.metrics,
      previous: resp.previous_metrics,
      best: resp.best,
    };
    this.lastError = null;
    void this.refreshGuides().then(() => this.render());
  }

  private async refreshGuides(): Promise<void> {
    const sid = this.view.sessionId;
    if (!sid) return;
    const next: GuidePayloads = {};
    try {
      if (this.view.activeGuides.has("adjacency")) {
        next.adjacency = await this.client.adjacencyGuide(sid, this.view.focusWord);
      }
      if (this.view.activeGuides.has("distortion") && this.view.focusWord !== null) {
        next.distortion = await this.client.distortionGuide(sid, this.view.focusWord);
      }
      if (this.view.activeGuides.has("compactness")) {
        next.compactness = await this.client.compactnessGuide(sid);
      }
    } catch (err) {
      this.fail(err);
      return;
    }
    this.guides = next;
  }

  private render(): void {
    this.opts.onRender?.(this.scene());
  }

  private fail(err: unknown): void {
    this.lastError =
      err instanceof ApiError ? err.message : err instanceof Error ? err.message : String(err);
    this.opts.onError?.(this.lastError);
  }
}

export function metricPanelRows(view: ViewState): {
  name: string;
  current: number | null;
  previous: number | null;
  best: number | null;
}[] {
  const names: (keyof MetricsPayload & string)[] = ["ra", "distortion", "compactness"];
  return names.map((name) => ({
    name,
    current: view.metrics.current ? (view.metrics.current[name] as number) : null,
    previous: view.metrics.previous ? (view.metrics.previous[name] as number) : null,
    best: view.metrics.best ? view.metrics.best[name] ?? null : null,
  }));
}
