import type {
  AdjacencyGuidePayload,
  CompactnessGuidePayload,
  CreateCloudResponse,
  DistortionGuidePayload,
  LayoutPayload,
  MutationResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(`HTTP ${status}: ${detail}`);
  }
}

/** Thin typed client over the engine's HTTP API. The UI never computes
 * layouts or metrics itself; everything it shows comes through here. */
export class SemcloudClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const body = await resp.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // keep the status text
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  createCloud(text: string, opts: { k?: number; seed?: number } = {}) {
    return this.request<CreateCloudResponse>("/clouds", {
      method: "POST",
      body: JSON.stringify({ text, ...opts }),
    });
  }

  action(sessionId: string, action: string, params: Record<string, unknown> = {}) {
    return this.request<MutationResponse>(`/sessions/${sessionId}/actions`, {
      method: "POST",
      body: JSON.stringify({ action, params }),
    });
  }

  getLayout(sessionId: string) {
    return this.request<LayoutPayload>(`/sessions/${sessionId}/layout`);
  }

  adjacencyGuide(sessionId: string, focus?: number | null) {
    const query = focus === null || focus === undefined ? "" : `?focus=${focus}`;
    return this.request<AdjacencyGuidePayload>(
      `/sessions/${sessionId}/guides/adjacency${query}`,
    );
  }

  distortionGuide(sessionId: string, focus: number, grid?: number) {
    const query = grid === undefined ? `?focus=${focus}` : `?focus=${focus}&grid=${grid}`;
    return this.request<DistortionGuidePayload>(
      `/sessions/${sessionId}/guides/distortion${query}`,
    );
  }

  compactnessGuide(sessionId: string) {
    return this.request<CompactnessGuidePayload>(
      `/sessions/${sessionId}/guides/compactness`,
    );
  }

  patchBoxes(sessionId: string, boxes: Record<string, { w: number; h: number }>) {
    return this.request<{ layout: LayoutPayload }>(`/sessions/${sessionId}/boxes`, {
      method: "PATCH",
      body: JSON.stringify({ boxes }),
    });
  }
}
