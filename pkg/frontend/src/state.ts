/**
 * Explorer view state: the loaded map, the selected focus pair with its
 * perspective and identification payloads, and the immutable what-if
 * session history. No causal computation happens here; the state only
 * holds what the API returned.
 */

import type { ApiClient } from "./api.js";
import type {
  IdentifyPayload,
  JunctionsPayload,
  MapAdjacency,
  PerspectivePayload,
  WhatIfPayload,
  WhatIfRequest,
} from "./types.js";

export interface FocusView {
  cause: string;
  effect: string;
  perspective: PerspectivePayload;
  identify: IdentifyPayload;
}

export interface HistoryEntry {
  readonly request: WhatIfRequest;
  readonly response: WhatIfPayload;
}

export class ExplorerState {
  mapId: string | null = null;
  adjacency: MapAdjacency | null = null;
  junctions: JunctionsPayload | null = null;
  labels = new Map<string, string>();
  focus: FocusView | null = null;
  private whatIfHistory: HistoryEntry[] = [];

  constructor(private readonly client: ApiClient) {}

  get history(): readonly HistoryEntry[] {
    return this.whatIfHistory;
  }

  labelOf(iri: string): string {
    return this.labels.get(iri) ?? iri.split(/[#/:]/).pop() ?? iri;
  }

  async loadMap(mapId: string): Promise<MapAdjacency> {
    const adjacency = await this.client.map(mapId);
    const junctions = await this.client.junctions(mapId);
    const labels = new Map<string, string>();
    for (const node of adjacency.nodes) {
      const payload = await this.client.label(node);
      labels.set(node, payload.label);
    }
    this.mapId = mapId;
    this.adjacency = adjacency;
    this.junctions = junctions;
    this.labels = labels;
    this.focus = null;
    return adjacency;
  }

  async selectFocus(cause: string, effect: string): Promise<FocusView> {
    if (this.mapId === null || this.adjacency === null) {
      throw new Error("no map loaded");
    }
    if (cause === effect) {
      throw new Error("cause and effect must be two different variables");
    }
    const perspective = await this.client.perspective(this.mapId, cause, effect);
    const identify = await this.client.identify(this.mapId, cause, effect);
    this.focus = { cause, effect, perspective, identify };
    return this.focus;
  }

  /** Edges lying on causal vs biasing perspective paths, for highlighting. */
  pathOverlay(): { causal: Set<string>; biasing: Set<string> } {
    const causal = new Set<string>();
    const biasing = new Set<string>();
    for (const path of this.focus?.perspective.paths ?? []) {
      for (const unit of path.units) {
        (path.causal ? causal : biasing).add(unit);
      }
    }
    return { causal, biasing };
  }

  async runWhatIf(request: WhatIfRequest): Promise<HistoryEntry> {
    const response = await this.client.whatif(request);
    const entry: HistoryEntry = Object.freeze({
      request: Object.freeze({ ...request }),
      response,
    });
    this.whatIfHistory = [...this.whatIfHistory, entry];
    return entry;
  }

  /** Re-issue a past query; on an unchanged store this returns the same payload. */
  async replay(entry: HistoryEntry): Promise<HistoryEntry> {
    return this.runWhatIf(entry.request);
  }
}

/** Parse "X=1,Y=0" assignment syntax shared with the CLI. */
export function parseAssignment(text: string): Record<string, string> {
  const out: Record<string, string> = {};
  for (const part of text.split(",")) {
    const trimmed = part.trim();
    if (!trimmed) continue;
    const eq = trimmed.indexOf("=");
    if (eq < 1) {
      throw new Error(`expected var=value, got "${trimmed}"`);
    }
    out[trimmed.slice(0, eq).trim()] = trimmed.slice(eq + 1).trim();
  }
  return out;
}
