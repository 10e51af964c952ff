/**
 * Typed client over the service endpoints.
 *
 * Every response body is recorded verbatim in the ApiLog before parsing;
 * the view layer never computes numbers of its own, so everything on
 * screen must trace back to one of these records.
 */

import type {
  DsepPayload,
  IdentifyPayload,
  JunctionsPayload,
  LabelPayload,
  MapAdjacency,
  MapsPayload,
  PerspectivePayload,
  WhatIfPayload,
  WhatIfRequest,
} from "./types.js";

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
  status: number;
  text: string;
}

export class ApiLog {
  readonly entries: RecordedCall[] = [];

  record(call: RecordedCall): void {
    this.entries.push(Object.freeze({ ...call }));
  }

  /** Every number appearing anywhere in a recorded response body. */
  recordedNumbers(): Set<number> {
    const out = new Set<number>();
    const walk = (value: unknown): void => {
      if (typeof value === "number") {
        out.add(value);
      } else if (Array.isArray(value)) {
        value.forEach(walk);
      } else if (value !== null && typeof value === "object") {
        Object.values(value as Record<string, unknown>).forEach(walk);
      }
    };
    for (const entry of this.entries) {
      walk(JSON.parse(entry.text));
    }
    return out;
  }
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export interface FetchResponseLike {
  ok: boolean;
  status: number;
  text(): Promise<string>;
}

export interface FetchInit {
  method?: string;
  headers?: Record<string, string>;
  body?: string;
}

export type FetchLike = (input: string, init?: FetchInit) => Promise<FetchResponseLike>;

export class ApiClient {
  readonly log: ApiLog;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => globalThis.fetch(input, init),
    log?: ApiLog,
  ) {
    this.log = log ?? new ApiLog();
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: FetchInit =
      body === undefined
        ? { method }
        : {
            method,
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(body),
          };
    const response = await this.fetchFn(this.baseUrl + path, init);
    const text = await response.text();
    this.log.record({ method, path, body: body ?? null, status: response.status, text });
    if (!response.ok) {
      try {
        const parsed = JSON.parse(text) as { error?: { code?: string; message?: string } };
        throw new ApiError(
          parsed.error?.code ?? "HTTP_ERROR",
          parsed.error?.message ?? `request failed with status ${response.status}`,
        );
      } catch (err) {
        if (err instanceof ApiError) throw err;
        throw new ApiError("HTTP_ERROR", `request failed with status ${response.status}`);
      }
    }
    return JSON.parse(text) as T;
  }

  maps(): Promise<MapsPayload> {
    return this.request("GET", "/maps");
  }

  map(id: string): Promise<MapAdjacency> {
    return this.request("GET", `/maps/${encodeURIComponent(id)}`);
  }

  junctions(id: string): Promise<JunctionsPayload> {
    return this.request("GET", `/maps/${encodeURIComponent(id)}/junctions`);
  }

  label(iri: string): Promise<LabelPayload> {
    return this.request("GET", `/units/${encodeURIComponent(iri)}/label`);
  }

  perspective(mapId: string, cause: string, effect: string): Promise<PerspectivePayload> {
    return this.request("POST", `/maps/${encodeURIComponent(mapId)}/perspective`, {
      cause,
      effect,
    });
  }

  identify(mapId: string, cause: string, effect: string): Promise<IdentifyPayload> {
    return this.request("POST", "/identify", { map: mapId, cause, effect });
  }

  dsep(mapId: string, x: string, y: string, given: string[]): Promise<DsepPayload> {
    return this.request("POST", "/dsep", { map: mapId, x, y, given });
  }

  whatif(form: WhatIfRequest): Promise<WhatIfPayload> {
    return this.request("POST", "/whatif", form);
  }

  /** Static SCM fixtures bundled with the UI. */
  scmFixture(name: string): Promise<unknown> {
    return this.request("GET", `./fixtures/scm/${name}.json`);
  }
}
