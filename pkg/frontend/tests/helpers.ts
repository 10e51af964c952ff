/** Fake fetch replaying the recorded API responses byte-for-byte. */

import type { FetchInit, FetchLike, FetchResponseLike } from "../src/api.js";
import copyScm from "./fixtures/copy_scm.json";
import recorded from "./fixtures/recorded.json";

export interface RecordedFixture {
  map_id: string;
  calls: Record<
    string,
    { method: string; path: string; body: unknown; status: number; text: string }
  >;
}

export const fixture = recorded as RecordedFixture;

function respond(status: number, text: string): FetchResponseLike {
  return { ok: status >= 200 && status < 300, status, text: async () => text };
}

function canonical(value: unknown): string {
  if (Array.isArray(value)) {
    return `[${value.map(canonical).join(",")}]`;
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.entries(value as Record<string, unknown>)
      .sort(([a], [b]) => a.localeCompare(b))
      .map(([k, v]) => `${JSON.stringify(k)}:${canonical(v)}`);
    return `{${entries.join(",")}}`;
  }
  return JSON.stringify(value);
}

function deepEqual(a: unknown, b: unknown): boolean {
  return canonical(a) === canonical(b);
}

export function fakeFetch(
  overrides: Record<string, { status: number; text: string }> = {},
): FetchLike {
  return async (input: string, init?: FetchInit) => {
    const method = init?.method ?? "GET";
    const path = decodeURIComponent(input);
    const override = overrides[`${method} ${path}`];
    if (override) {
      return respond(override.status, override.text);
    }
    if (method === "GET" && path.startsWith("./fixtures/scm/")) {
      if (path.endsWith("copy.json")) {
        return respond(200, JSON.stringify(copyScm));
      }
      return respond(404, JSON.stringify({ error: { code: "UNKNOWN_FIXTURE", message: path } }));
    }
    const body = init?.body === undefined ? null : JSON.parse(init.body);
    for (const call of Object.values(fixture.calls)) {
      if (call.method === method && call.path === path && deepEqual(call.body, body)) {
        return respond(call.status, call.text);
      }
    }
    return respond(
      404,
      JSON.stringify({ error: { code: "UNKNOWN_ROUTE", message: `${method} ${path}` } }),
    );
  };
}

export function payloadOf<T>(key: string): T {
  const call = fixture.calls[key];
  if (!call) throw new Error(`no recorded call ${key}`);
  return JSON.parse(call.text) as T;
}

/** Let queued microtasks and zero-delay timers run. */
export async function flush(times = 4): Promise<void> {
  for (let i = 0; i < times; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}
