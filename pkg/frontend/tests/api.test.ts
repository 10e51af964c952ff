import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, ApiLog } from "../src/api.js";
import { fakeFetch, fixture } from "./helpers.js";

describe("ApiClient", () => {
  it("records response bodies verbatim before parsing", async () => {
    const client = new ApiClient("", fakeFetch());
    await client.maps();
    expect(client.log.entries).toHaveLength(1);
    expect(client.log.entries[0]!.text).toBe(fixture.calls["maps"]!.text);
  });

  it("throws coded errors for non-2xx responses", async () => {
    const client = new ApiClient("", fakeFetch());
    await expect(client.map("urn:su:doesNotExist")).rejects.toBeInstanceOf(ApiError);
    await expect(client.map("urn:su:doesNotExist")).rejects.toMatchObject({
      code: "UNKNOWN_ROUTE",
    });
  });

  it("url-encodes identifiers in paths", async () => {
    const client = new ApiClient("", fakeFetch());
    const label = await client.label("urn:eco:invasionSuccess");
    expect(label.label).toBe("invasion success");
  });
});

describe("ApiLog.recordedNumbers", () => {
  it("collects numbers from nested payloads", () => {
    const log = new ApiLog();
    log.record({
      method: "GET",
      path: "/x",
      body: null,
      status: 200,
      text: JSON.stringify({ a: 0.25, b: { c: [1, 2.5] }, d: "3" }),
    });
    const numbers = log.recordedNumbers();
    expect(numbers.has(0.25)).toBe(true);
    expect(numbers.has(2.5)).toBe(true);
    expect(numbers.has(3)).toBe(false); // strings stay strings
  });
});
