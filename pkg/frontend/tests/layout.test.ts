import { describe, expect, it } from "vitest";

import { canvasSize, layeredLayout, layerOf } from "../src/layout.js";
import type { MapAdjacency } from "../src/types.js";
import { payloadOf } from "./helpers.js";

const adjacency = payloadOf<MapAdjacency>("map");

describe("layerOf", () => {
  it("places every edge into a strictly later layer", () => {
    const layers = layerOf(adjacency.nodes, adjacency.edges);
    for (const edge of adjacency.edges) {
      expect(layers.get(edge.dst)!).toBeGreaterThan(layers.get(edge.src)!);
    }
  });

  it("gives roots layer zero and disconnected nodes layer zero", () => {
    const layers = layerOf(["a", "b", "lonely"], [{ src: "a", dst: "b" }]);
    expect(layers.get("a")).toBe(0);
    expect(layers.get("lonely")).toBe(0);
    expect(layers.get("b")).toBe(1);
  });

  it("uses the longest path when several exist", () => {
    const layers = layerOf(
      ["a", "m", "b"],
      [
        { src: "a", dst: "b" },
        { src: "a", dst: "m" },
        { src: "m", dst: "b" },
      ],
    );
    expect(layers.get("b")).toBe(2);
  });
});

describe("layeredLayout", () => {
  it("is deterministic and independent of edge order", () => {
    const forward = layeredLayout(adjacency.nodes, adjacency.edges);
    const reversed = layeredLayout(
      [...adjacency.nodes].reverse(),
      [...adjacency.edges].reverse(),
    );
    expect([...forward.entries()]).toEqual([...reversed.entries()]);
  });

  it("orders nodes within a layer by identifier", () => {
    const placed = layeredLayout(adjacency.nodes, adjacency.edges);
    const byLayer = new Map<number, { id: string; y: number }[]>();
    for (const node of placed.values()) {
      const row = byLayer.get(node.layer) ?? [];
      row.push({ id: node.id, y: node.y });
      byLayer.set(node.layer, row);
    }
    for (const row of byLayer.values()) {
      const sortedById = [...row].sort((a, b) => a.id.localeCompare(b.id));
      const sortedByY = [...row].sort((a, b) => a.y - b.y);
      expect(sortedByY).toEqual(sortedById);
    }
  });

  it("reports a canvas covering every node", () => {
    const placed = layeredLayout(adjacency.nodes, adjacency.edges);
    const { width, height } = canvasSize(placed);
    for (const node of placed.values()) {
      expect(node.x).toBeLessThan(width);
      expect(node.y).toBeLessThan(height);
    }
  });
});
