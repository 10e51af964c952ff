/**
 * Layered DAG layout with deterministic ordering.
 *
 * Longest-path layering; nodes within a layer are ordered by IRI so the
 * same map always renders identically (stable screenshots).
 */

export interface LayoutEdge {
  src: string;
  dst: string;
}

export interface PlacedNode {
  id: string;
  layer: number;
  x: number;
  y: number;
}

export const GEOMETRY = {
  layerGap: 220,
  rowGap: 90,
  marginX: 90,
  marginY: 60,
};

export function layerOf(nodes: string[], edges: LayoutEdge[]): Map<string, number> {
  const parents = new Map<string, string[]>();
  nodes.forEach((id) => parents.set(id, []));
  for (const edge of edges) {
    parents.get(edge.dst)?.push(edge.src);
  }
  const layers = new Map<string, number>();
  const visiting = new Set<string>();

  const resolve = (id: string): number => {
    const known = layers.get(id);
    if (known !== undefined) return known;
    if (visiting.has(id)) return 0; // cyclic input: clamp rather than recurse forever
    visiting.add(id);
    const sources = parents.get(id) ?? [];
    const layer = sources.length === 0 ? 0 : Math.max(...sources.map(resolve)) + 1;
    visiting.delete(id);
    layers.set(id, layer);
    return layer;
  };

  nodes.forEach(resolve);
  return layers;
}

export function layeredLayout(nodes: string[], edges: LayoutEdge[]): Map<string, PlacedNode> {
  const layers = layerOf(nodes, edges);
  const byLayer = new Map<number, string[]>();
  for (const id of [...nodes].sort()) {
    const layer = layers.get(id) ?? 0;
    const row = byLayer.get(layer) ?? [];
    row.push(id);
    byLayer.set(layer, row);
  }
  const tallest = Math.max(1, ...[...byLayer.values()].map((row) => row.length));
  const placed = new Map<string, PlacedNode>();
  for (const [layer, row] of byLayer) {
    const offset = ((tallest - row.length) * GEOMETRY.rowGap) / 2;
    row.forEach((id, index) => {
      placed.set(id, {
        id,
        layer,
        x: GEOMETRY.marginX + layer * GEOMETRY.layerGap,
        y: GEOMETRY.marginY + offset + index * GEOMETRY.rowGap,
      });
    });
  }
  return placed;
}

export function canvasSize(placed: Map<string, PlacedNode>): { width: number; height: number } {
  let width = GEOMETRY.marginX * 2;
  let height = GEOMETRY.marginY * 2;
  for (const node of placed.values()) {
    width = Math.max(width, node.x + GEOMETRY.marginX);
    height = Math.max(height, node.y + GEOMETRY.marginY);
  }
  return { width, height };
}
