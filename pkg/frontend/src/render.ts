/**
 * DOM/SVG rendering. Pure view code: every number written into the
 * document comes straight out of an API payload.
 */

import { canvasSize, layeredLayout } from "./layout.js";
import type { ExplorerState } from "./state.js";
import type { HistoryEntry } from "./state.js";
import type { IdentifyPayload, JunctionView, MapEdge, WhatIfPayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const POLARITY_CLASS: Record<MapEdge["polarity"], string> = {
  Positive: "edge-positive",
  Negative: "edge-negative",
  Unsigned: "edge-unsigned",
};

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

export function renderMap(svg: SVGSVGElement, state: ExplorerState): void {
  const adjacency = state.adjacency;
  svg.replaceChildren();
  if (!adjacency) return;
  const placed = layeredLayout(adjacency.nodes, adjacency.edges);
  const { width, height } = canvasSize(placed);
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);

  const defs = svgEl("defs", {});
  const marker = svgEl("marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(svgEl("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "currentColor" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const overlay = state.pathOverlay();
  for (const edge of adjacency.edges) {
    const from = placed.get(edge.src);
    const to = placed.get(edge.dst);
    if (!from || !to) continue;
    const classes = ["edge", POLARITY_CLASS[edge.polarity]];
    if (overlay.causal.has(edge.unit)) classes.push("edge-causal-path");
    else if (overlay.biasing.has(edge.unit)) classes.push("edge-biasing-path");
    const line = svgEl("line", {
      x1: String(from.x + 70),
      y1: String(from.y),
      x2: String(to.x - 70),
      y2: String(to.y),
      "marker-end": "url(#arrow)",
    });
    line.setAttribute("class", classes.join(" "));
    line.dataset.unit = edge.unit;
    svg.appendChild(line);
  }

  for (const node of adjacency.nodes) {
    const pos = placed.get(node);
    if (!pos) continue;
    const group = svgEl("g", { class: "node" });
    group.dataset.node = node;
    if (state.focus && (node === state.focus.cause || node === state.focus.effect)) {
      group.classList.add("node-focus");
    }
    group.appendChild(
      svgEl("rect", {
        x: String(pos.x - 70),
        y: String(pos.y - 22),
        width: "140",
        height: "44",
        rx: "8",
      }),
    );
    const text = svgEl("text", {
      x: String(pos.x),
      y: String(pos.y + 4),
      "text-anchor": "middle",
    });
    const label = state.labelOf(node);
    text.textContent = label.length > 22 ? label.slice(0, 21) + "…" : label;
    group.appendChild(svgEl("title", {})).textContent = label;
    group.appendChild(text);
    svg.appendChild(group);
  }
}

export function renderJunctionBadges(container: HTMLElement, state: ExplorerState): void {
  container.replaceChildren();
  const junctions = state.junctions?.junctions ?? [];
  for (const junction of junctions) {
    const badge = document.createElement("span");
    badge.className = `badge badge-${junction.kind.toLowerCase()}`;
    badge.textContent = junctionText(junction, (iri) => state.labelOf(iri));
    container.appendChild(badge);
  }
}

export function junctionText(j: JunctionView, labelOf: (iri: string) => string): string {
  const arrow = { Chain: "→", Fork: "←·→", Collider: "→·←" }[j.kind];
  return `${j.kind} ${arrow} ${labelOf(j.v1)} · ${labelOf(j.v2)} · ${labelOf(j.v3)}`;
}

export function renderFocusPanel(container: HTMLElement, state: ExplorerState): void {
  container.replaceChildren();
  const focus = state.focus;
  if (!focus) {
    const hint = document.createElement("p");
    hint.className = "hint";
    hint.textContent = "Select a cause and an effect to extract a perspective.";
    container.appendChild(hint);
    return;
  }

  const heading = document.createElement("h3");
  heading.textContent = `${state.labelOf(focus.cause)} → ${state.labelOf(focus.effect)}`;
  container.appendChild(heading);

  const paths = document.createElement("ul");
  paths.className = "path-list";
  for (const path of focus.perspective.paths) {
    const item = document.createElement("li");
    item.className = path.causal ? "path-causal" : "path-biasing";
    item.textContent =
      (path.causal ? "causal: " : "biasing: ") +
      path.nodes.map((n) => state.labelOf(n)).join(" — ");
    paths.appendChild(item);
  }
  container.appendChild(paths);

  container.appendChild(renderAdjustmentChips(focus.identify));

  const estimand = document.createElement("code");
  estimand.className = "estimand";
  estimand.textContent = focus.identify.estimand;
  const estimandRow = document.createElement("p");
  estimandRow.append(`strategy ${focus.identify.strategy}: `, estimand);
  container.appendChild(estimandRow);
}

export function renderAdjustmentChips(identify: IdentifyPayload): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "chips";
  const title = document.createElement("span");
  title.className = "chips-title";
  title.textContent = "adjustment sets:";
  wrap.appendChild(title);
  if (identify.adjustment_sets_display.length === 0) {
    const none = document.createElement("span");
    none.className = "chip chip-empty";
    none.textContent = "none";
    wrap.appendChild(none);
    return wrap;
  }
  for (const set of identify.adjustment_sets_display) {
    const chip = document.createElement("span");
    chip.className = "chip";
    chip.textContent = `{${set.join(", ")}}`;
    wrap.appendChild(chip);
  }
  return wrap;
}

export function renderWhatIfResult(container: HTMLElement, payload: WhatIfPayload): void {
  container.replaceChildren();
  const caption = document.createElement("p");
  caption.className = "whatif-caption";
  const doText = Object.entries(payload.do)
    .map(([k, v]) => `${k} = ${v}`)
    .join(", ");
  caption.textContent = `P(${payload.query} | do(${doText}), observed)`;
  container.appendChild(caption);

  const list = document.createElement("div");
  list.className = "bar-list";
  for (const [value, probability] of Object.entries(payload.distribution)) {
    const row = document.createElement("div");
    row.className = "bar-row";
    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = `${payload.query} = ${value}`;
    const track = document.createElement("div");
    track.className = "bar-track";
    const fill = document.createElement("div");
    fill.className = "bar-fill";
    fill.style.width = `${probability * 100}%`;
    track.appendChild(fill);
    const amount = document.createElement("span");
    amount.className = "bar-value";
    amount.textContent = String(probability);
    row.append(label, track, amount);
    list.appendChild(row);
  }
  container.appendChild(list);
}

export function renderHistory(
  container: HTMLElement,
  history: readonly HistoryEntry[],
  onReplay: (entry: HistoryEntry) => void,
): void {
  container.replaceChildren();
  history.forEach((entry, index) => {
    const row = document.createElement("button");
    row.type = "button";
    row.className = "history-entry";
    const doText = Object.entries(entry.request.do)
      .map(([k, v]) => `${k}=${v}`)
      .join(",");
    const observeText = Object.entries(entry.request.observe)
      .map(([k, v]) => `${k}=${v}`)
      .join(",");
    row.textContent = `#${index + 1} do(${doText}) | saw ${observeText || "nothing"} ? ${entry.request.query}`;
    row.addEventListener("click", () => onReplay(entry));
    container.appendChild(row);
  });
}

export function toast(container: HTMLElement, code: string, message: string): void {
  const note = document.createElement("div");
  note.className = "toast";
  const strong = document.createElement("strong");
  strong.textContent = code;
  note.append(strong, ` ${message}`);
  container.appendChild(note);
  setTimeout(() => note.remove(), 6000);
}
