/** Payload shapes of the HTTP/JSON service the explorer consumes. */

export interface MapsPayload {
  maps: string[];
}

export interface MapEdge {
  src: string;
  dst: string;
  unit: string;
  polarity: "Positive" | "Negative" | "Unsigned";
}

export interface MapAdjacency {
  id: string;
  nodes: string[];
  edges: MapEdge[];
  correlations: MapEdge[];
  acyclic: boolean;
}

export interface JunctionView {
  kind: "Chain" | "Fork" | "Collider";
  v1: string;
  v2: string;
  v3: string;
  units: string[];
}

export interface JunctionsPayload {
  map: string;
  junctions: JunctionView[];
}

export interface LabelPayload {
  id: string;
  label: string;
}

export interface PerspectivePath {
  nodes: string[];
  units: string[];
  causal: boolean;
}

export interface PerspectivePayload {
  map: string;
  perspective: string;
  kind: string;
  cause: string;
  effect: string;
  members: string[];
  paths: PerspectivePath[];
}

export interface IdentifyPayload {
  map: string;
  strategy: string;
  cause: string;
  effect: string;
  identified: boolean;
  estimand: string;
  adjustment_sets: string[][];
  adjustment_sets_display: string[][];
  mediators: string[];
  instruments: string[];
  perspective: string | null;
}

export interface WhatIfRequest {
  scm: unknown;
  observe: Record<string, string>;
  do: Record<string, string>;
  query: string;
}

export interface WhatIfPayload {
  observe: Record<string, string>;
  do: Record<string, string>;
  query: string;
  distribution: Record<string, number>;
}

export interface DsepPayload {
  map: string;
  x: string;
  y: string;
  given: string[];
  d_separated: boolean;
}

export interface ApiErrorPayload {
  error: { code: string; message: string };
}
