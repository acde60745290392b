/** Typed mirrors of the JSON payloads served by the knowledge-base service. */

export interface Span {
  start: number;
  end: number;
  line: number;
  col: number;
}

export interface Diagnostic {
  severity: "error" | "unsupported" | "lex";
  message: string;
  span: Span;
}

export type ConstraintKind = "soft" | "hard";

/** Stable string key for a constraint reference, used as a map key everywhere. */
export type RefKey = string;

export function refKey(kind: ConstraintKind, id: string): RefKey {
  return `${kind}:${id}`;
}

export interface LayoutConfig {
  R: number;
  R_max: number;
  arc_band: [number, number];
  arc_gap: number;
  weight_domain: [number, number];
  hard_color: string;
  start_angle: number;
  node_radius: number;
  font_size: number;
}

export interface ConstraintPlacement {
  kind: ConstraintKind;
  id: string;
  theta: number;
  x: number;
  y: number;
  color: string;
  weight: number | null;
  label_rotation: number;
  label_mirrored: boolean;
  label_anchor: [number, number];
}

export interface ArcPlacement {
  path: string[];
  segment: string;
  depth: number;
  start_angle: number;
  end_angle: number;
  r_inner: number;
  r_outer: number;
  color: string;
  mean_weight: number | null;
  label: string;
  label_rotation: number;
}

export interface FeaturePlacement {
  kind: string;
  name: string;
  arity: number;
  label: string;
  x: number;
  y: number;
  clamped: boolean;
  degree: number;
}

export interface EdgePath {
  feature: number;
  constraint: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  count: number;
}

export interface LayoutModel {
  schema_version: string;
  type: ConstraintKind;
  config: LayoutConfig;
  constraints: ConstraintPlacement[];
  arcs: ArcPlacement[];
  features: FeaturePlacement[];
  edges: EdgePath[];
  diagnostics: Diagnostic[];
}

export interface Violation {
  kind: ConstraintKind;
  id: string;
  count: number;
  weight: number | null;
  witnesses: Record<string, string | number>[];
}

export interface ViolationReport {
  schema_version: string;
  spec: string;
  cost: number;
  ill_formed: boolean;
  violations: Violation[];
  hard_violations: Violation[];
  diagnostics: Diagnostic[];
}

export interface ReportsPayload {
  schema_version: string;
  reports: ViolationReport[];
}

export interface ConstraintRow {
  kind: ConstraintKind;
  id: string;
  weight: number | null;
  hierarchy_path: string[];
  source: string;
  doc: string | null;
  span: Span;
  body: unknown[];
  head_extra_args: unknown[];
}

export interface ConstraintsPayload {
  schema_version: string;
  constraints: ConstraintRow[];
}

export interface ConstraintDetail {
  schema_version: string;
  constraint: ConstraintRow;
  source: string;
}

export interface WorkspaceInfo {
  schema_version: string;
  input_hash: string;
  kb: string;
  weights: string | null;
  specs: string[];
}

export interface ApiError {
  status: number;
  detail: string;
  diagnostics: Diagnostic[];
}
