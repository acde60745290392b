/** HTTP client for the knowledge-base service.
 *
 * Each logical endpoint keeps a request sequence number; a response that
 * arrives after a newer request for the same endpoint resolves to STALE
 * and the caller drops it (last write wins). Error responses become
 * ApiError values carrying the service's diagnostics payload.
 */

import type {
  ConstraintDetail,
  ConstraintKind,
  ConstraintsPayload,
  Diagnostic,
  LayoutModel,
  ReportsPayload,
  ViolationReport,
  WorkspaceInfo,
} from "./types.js";
import type { Filters } from "./state.js";

export const STALE = Symbol("stale");
export type Stale = typeof STALE;

export class ApiError extends Error {
  readonly status: number;
  readonly diagnostics: Diagnostic[];

  constructor(status: number, detail: string, diagnostics: Diagnostic[] = []) {
    super(detail);
    this.name = "ApiError";
    this.status = status;
    this.diagnostics = diagnostics;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export function layoutQuery(filters: Filters): string {
  const params = new URLSearchParams({
    type: filters.type,
    features: filters.featureKinds.join(","),
    min_degree: String(filters.minDegree),
  });
  return params.toString();
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;
  private readonly seq = new Map<string, number>();

  constructor(base = "", fetchFn?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  /** GET returning parsed JSON, or STALE when a newer request for the same
   * endpoint key was issued before this one resolved. */
  private async request<T>(
    key: string,
    path: string,
    init?: RequestInit,
  ): Promise<T | Stale> {
    const ticket = (this.seq.get(key) ?? 0) + 1;
    this.seq.set(key, ticket);
    const response = await this.fetchFn(this.base + path, init);
    if (this.seq.get(key) !== ticket) {
      return STALE;
    }
    if (!response.ok) {
      throw await toApiError(response);
    }
    return (await response.json()) as T;
  }

  model(): Promise<unknown | Stale> {
    return this.request("model", "/api/model");
  }

  layout(filters: Filters): Promise<LayoutModel | Stale> {
    return this.request<LayoutModel>("layout", `/api/layout?${layoutQuery(filters)}`);
  }

  reports(): Promise<ReportsPayload | Stale> {
    return this.request<ReportsPayload>("reports", "/api/reports");
  }

  searchConstraints(query: string): Promise<ConstraintsPayload | Stale> {
    const q = encodeURIComponent(query);
    return this.request<ConstraintsPayload>("search", `/api/constraints?q=${q}`);
  }

  allConstraints(): Promise<ConstraintsPayload | Stale> {
    return this.request<ConstraintsPayload>("constraints", "/api/constraints");
  }

  constraintDetail(
    kind: ConstraintKind,
    id: string,
  ): Promise<ConstraintDetail | Stale> {
    return this.request<ConstraintDetail>(
      "detail",
      `/api/constraints/${kind}/${encodeURIComponent(id)}`,
    );
  }

  workspace(): Promise<WorkspaceInfo | Stale> {
    return this.request<WorkspaceInfo>("workspace", "/api/workspace");
  }

  async specSource(name: string): Promise<string | Stale> {
    const key = `spec:${name}`;
    const ticket = (this.seq.get(key) ?? 0) + 1;
    this.seq.set(key, ticket);
    const response = await this.fetchFn(
      `${this.base}/api/specs/${encodeURIComponent(name)}`,
    );
    if (this.seq.get(key) !== ticket) {
      return STALE;
    }
    if (!response.ok) {
      throw await toApiError(response);
    }
    return response.text();
  }

  /** Evaluations are user-initiated one-shots; they never race each other
   * from the UI, so no sequence tracking. */
  async evalSpec(name: string, text: string): Promise<ViolationReport> {
    const response = await this.fetchFn(
      `${this.base}/api/eval?name=${encodeURIComponent(name)}`,
      {
        method: "POST",
        headers: { "content-type": "text/plain; charset=utf-8" },
        body: text,
      },
    );
    if (!response.ok) {
      throw await toApiError(response);
    }
    return (await response.json()) as ViolationReport;
  }
}

async function toApiError(response: Response): Promise<ApiError> {
  let detail = `${response.status} ${response.statusText}`;
  let diagnostics: Diagnostic[] = [];
  try {
    const payload = await response.json();
    if (typeof payload?.detail === "string") {
      detail = payload.detail;
    }
    if (Array.isArray(payload?.diagnostics)) {
      diagnostics = payload.diagnostics as Diagnostic[];
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  return new ApiError(response.status, detail, diagnostics);
}
