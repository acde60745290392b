import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, layoutQuery, STALE } from "../src/api.js";
import { initialState } from "../src/state.js";

type Resolver = (response: Response) => void;

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/** fetch stub that parks every request until the test releases it. */
function deferredFetch(): {
  fetchFn: (input: string) => Promise<Response>;
  pending: { url: string; resolve: Resolver }[];
} {
  const pending: { url: string; resolve: Resolver }[] = [];
  const fetchFn = (input: string) =>
    new Promise<Response>((resolve) => {
      pending.push({ url: input, resolve });
    });
  return { fetchFn, pending };
}

describe("stale response discarding", () => {
  it("drops the older of two racing requests to the same endpoint", async () => {
    const { fetchFn, pending } = deferredFetch();
    const api = new ApiClient("", fetchFn);

    const first = api.searchConstraints("b");
    const second = api.searchConstraints("bin");
    expect(pending.length).toBe(2);

    // the slow first response arrives after the second was issued
    pending[0]!.resolve(jsonResponse({ constraints: [{ id: "stale" }] }));
    pending[1]!.resolve(jsonResponse({ constraints: [{ id: "fresh" }] }));

    expect(await first).toBe(STALE);
    const result = await second;
    expect(result).not.toBe(STALE);
    expect((result as { constraints: { id: string }[] }).constraints[0]!.id).toBe(
      "fresh",
    );
  });

  it("keeps a response even when it arrives late, if nothing raced it", async () => {
    const { fetchFn, pending } = deferredFetch();
    const api = new ApiClient("", fetchFn);
    const request = api.reports();
    pending[0]!.resolve(jsonResponse({ reports: [], schema_version: "x" }));
    expect(await request).not.toBe(STALE);
  });

  it("tracks endpoints independently", async () => {
    const { fetchFn, pending } = deferredFetch();
    const api = new ApiClient("", fetchFn);
    const layout = api.layout(initialState().filters);
    const search = api.searchConstraints("bin");
    // responses come back in reverse order; neither is stale because the
    // endpoints differ
    pending[1]!.resolve(jsonResponse({ constraints: [] }));
    pending[0]!.resolve(jsonResponse({ schema_version: "asplens.layout/1" }));
    expect(await layout).not.toBe(STALE);
    expect(await search).not.toBe(STALE);
  });
});

describe("error mapping", () => {
  it("carries the service detail and diagnostics", async () => {
    const api = new ApiClient("", async () =>
      jsonResponse(
        {
          detail: "unparseable fact body",
          diagnostics: [
            {
              severity: "error",
              message: "expected ), found end of input",
              span: { start: 8, end: 8, line: 1, col: 6 },
            },
          ],
        },
        400,
      ),
    );
    let caught: unknown = null;
    try {
      await api.evalSpec("q", "mark(bar");
    } catch (error) {
      caught = error;
    }
    expect(caught).toBeInstanceOf(ApiError);
    const apiError = caught as ApiError;
    expect(apiError.status).toBe(400);
    expect(apiError.message).toBe("unparseable fact body");
    expect(apiError.diagnostics[0]!.span.line).toBe(1);
    expect(apiError.diagnostics[0]!.span.col).toBe(6);
  });

  it("falls back to the status line for non-JSON bodies", async () => {
    const api = new ApiClient("", async () =>
      new Response("boom", { status: 500, statusText: "Internal Server Error" }),
    );
    await expect(api.reports()).rejects.toMatchObject({ status: 500 });
  });
});

describe("layout query", () => {
  it("serializes the filter fields the service expects", () => {
    const query = layoutQuery({
      type: "hard",
      featureKinds: ["predicates"],
      minDegree: 3,
      hierarchyPath: ["bin"],
    });
    const params = new URLSearchParams(query);
    expect(params.get("type")).toBe("hard");
    expect(params.get("features")).toBe("predicates");
    expect(params.get("min_degree")).toBe("3");
    // the hierarchy filter is client-side and never reaches the service
    expect([...params.keys()].sort()).toEqual(["features", "min_degree", "type"]);
  });
});
