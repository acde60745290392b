import { describe, expect, it } from "vitest";

import {
  compareReports,
  fullyShared,
  hoverOnlyRefs,
  rankReports,
  reportBadges,
  selectionStripes,
  specsViolating,
  violatedRefs,
} from "../src/linking.js";
import type { Selection } from "../src/state.js";
import type { Violation, ViolationReport } from "../src/types.js";

function soft(id: string, count: number, weight = 1): Violation {
  return { kind: "soft", id, count, weight, witnesses: [] };
}

function hard(id: string, count: number): Violation {
  return { kind: "hard", id, count, weight: null, witnesses: [] };
}

function report(
  spec: string,
  violations: Violation[],
  hardViolations: Violation[] = [],
  cost = 0,
): ViolationReport {
  return {
    schema_version: "asplens.report/1",
    spec,
    cost,
    ill_formed: hardViolations.length > 0,
    violations,
    hard_violations: hardViolations,
    diagnostics: [],
  };
}

function selection(spec: string, slot: number): Selection {
  return { spec, slot, color: `color${slot}`, dash: `dash${slot}` };
}

describe("badges", () => {
  it("copies report counts verbatim, in report order", () => {
    const r = report("a", [soft("bin", 3), soft("zero", 1)], [hard("log_zero", 2)]);
    expect(reportBadges(r)).toEqual([
      { ref: "soft:bin", count: 3 },
      { ref: "soft:zero", count: 1 },
      { ref: "hard:log_zero", count: 2 },
    ]);
  });

  it("collects violated refs across soft and hard sections", () => {
    const r = report("a", [soft("bin", 1)], [hard("stack_point", 1)]);
    expect(violatedRefs(r)).toEqual(new Set(["soft:bin", "hard:stack_point"]));
  });
});

describe("constraint hover", () => {
  const reports = [
    report("a", [soft("bin", 1), soft("zero", 2)]),
    report("b", [soft("bin", 1)]),
    report("c", [soft("log", 1)]),
  ];

  it("lists violating specs in report order", () => {
    expect(specsViolating(reports, "soft:bin")).toEqual(["a", "b"]);
    expect(specsViolating(reports, "soft:log")).toEqual(["c"]);
  });

  it("matches nothing for unknown constraints", () => {
    expect(specsViolating(reports, "soft:nonexistent")).toEqual([]);
  });
});

describe("selection stripes", () => {
  const reports = [
    report("a", [soft("bin", 1), soft("zero", 2)]),
    report("b", [soft("bin", 1), soft("log", 4)]),
  ];
  const selections = [selection("a", 0), selection("b", 1)];

  it("gives shared violations one stripe per selection, distinct styles", () => {
    const stripes = selectionStripes(reports, selections);
    const shared = stripes.get("soft:bin");
    expect(shared).toBeDefined();
    expect(shared!.length).toBe(2);
    expect(new Set(shared!.map((s) => s.color)).size).toBe(2);
    expect(new Set(shared!.map((s) => s.dash)).size).toBe(2);
    expect(shared!.map((s) => s.spec)).toEqual(["a", "b"]);
  });

  it("keeps exclusive violations single-striped with their counts", () => {
    const stripes = selectionStripes(reports, selections);
    expect(stripes.get("soft:zero")).toEqual([
      { spec: "a", color: "color0", dash: "dash0", count: 2 },
    ]);
    expect(stripes.get("soft:log")).toEqual([
      { spec: "b", color: "color1", dash: "dash1", count: 4 },
    ]);
  });

  it("ignores selections without a report", () => {
    const stripes = selectionStripes(reports, [selection("ghost", 0)]);
    expect(stripes.size).toBe(0);
  });

  it("identifies refs striped by every selection", () => {
    const stripes = selectionStripes(reports, selections);
    expect(fullyShared(stripes, 2)).toEqual(new Set(["soft:bin"]));
    expect(fullyShared(new Map(), 0)).toEqual(new Set());
  });
});

describe("hover against a selection", () => {
  it("isolates the hovered spec's extra violations", () => {
    const a = report("a", [soft("bin", 1), soft("zero", 1)]);
    const b = report("b", [soft("bin", 1), soft("zero", 1)]);
    const c = report("c", [soft("bin", 1), soft("zero", 1), soft("log", 1)]);
    const stripes = selectionStripes([a, b, c], [selection("a", 0), selection("b", 1)]);
    expect(hoverOnlyRefs(c, stripes)).toEqual(["soft:log"]);
  });
});

describe("rank order", () => {
  it("sorts well-formed before ill-formed, then cost, then name", () => {
    const clean1 = report("x", [], [], 10);
    const clean2 = report("m", [], [], 10);
    const cheap = report("z", [], [], 2);
    const broken = report("a", [], [hard("log_zero", 1)], 0);
    const ranked = rankReports([broken, clean1, clean2, cheap]);
    expect(ranked.map((r) => r.spec)).toEqual(["z", "m", "x", "a"]);
  });

  it("is antisymmetric and consistent", () => {
    const p = report("p", [], [], 1);
    const q = report("q", [], [], 1);
    expect(compareReports(p, q)).toBeLessThan(0);
    expect(compareReports(q, p)).toBeGreaterThan(0);
    expect(compareReports(p, p)).toBe(0);
  });
});
