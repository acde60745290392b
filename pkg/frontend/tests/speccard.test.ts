import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import path from "node:path";
import { describe, expect, it } from "vitest";

import { encodingLabel, parseGroundFacts, summarizeSpec } from "../src/speccard.js";

const here = path.dirname(fileURLToPath(import.meta.url));
const specA = readFileSync(
  path.join(here, "..", "..", "fixtures", "mini", "specs", "a.lp"),
  "utf8",
);

describe("ground fact reader", () => {
  it("reads predicate, args, and arity", () => {
    expect(parseGroundFacts("mark(bar).\nchannel(e0,x).\n")).toEqual([
      { pred: "mark", args: ["bar"] },
      { pred: "channel", args: ["e0", "x"] },
    ]);
  });

  it("ignores comments and blank lines", () => {
    const facts = parseGroundFacts("% header\nmark(bar). % trailing\n\n% zero(e0).\n");
    expect(facts).toEqual([{ pred: "mark", args: ["bar"] }]);
  });

  it("accepts zero-arity facts and spread-out whitespace", () => {
    expect(parseGroundFacts("flag.\n  rows( 100 ) .")).toEqual([
      { pred: "flag", args: [] },
      { pred: "rows", args: ["100"] },
    ]);
  });
});

describe("spec summary", () => {
  it("summarizes the bundled fixture spec", () => {
    const summary = summarizeSpec(specA);
    expect(summary.mark).toBe("bar");
    const byName = new Map(summary.encodings.map((e) => [e.name, e]));
    const e0 = byName.get("e0");
    expect(e0).toBeDefined();
    expect(e0!.channel).toBe("x");
    expect(e0!.fieldType).toBe("quantitative");
    expect(e0!.flags).toContain("zero");
    const e2 = byName.get("e2");
    expect(e2!.channel).toBe("size");
    const e1 = byName.get("e1");
    expect(e1!.aggregate).toBe("sum");
  });

  it("keeps unknown facts as extras instead of dropping them", () => {
    const summary = summarizeSpec("mark(point).\nrows(100).\ncustom(e0,a,b).\n");
    expect(summary.extras).toContain("rows(100)");
    expect(summary.extras).toContain("custom(e0,a,b)");
  });

  it("groups facts by encoding in first-seen order", () => {
    const summary = summarizeSpec(
      "channel(e1,y).\nchannel(e0,x).\ntype(e1,ordinal).\n",
    );
    expect(summary.encodings.map((e) => e.name)).toEqual(["e1", "e0"]);
  });
});

describe("encoding labels", () => {
  it("renders the mapped pieces in a fixed order", () => {
    const summary = summarizeSpec(
      "channel(e0,x).\nfield(e0,price).\ntype(e0,quantitative).\naggregate(e0,mean).\nzero(e0).\n",
    );
    const row = summary.encodings[0]!;
    expect(encodingLabel(row)).toBe(
      "e0: x · price · quantitative · mean() · zero",
    );
  });
});
