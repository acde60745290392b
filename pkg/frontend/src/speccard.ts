/** Structured summaries of ground spec files for recommendation cards.
 *
 * Cards show the mark type and the channel mappings read straight from
 * the facts; no chart is rendered. The reader here only needs ground
 * facts (`name(arg,...).`), which is all a spec file may contain.
 */

export interface GroundFact {
  pred: string;
  args: string[];
}

const FACT_RE = /([a-z_][A-Za-z0-9_]*)\s*(?:\(([^()]*)\))?\s*\./g;

export function parseGroundFacts(source: string): GroundFact[] {
  const stripped = source
    .split("\n")
    .map((line) => {
      const cut = line.indexOf("%");
      return cut === -1 ? line : line.slice(0, cut);
    })
    .join("\n");
  const facts: GroundFact[] = [];
  for (const match of stripped.matchAll(FACT_RE)) {
    const args = (match[2] ?? "")
      .split(",")
      .map((a) => a.trim())
      .filter((a) => a.length > 0);
    facts.push({ pred: match[1] ?? "", args });
  }
  return facts;
}

export interface EncodingSummary {
  name: string;
  channel: string | null;
  fieldType: string | null;
  field: string | null;
  aggregate: string | null;
  bin: string | null;
  stack: string | null;
  flags: string[];
  stats: string[];
}

export interface SpecSummary {
  mark: string | null;
  encodings: EncodingSummary[];
  extras: string[];
}

const FLAG_PREDS = new Set(["log", "zero"]);
const STAT_PREDS = new Set(["entropy", "cardinality", "skew", "extent", "value"]);

function encodingFor(
  rows: Map<string, EncodingSummary>,
  order: string[],
  name: string,
): EncodingSummary {
  let row = rows.get(name);
  if (!row) {
    row = {
      name,
      channel: null,
      fieldType: null,
      field: null,
      aggregate: null,
      bin: null,
      stack: null,
      flags: [],
      stats: [],
    };
    rows.set(name, row);
    order.push(name);
  }
  return row;
}

export function summarizeSpec(source: string): SpecSummary {
  const rows = new Map<string, EncodingSummary>();
  const order: string[] = [];
  let mark: string | null = null;
  const extras: string[] = [];

  for (const fact of parseGroundFacts(source)) {
    const [first, second] = fact.args;
    if (fact.pred === "mark" && fact.args.length === 1 && first !== undefined) {
      mark = first;
      continue;
    }
    if (first === undefined) {
      extras.push(renderFact(fact));
      continue;
    }
    const row = () => encodingFor(rows, order, first);
    if (fact.pred === "channel" && second !== undefined) {
      row().channel = second;
    } else if (fact.pred === "type" && second !== undefined) {
      row().fieldType = second;
    } else if (fact.pred === "field" && second !== undefined) {
      row().field = second;
    } else if (fact.pred === "aggregate" && second !== undefined) {
      row().aggregate = second;
    } else if (fact.pred === "bin" && second !== undefined) {
      row().bin = second;
    } else if (fact.pred === "stack" && second !== undefined) {
      row().stack = second;
    } else if (FLAG_PREDS.has(fact.pred) && fact.args.length === 1) {
      row().flags.push(fact.pred);
    } else if (STAT_PREDS.has(fact.pred) && fact.args.length >= 2) {
      row().stats.push(`${fact.pred}=${fact.args.slice(1).join(",")}`);
    } else {
      extras.push(renderFact(fact));
    }
  }

  return {
    mark,
    encodings: order
      .map((name) => rows.get(name))
      .filter((row): row is EncodingSummary => row !== undefined),
    extras,
  };
}

function renderFact(fact: GroundFact): string {
  return fact.args.length === 0
    ? `${fact.pred}`
    : `${fact.pred}(${fact.args.join(",")})`;
}

/** One-line rendering of an encoding for the card body. */
export function encodingLabel(row: EncodingSummary): string {
  const parts: string[] = [];
  if (row.channel) {
    parts.push(row.channel);
  }
  if (row.field) {
    parts.push(row.field);
  }
  if (row.fieldType) {
    parts.push(row.fieldType);
  }
  if (row.aggregate) {
    parts.push(`${row.aggregate}()`);
  }
  if (row.bin) {
    parts.push(`bin=${row.bin}`);
  }
  if (row.stack) {
    parts.push(`stack=${row.stack}`);
  }
  parts.push(...row.flags);
  return `${row.name}: ${parts.join(" · ")}`;
}
