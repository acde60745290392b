/** Brushing-and-linking derivations shared by all four views.
 *
 * Everything here is a pure projection of the service's violation
 * reports. Badge counts in particular are copied from the report rows,
 * never recomputed, so the UI can only ever show what the evaluator said.
 */

import type { Selection } from "./state.js";
import type { RefKey, Violation, ViolationReport } from "./types.js";
import { refKey } from "./types.js";

export interface Badge {
  ref: RefKey;
  count: number;
}

function allViolations(report: ViolationReport): Violation[] {
  return [...report.violations, ...report.hard_violations];
}

/** Constraint refs a spec violates, with the report's own counts, in the
 * report's own order. */
export function reportBadges(report: ViolationReport): Badge[] {
  return allViolations(report).map((v) => ({
    ref: refKey(v.kind, v.id),
    count: v.count,
  }));
}

export function violatedRefs(report: ViolationReport): Set<RefKey> {
  return new Set(allViolations(report).map((v) => refKey(v.kind, v.id)));
}

/** Specs whose reports violate the given constraint, in report order.
 * Unknown refs simply match nothing. */
export function specsViolating(
  reports: readonly ViolationReport[],
  ref: RefKey,
): string[] {
  return reports
    .filter((r) => violatedRefs(r).has(ref))
    .map((r) => r.spec);
}

export interface Stripe {
  spec: string;
  color: string;
  dash: string;
  count: number;
}

/** Stripes for the current multi-selection: every constraint violated by a
 * selected spec carries one stripe per violating selection, in selection
 * order. Constraints violated by several selections accumulate several
 * stripes with distinct colors and dash patterns. */
export function selectionStripes(
  reports: readonly ViolationReport[],
  selections: readonly Selection[],
): Map<RefKey, Stripe[]> {
  const bySpec = new Map(reports.map((r) => [r.spec, r]));
  const stripes = new Map<RefKey, Stripe[]>();
  for (const selection of selections) {
    const report = bySpec.get(selection.spec);
    if (!report) {
      continue;
    }
    for (const violation of allViolations(report)) {
      const ref = refKey(violation.kind, violation.id);
      const entry: Stripe = {
        spec: selection.spec,
        color: selection.color,
        dash: selection.dash,
        count: violation.count,
      };
      const existing = stripes.get(ref);
      if (existing) {
        existing.push(entry);
      } else {
        stripes.set(ref, [entry]);
      }
    }
  }
  return stripes;
}

/** Refs violated by every one of the n selections (the "common" stripes). */
export function fullyShared(
  stripes: Map<RefKey, Stripe[]>,
  selectionCount: number,
): Set<RefKey> {
  const shared = new Set<RefKey>();
  for (const [ref, entries] of stripes) {
    if (selectionCount > 0 && entries.length === selectionCount) {
      shared.add(ref);
    }
  }
  return shared;
}

/** Refs the hovered spec violates beyond the current stripes: with a
 * comparison selected, these are the hovered spec's distinguishing
 * violations and get highlighted alone. */
export function hoverOnlyRefs(
  report: ViolationReport,
  stripes: Map<RefKey, Stripe[]>,
): RefKey[] {
  return reportBadges(report)
    .map((b) => b.ref)
    .filter((ref) => !stripes.has(ref));
}

/** Rank comparison mirroring the evaluator's ordering: well-formed specs
 * first, then ascending cost, then spec name. */
export function compareReports(a: ViolationReport, b: ViolationReport): number {
  if (a.ill_formed !== b.ill_formed) {
    return a.ill_formed ? 1 : -1;
  }
  if (a.cost !== b.cost) {
    return a.cost - b.cost;
  }
  return a.spec < b.spec ? -1 : a.spec > b.spec ? 1 : 0;
}

export function rankReports(
  reports: readonly ViolationReport[],
): ViolationReport[] {
  return [...reports].sort(compareReports);
}
