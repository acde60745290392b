/** Recommendation viewer: one card per evaluated spec, in rank order.
 *
 * Cards show a structured summary of the spec's facts (mark, channel
 * mappings) next to the report's cost and violation counts. Hovering a
 * card drives the hypergraph highlight; clicking toggles the card into
 * the multi-selection. When a constraint is hovered anywhere, the cards
 * whose reports violate it get framed.
 */

import { compareReports, violatedRefs } from "./linking.js";
import type { Selection } from "./state.js";
import { encodingLabel, summarizeSpec } from "./speccard.js";
import type { RefKey, ViolationReport } from "./types.js";
import { refKey } from "./types.js";

export interface CardModel {
  report: ViolationReport;
  source: string | null;
  fromEditor: boolean;
}

export interface CardCallbacks {
  onHover(spec: string | null): void;
  onToggleSelect(spec: string): void;
}

export class RecommendationsView {
  private readonly root: HTMLElement;
  private readonly callbacks: CardCallbacks;
  private cards: CardModel[] = [];

  constructor(root: HTMLElement, callbacks: CardCallbacks) {
    this.root = root;
    this.callbacks = callbacks;
  }

  /** Replace the card set; they render in evaluator rank order no matter
   * the insertion order. */
  setCards(cards: CardModel[]): void {
    this.cards = [...cards].sort((a, b) => compareReports(a.report, b.report));
    this.render();
  }

  rankedSpecs(): string[] {
    return this.cards.map((c) => c.report.spec);
  }

  private render(): void {
    this.root.replaceChildren();
    this.cards.forEach((card, index) => {
      this.root.appendChild(this.renderCard(card, index + 1));
    });
  }

  private renderCard(card: CardModel, rank: number): HTMLElement {
    const report = card.report;
    const node = document.createElement("article");
    node.className = "rec-card";
    node.setAttribute("data-spec", report.spec);

    const head = document.createElement("header");
    head.className = "rec-head";
    const rankBadge = document.createElement("span");
    rankBadge.className = "rec-rank";
    rankBadge.textContent = `#${rank}`;
    head.appendChild(rankBadge);
    const name = document.createElement("span");
    name.className = "rec-name";
    name.textContent = report.spec;
    head.appendChild(name);
    const cost = document.createElement("span");
    cost.className = "rec-cost";
    cost.setAttribute("data-cost", String(report.cost));
    cost.textContent = `cost ${report.cost}`;
    head.appendChild(cost);
    if (report.ill_formed) {
      const flag = document.createElement("span");
      flag.className = "rec-ill-formed";
      flag.textContent = "violates hard constraints";
      head.appendChild(flag);
    }
    if (card.fromEditor) {
      const flag = document.createElement("span");
      flag.className = "rec-from-editor";
      flag.textContent = "from editor";
      head.appendChild(flag);
    }
    node.appendChild(head);

    if (card.source !== null) {
      const summary = summarizeSpec(card.source);
      const body = document.createElement("div");
      body.className = "rec-summary";
      if (summary.mark !== null) {
        const mark = document.createElement("div");
        mark.className = "rec-mark";
        mark.textContent = `mark: ${summary.mark}`;
        body.appendChild(mark);
      }
      for (const row of summary.encodings) {
        const enc = document.createElement("div");
        enc.className = "rec-encoding";
        enc.textContent = encodingLabel(row);
        body.appendChild(enc);
      }
      if (summary.extras.length > 0) {
        const extras = document.createElement("div");
        extras.className = "rec-extras";
        extras.textContent = summary.extras.join(", ");
        body.appendChild(extras);
      }
      node.appendChild(body);
    }

    const violations = document.createElement("ul");
    violations.className = "rec-violations";
    for (const v of [...report.violations, ...report.hard_violations]) {
      const item = document.createElement("li");
      item.setAttribute("data-violation", refKey(v.kind, v.id));
      item.setAttribute("data-count", String(v.count));
      item.textContent =
        v.count === 1 ? v.id : `${v.id} ×${v.count}`;
      violations.appendChild(item);
    }
    node.appendChild(violations);

    node.addEventListener("pointerenter", () => this.callbacks.onHover(report.spec));
    node.addEventListener("pointerleave", () => this.callbacks.onHover(null));
    node.addEventListener("click", () => this.callbacks.onToggleSelect(report.spec));
    return node;
  }

  /** Reflect hover/selection state: selection chip colors on card borders,
   * frames on cards violating the hovered constraint. */
  applyState(
    selections: readonly Selection[],
    hoveredSpec: string | null,
    hoveredNode: RefKey | null,
  ): void {
    const selectionBySpec = new Map(selections.map((s) => [s.spec, s]));
    for (const element of Array.from(this.root.children)) {
      const card = element as HTMLElement;
      const spec = card.getAttribute("data-spec") ?? "";
      const model = this.cards.find((c) => c.report.spec === spec);

      const selection = selectionBySpec.get(spec);
      if (selection) {
        card.classList.add("rec-selected");
        card.style.borderColor = selection.color;
        card.setAttribute("data-selection-color", selection.color);
      } else {
        card.classList.remove("rec-selected");
        card.style.borderColor = "";
        card.removeAttribute("data-selection-color");
      }

      card.classList.toggle("rec-hovered", hoveredSpec === spec);

      const framed =
        hoveredNode !== null &&
        model !== undefined &&
        violatedRefs(model.report).has(hoveredNode);
      card.classList.toggle("rec-framed", framed);
    }
  }
}
