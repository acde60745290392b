/** Constraints inspector: free-text search over the knowledge base plus a
 * detail pane for a single constraint.
 *
 * Search hits come from the service's substring filter; the inspector
 * never filters client-side, it only renders what the last non-stale
 * response returned.
 */

import { ApiClient, STALE } from "./api.js";
import type { Store } from "./state.js";
import type { ConstraintKind, ConstraintRow, RefKey } from "./types.js";
import { refKey } from "./types.js";

export class Inspector {
  private readonly api: ApiClient;
  private readonly store: Store;
  private readonly input: HTMLInputElement;
  private readonly status: HTMLElement;
  private readonly list: HTMLElement;
  private readonly detail: HTMLElement;
  private lastQuery: string | null = null;
  private rows: ConstraintRow[] = [];

  constructor(root: HTMLElement, api: ApiClient, store: Store) {
    this.api = api;
    this.store = store;

    this.input = document.createElement("input");
    this.input.type = "search";
    this.input.placeholder = "search constraints";
    this.input.className = "inspector-search";
    this.input.addEventListener("input", () => {
      store.setSearchQuery(this.input.value);
    });
    root.appendChild(this.input);

    this.status = document.createElement("div");
    this.status.className = "inspector-status";
    root.appendChild(this.status);

    this.list = document.createElement("ul");
    this.list.className = "inspector-results";
    root.appendChild(this.list);

    this.detail = document.createElement("div");
    this.detail.className = "inspector-detail";
    this.detail.hidden = true;
    root.appendChild(this.detail);
  }

  /** Fetch and render results for the query; stale responses are dropped
   * by the client, so rapid typing settles on the last query's rows. */
  async setQuery(query: string): Promise<void> {
    if (query === this.lastQuery) {
      return;
    }
    this.lastQuery = query;
    if (this.input.value !== query) {
      this.input.value = query;
    }
    const payload = await this.api.searchConstraints(query);
    if (payload === STALE) {
      return;
    }
    this.rows = payload.constraints;
    this.renderRows();
  }

  currentRows(): readonly ConstraintRow[] {
    return this.rows;
  }

  private renderRows(): void {
    this.list.replaceChildren();
    if (this.rows.length === 0) {
      this.status.textContent = "no constraints match";
      return;
    }
    this.status.textContent = `${this.rows.length} constraint${
      this.rows.length === 1 ? "" : "s"
    }`;
    for (const row of this.rows) {
      const item = document.createElement("li");
      item.className = "inspector-row";
      item.setAttribute("data-row-ref", refKey(row.kind, row.id));

      const head = document.createElement("div");
      head.className = "inspector-row-head";
      const name = document.createElement("span");
      name.className = "inspector-row-id";
      name.textContent = row.id;
      head.appendChild(name);
      const kind = document.createElement("span");
      kind.className = `chip chip-${row.kind}`;
      kind.textContent = row.kind;
      head.appendChild(kind);
      if (row.weight !== null) {
        const weight = document.createElement("span");
        weight.className = "chip chip-weight";
        weight.textContent = `w=${row.weight}`;
        head.appendChild(weight);
      }
      item.appendChild(head);

      const source = document.createElement("code");
      source.className = "inspector-row-source";
      source.textContent = row.source;
      item.appendChild(source);

      item.addEventListener("pointerenter", () => {
        this.store.setHoveredNode(refKey(row.kind, row.id));
      });
      item.addEventListener("pointerleave", () => {
        this.store.setHoveredNode(null);
      });
      item.addEventListener("click", () => {
        void this.showDetail(row.kind, row.id);
      });
      this.list.appendChild(item);
    }
  }

  async showDetail(kind: ConstraintKind, id: string): Promise<void> {
    const payload = await this.api.constraintDetail(kind, id);
    if (payload === STALE) {
      return;
    }
    const row = payload.constraint;
    this.detail.hidden = false;
    this.detail.replaceChildren();
    this.detail.setAttribute("data-detail-ref", refKey(kind, id));

    const title = document.createElement("h3");
    title.textContent = `${kind} ${id}`;
    this.detail.appendChild(title);

    if (row.doc) {
      const doc = document.createElement("p");
      doc.className = "inspector-doc";
      doc.textContent = row.doc;
      this.detail.appendChild(doc);
    }

    const source = document.createElement("pre");
    source.className = "inspector-source";
    source.textContent = payload.source;
    this.detail.appendChild(source);

    const meta = document.createElement("dl");
    meta.className = "inspector-meta";
    const push = (label: string, value: string) => {
      const dt = document.createElement("dt");
      dt.textContent = label;
      const dd = document.createElement("dd");
      dd.textContent = value;
      meta.appendChild(dt);
      meta.appendChild(dd);
    };
    if (row.weight !== null) {
      push("weight", String(row.weight));
    }
    if (row.hierarchy_path.length > 0) {
      push("hierarchy", row.hierarchy_path.join(" / "));
    }
    push("defined at", `line ${row.span.line}`);
    this.detail.appendChild(meta);

    const close = document.createElement("button");
    close.textContent = "close";
    close.className = "inspector-detail-close";
    close.addEventListener("click", () => {
      this.detail.hidden = true;
    });
    this.detail.appendChild(close);
  }

  highlight(ref: RefKey | null): void {
    for (const item of Array.from(this.list.children)) {
      const rowRef = (item as HTMLElement).getAttribute("data-row-ref");
      (item as HTMLElement).classList.toggle(
        "inspector-row-hot",
        ref !== null && rowRef === ref,
      );
    }
  }
}
