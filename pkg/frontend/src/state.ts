/** Central view state and its invariants.
 *
 * All mutation goes through Store methods so the invariants hold by
 * construction: at most MAX_SELECTIONS simultaneous selections, each with
 * a distinct palette color; panel visibility and sizes live in their own
 * field and no panel action ever touches filters or selections.
 */

import { colorForSlot, dashForSlot, firstFreeSlot, MAX_SELECTIONS } from "./palette.js";
import type { ConstraintKind, RefKey } from "./types.js";

export interface Selection {
  spec: string;
  slot: number;
  color: string;
  dash: string;
}

export interface Filters {
  type: ConstraintKind;
  featureKinds: string[];
  minDegree: number;
  hierarchyPath: string[];
}

export type PanelId = "editor" | "recommendations" | "viewer" | "inspector";

export interface PanelState {
  visible: boolean;
  size: number;
}

export interface ViewState {
  selections: Selection[];
  hoveredSpec: string | null;
  hoveredNode: RefKey | null;
  hoveredFeature: string | null;
  filters: Filters;
  panels: Record<PanelId, PanelState>;
  searchQuery: string;
  notice: string | null;
}

export function initialState(): ViewState {
  return {
    selections: [],
    hoveredSpec: null,
    hoveredNode: null,
    hoveredFeature: null,
    filters: {
      type: "soft",
      featureKinds: ["predicates", "variables"],
      minDegree: 2,
      hierarchyPath: [],
    },
    panels: {
      editor: { visible: true, size: 220 },
      recommendations: { visible: true, size: 320 },
      viewer: { visible: true, size: 640 },
      inspector: { visible: true, size: 320 },
    },
    searchQuery: "",
    notice: null,
  };
}

type Listener = (state: ViewState) => void;

export class Store {
  private state: ViewState;
  private listeners: Listener[] = [];

  constructor(state: ViewState = initialState()) {
    this.state = state;
  }

  get(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private commit(next: ViewState): void {
    this.state = next;
    for (const listener of this.listeners) {
      listener(next);
    }
  }

  /** Select a spec if unselected, deselect it otherwise. Returns false when
   * the palette is exhausted and the selection was refused. */
  toggleSelection(spec: string): boolean {
    const existing = this.state.selections.find((s) => s.spec === spec);
    if (existing) {
      this.commit({
        ...this.state,
        selections: this.state.selections.filter((s) => s.spec !== spec),
        notice: null,
      });
      return true;
    }
    const slot = firstFreeSlot(this.state.selections.map((s) => s.slot));
    if (slot === null) {
      this.commit({
        ...this.state,
        notice: `at most ${MAX_SELECTIONS} specs can be compared at once`,
      });
      return false;
    }
    const selection: Selection = {
      spec,
      slot,
      color: colorForSlot(slot),
      dash: dashForSlot(slot),
    };
    this.commit({
      ...this.state,
      selections: [...this.state.selections, selection],
      notice: null,
    });
    return true;
  }

  clearSelections(): void {
    this.commit({ ...this.state, selections: [], notice: null });
  }

  setHoveredSpec(spec: string | null): void {
    if (this.state.hoveredSpec === spec) {
      return;
    }
    this.commit({ ...this.state, hoveredSpec: spec });
  }

  setHoveredNode(ref: RefKey | null): void {
    if (this.state.hoveredNode === ref) {
      return;
    }
    this.commit({ ...this.state, hoveredNode: ref });
  }

  setHoveredFeature(feature: string | null): void {
    if (this.state.hoveredFeature === feature) {
      return;
    }
    this.commit({ ...this.state, hoveredFeature: feature });
  }

  setFilters(patch: Partial<Filters>): void {
    this.commit({
      ...this.state,
      filters: { ...this.state.filters, ...patch },
    });
  }

  setHierarchyFilter(path: string[]): void {
    this.setFilters({ hierarchyPath: path });
  }

  setSearchQuery(query: string): void {
    this.commit({ ...this.state, searchQuery: query });
  }

  /** Panel geometry only; filters, selections, and query pass through
   * untouched by construction. */
  setPanel(id: PanelId, patch: Partial<PanelState>): void {
    this.commit({
      ...this.state,
      panels: {
        ...this.state.panels,
        [id]: { ...this.state.panels[id], ...patch },
      },
    });
  }

  setNotice(notice: string | null): void {
    this.commit({ ...this.state, notice });
  }
}
