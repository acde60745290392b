/** Application shell: wires the query editor, recommendation viewer,
 * constraints viewer, and constraints inspector onto a shared store and
 * a shared API client. All cross-view behavior (hover linking, selection
 * stripes, filters) flows through the store; views never talk to each
 * other directly.
 */

import { ApiClient, ApiError, STALE } from "./api.js";
import { EditorView } from "./editor.js";
import { Inspector } from "./inspector.js";
import {
  reportBadges,
  selectionStripes,
  specsViolating,
} from "./linking.js";
import { colorForSlot, firstFreeSlot } from "./palette.js";
import { CardModel, RecommendationsView } from "./recommendations.js";
import type { Filters, PanelId, ViewState } from "./state.js";
import { Store } from "./state.js";
import type {
  ConstraintKind,
  LayoutModel,
  RefKey,
  ViolationReport,
} from "./types.js";
import { refKey } from "./types.js";
import {
  ConstraintsViewer,
  FeatureDetails,
  ViewerOverlays,
} from "./viewer.js";

const PANEL_TITLES: Record<PanelId, string> = {
  editor: "query editor",
  recommendations: "recommendations",
  viewer: "constraints",
  inspector: "inspector",
};

export class App {
  readonly store: Store;
  readonly api: ApiClient;
  readonly root: HTMLElement;
  viewer!: ConstraintsViewer;
  recommendations!: RecommendationsView;
  inspector!: Inspector;
  editor!: EditorView;

  cards: CardModel[] = [];
  pathsByRef = new Map<RefKey, string[]>();
  sourcesByRef = new Map<RefKey, string>();
  layout: LayoutModel | null = null;

  private notice!: HTMLElement;
  private filterChip!: HTMLElement;
  private featurePanel!: HTMLElement;
  private pinnedFeature: FeatureDetails | null = null;
  private lastLayoutKey: string | null = null;

  constructor(root: HTMLElement, apiBase = "") {
    this.root = root;
    this.api = new ApiClient(apiBase);
    this.store = new Store();
    this.buildShell();
    this.store.subscribe((state) => this.onState(state));
  }

  reports(): ViolationReport[] {
    return this.cards.map((c) => c.report);
  }

  async start(): Promise<void> {
    const [workspace, constraints, reportsPayload] = await Promise.all([
      this.api.workspace(),
      this.api.allConstraints(),
      this.api.reports(),
    ]);
    if (workspace === STALE || constraints === STALE || reportsPayload === STALE) {
      return;
    }

    for (const row of constraints.constraints) {
      const ref = refKey(row.kind, row.id);
      this.pathsByRef.set(ref, row.hierarchy_path);
      this.sourcesByRef.set(ref, row.source);
    }

    const sources = await Promise.all(
      workspace.specs.map(async (name) => {
        const text = await this.api.specSource(name);
        return [name, text === STALE ? null : text] as const;
      }),
    );
    const sourceByName = new Map(sources);
    this.cards = reportsPayload.reports.map((report) => ({
      report,
      source: sourceByName.get(report.spec) ?? null,
      fromEditor: false,
    }));
    this.recommendations.setCards(this.cards);

    await this.refreshLayout(this.store.get().filters);
    void this.inspector.setQuery(this.store.get().searchQuery);
    this.onState(this.store.get());
  }

  private layoutKey(filters: Filters): string {
    return `${filters.type}|${[...filters.featureKinds].sort().join(",")}|${filters.minDegree}`;
  }

  private async refreshLayout(filters: Filters): Promise<void> {
    this.lastLayoutKey = this.layoutKey(filters);
    try {
      const layout = await this.api.layout(filters);
      if (layout === STALE) {
        return;
      }
      this.layout = layout;
      this.viewer.setData(layout, this.pathsByRef);
      this.viewer.applyOverlays(this.overlaysFor(this.store.get()));
    } catch (error) {
      this.showNotice(
        error instanceof ApiError
          ? `layout request failed: ${error.message}`
          : `layout request failed: ${String(error)}`,
      );
    }
  }

  private overlaysFor(state: ViewState): ViewerOverlays {
    const reports = this.reports();
    let hover: ViewerOverlays["hover"] = null;
    if (state.hoveredSpec !== null) {
      const report = reports.find((r) => r.spec === state.hoveredSpec);
      if (report !== undefined) {
        hover = {
          refs: new Map(reportBadges(report).map((b) => [b.ref, b.count])),
          color: this.hoverColor(state, state.hoveredSpec),
        };
      }
    }
    return {
      hover,
      stripes: selectionStripes(reports, state.selections),
      hoveredNode: state.hoveredNode,
      hoveredFeature: state.hoveredFeature ?? this.pinnedFeature?.key ?? null,
      hierarchyPath: state.filters.hierarchyPath,
    };
  }

  /** Hover color: a selected spec keeps its selection color; an unselected
   * one previews the color it would get, so hover and click agree. */
  private hoverColor(state: ViewState, spec: string): string {
    const selection = state.selections.find((s) => s.spec === spec);
    if (selection) {
      return selection.color;
    }
    const slot = firstFreeSlot(state.selections.map((s) => s.slot));
    return slot === null ? "#111111" : colorForSlot(slot);
  }

  private onState(state: ViewState): void {
    const key = this.layoutKey(state.filters);
    if (key !== this.lastLayoutKey) {
      void this.refreshLayout(state.filters);
    }

    this.viewer.applyOverlays(this.overlaysFor(state));
    this.recommendations.applyState(
      state.selections,
      state.hoveredSpec,
      state.hoveredNode,
    );
    this.inspector.highlight(state.hoveredNode);
    void this.inspector.setQuery(state.searchQuery);

    this.filterChip.textContent =
      state.filters.hierarchyPath.length === 0
        ? ""
        : state.filters.hierarchyPath.join(" / ");
    (this.filterChip.parentElement as HTMLElement).hidden =
      state.filters.hierarchyPath.length === 0;

    this.notice.hidden = state.notice === null;
    this.notice.textContent = state.notice ?? "";

    for (const id of Object.keys(PANEL_TITLES) as PanelId[]) {
      const panel = this.root.querySelector(`[data-panel="${id}"]`) as HTMLElement | null;
      if (!panel) {
        continue;
      }
      const body = panel.querySelector(".panel-body") as HTMLElement | null;
      const settings = state.panels[id];
      if (body) {
        body.hidden = !settings.visible;
      }
      panel.style.flexBasis = settings.visible ? `${settings.size}px` : "36px";
      panel.classList.toggle("panel-collapsed", !settings.visible);
    }
  }

  private showNotice(text: string): void {
    this.store.setNotice(text);
  }

  private buildShell(): void {
    this.root.replaceChildren();
    this.root.className = "app";

    this.notice = document.createElement("div");
    this.notice.className = "app-notice";
    this.notice.hidden = true;
    this.root.appendChild(this.notice);

    const panels = document.createElement("main");
    panels.className = "panels";
    this.root.appendChild(panels);

    const bodies = {} as Record<PanelId, HTMLElement>;
    for (const id of Object.keys(PANEL_TITLES) as PanelId[]) {
      const section = document.createElement("section");
      section.className = "panel";
      section.setAttribute("data-panel", id);

      const header = document.createElement("header");
      header.className = "panel-header";
      const title = document.createElement("span");
      title.textContent = PANEL_TITLES[id];
      header.appendChild(title);
      const collapse = document.createElement("button");
      collapse.className = "panel-collapse";
      collapse.textContent = "–";
      collapse.addEventListener("click", () => {
        this.store.setPanel(id, {
          visible: !this.store.get().panels[id].visible,
        });
      });
      header.appendChild(collapse);
      section.appendChild(header);

      const body = document.createElement("div");
      body.className = "panel-body";
      section.appendChild(body);
      bodies[id] = body;

      const handle = document.createElement("div");
      handle.className = "panel-resize";
      wireResize(handle, () => this.store.get().panels[id].size, (size) => {
        this.store.setPanel(id, { size });
      });
      section.appendChild(handle);

      panels.appendChild(section);
    }

    this.editor = new EditorView(bodies.editor, this.api, {
      existingNames: () => this.cards.map((c) => c.report.spec),
      onReport: (report, source) => {
        this.cards = [...this.cards, { report, source, fromEditor: true }];
        this.recommendations.setCards(this.cards);
        this.onState(this.store.get());
      },
    });

    this.recommendations = new RecommendationsView(bodies.recommendations, {
      onHover: (spec) => this.store.setHoveredSpec(spec),
      onToggleSelect: (spec) => this.store.toggleSelection(spec),
    });

    this.buildViewerPanel(bodies.viewer);

    this.inspector = new Inspector(bodies.inspector, this.api, this.store);
  }

  private buildViewerPanel(body: HTMLElement): void {
    const bar = document.createElement("div");
    bar.className = "filter-bar";

    const typeSelect = document.createElement("select");
    typeSelect.className = "filter-type";
    for (const value of ["soft", "hard"]) {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = `${value} constraints`;
      typeSelect.appendChild(option);
    }
    typeSelect.addEventListener("change", () => {
      this.store.setFilters({ type: typeSelect.value as ConstraintKind });
    });
    bar.appendChild(typeSelect);

    for (const kind of ["predicates", "variables"]) {
      const label = document.createElement("label");
      label.className = "filter-kind";
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = true;
      box.setAttribute("data-kind", kind);
      box.addEventListener("change", () => {
        const current = this.store.get().filters.featureKinds;
        const next = box.checked
          ? [...current, kind]
          : current.filter((k) => k !== kind);
        if (next.length === 0) {
          box.checked = true;
          this.store.setNotice("at least one feature kind must stay enabled");
          return;
        }
        this.store.setFilters({ featureKinds: next });
      });
      label.appendChild(box);
      label.appendChild(document.createTextNode(kind));
      bar.appendChild(label);
    }

    const degreeLabel = document.createElement("label");
    degreeLabel.className = "filter-degree";
    degreeLabel.appendChild(document.createTextNode("min degree"));
    const degree = document.createElement("input");
    degree.type = "number";
    degree.min = "0";
    degree.value = String(this.store.get().filters.minDegree);
    degree.addEventListener("change", () => {
      const value = Number.parseInt(degree.value, 10);
      if (Number.isFinite(value) && value >= 0) {
        this.store.setFilters({ minDegree: value });
      }
    });
    degreeLabel.appendChild(degree);
    bar.appendChild(degreeLabel);

    const chipWrap = document.createElement("span");
    chipWrap.className = "filter-chip-wrap";
    chipWrap.hidden = true;
    this.filterChip = document.createElement("span");
    this.filterChip.className = "filter-chip";
    chipWrap.appendChild(this.filterChip);
    const clear = document.createElement("button");
    clear.className = "filter-clear";
    clear.textContent = "×";
    clear.addEventListener("click", () => {
      this.store.setHierarchyFilter([]);
    });
    chipWrap.appendChild(clear);
    bar.appendChild(chipWrap);

    const reset = document.createElement("button");
    reset.className = "viewer-reset";
    reset.textContent = "reset view";
    reset.addEventListener("click", () => {
      this.viewer.resetTransform();
    });
    bar.appendChild(reset);

    body.appendChild(bar);

    const stage = document.createElement("div");
    stage.className = "viewer-stage";
    body.appendChild(stage);

    this.viewer = new ConstraintsViewer(stage, {
      onNodeHover: (ref) => this.store.setHoveredNode(ref),
      onNodeClick: (ref) => {
        const [kind, id] = splitRef(ref);
        this.store.setPanel("inspector", { visible: true });
        void this.inspector.showDetail(kind, id);
      },
      onFeatureHover: (key) => this.store.setHoveredFeature(key),
      onFeatureClick: (details) => {
        this.pinnedFeature = details;
        this.renderFeaturePanel();
        this.viewer.applyOverlays(this.overlaysFor(this.store.get()));
      },
      onArcFilter: (path) => this.store.setHierarchyFilter(path),
      onBackgroundClick: () => {
        if (this.pinnedFeature !== null) {
          this.pinnedFeature = null;
          this.renderFeaturePanel();
          this.viewer.applyOverlays(this.overlaysFor(this.store.get()));
        }
      },
    });

    this.featurePanel = document.createElement("div");
    this.featurePanel.className = "feature-panel";
    this.featurePanel.hidden = true;
    stage.appendChild(this.featurePanel);
  }

  /** Fixed bottom-right tooltip panel: the feature plus the full source of
   * every constraint sharing it. */
  private renderFeaturePanel(): void {
    const details = this.pinnedFeature;
    if (details === null) {
      this.featurePanel.hidden = true;
      this.featurePanel.replaceChildren();
      return;
    }
    this.featurePanel.hidden = false;
    this.featurePanel.replaceChildren();
    this.featurePanel.setAttribute("data-feature-key", details.key);

    const title = document.createElement("h4");
    title.textContent = `${details.placement.label} (${details.placement.kind}, degree ${details.placement.degree})`;
    this.featurePanel.appendChild(title);

    const list = document.createElement("ul");
    for (const ref of details.constraints) {
      const item = document.createElement("li");
      item.setAttribute("data-feature-constraint", ref);
      const code = document.createElement("code");
      code.textContent = this.sourcesByRef.get(ref) ?? ref;
      item.appendChild(code);
      list.appendChild(item);
    }
    this.featurePanel.appendChild(list);
  }
}

function splitRef(ref: RefKey): [ConstraintKind, string] {
  const cut = ref.indexOf(":");
  return [ref.slice(0, cut) as ConstraintKind, ref.slice(cut + 1)];
}

function wireResize(
  handle: HTMLElement,
  getSize: () => number,
  setSize: (size: number) => void,
): void {
  let start: { x: number; size: number } | null = null;
  handle.addEventListener("pointerdown", (event) => {
    start = { x: (event as PointerEvent).clientX, size: getSize() };
  });
  handle.addEventListener("pointermove", (event) => {
    if (start === null) {
      return;
    }
    const dx = (event as PointerEvent).clientX - start.x;
    setSize(Math.max(120, start.size + dx));
  });
  const stop = () => {
    start = null;
  };
  handle.addEventListener("pointerup", stop);
  handle.addEventListener("pointerleave", stop);
}

export async function bootstrap(root: HTMLElement, apiBase = ""): Promise<App> {
  const app = new App(root, apiBase);
  await app.start();
  return app;
}

declare global {
  interface Window {
    asplensApp?: App;
  }
}

if (typeof document !== "undefined") {
  const mount = document.getElementById("app");
  if (mount !== null) {
    void bootstrap(mount).then((app) => {
      window.asplensApp = app;
    });
  }
}
