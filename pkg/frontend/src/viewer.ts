/** Radial constraints viewer.
 *
 * The layout arrives fully computed from the service and is drawn
 * verbatim: every coordinate, angle, color, and label transform comes
 * from the payload. The viewer adds interaction only - zoom, pan, hover
 * highlights, selection stripes, count badges, and the hierarchy filter,
 * which toggles visibility client-side without asking for a new layout.
 */

import type { Stripe } from "./linking.js";
import type {
  ArcPlacement,
  FeaturePlacement,
  LayoutModel,
  RefKey,
} from "./types.js";
import { refKey } from "./types.js";

export const KNOWN_LAYOUT_SCHEMA = "asplens.layout/1";

const SVG_NS = "http://www.w3.org/2000/svg";
const EDGE_COLOR = "#b8b8b8";
const FEATURE_FILL = "#8a8a8a";

export interface ViewerOverlays {
  /** Badge counts for the hovered spec, keyed by constraint ref. */
  hover: { refs: Map<RefKey, number>; color: string } | null;
  stripes: Map<RefKey, Stripe[]>;
  hoveredNode: RefKey | null;
  hoveredFeature: string | null;
  hierarchyPath: string[];
}

export function emptyOverlays(): ViewerOverlays {
  return {
    hover: null,
    stripes: new Map(),
    hoveredNode: null,
    hoveredFeature: null,
    hierarchyPath: [],
  };
}

export interface FeatureDetails {
  placement: FeaturePlacement;
  key: string;
  constraints: RefKey[];
}

export interface ViewerCallbacks {
  onNodeHover(ref: RefKey | null): void;
  onNodeClick(ref: RefKey): void;
  onFeatureHover(key: string | null): void;
  onFeatureClick(details: FeatureDetails): void;
  onArcFilter(path: string[]): void;
  onBackgroundClick(): void;
}

export function featureKey(placement: FeaturePlacement): string {
  return `${placement.kind}:${placement.label}`;
}

/** True when one path is a prefix of the other; such nodes stay visible
 * under a subtree filter (ancestors give context, descendants are the
 * filtered subtree itself). */
export function pathsOverlap(
  filter: readonly string[],
  path: readonly string[],
): boolean {
  const n = Math.min(filter.length, path.length);
  for (let i = 0; i < n; i += 1) {
    if (filter[i] !== path[i]) {
      return false;
    }
  }
  return true;
}

/** Constraint visibility under a subtree filter: the constraint's
 * hierarchy path must start with the filter path. */
export function constraintVisible(
  filter: readonly string[],
  path: readonly string[] | undefined,
): boolean {
  if (filter.length === 0) {
    return true;
  }
  if (path === undefined || path.length < filter.length) {
    return false;
  }
  return pathsOverlap(filter, path);
}

function fmt(value: number): string {
  const out = value.toFixed(2);
  return out === "-0.00" ? "0.00" : out;
}

function arcPathD(arc: ArcPlacement): string {
  const t1 = arc.start_angle;
  const t2 = arc.end_angle;
  const large = t2 - t1 > Math.PI ? 1 : 0;
  const pt = (theta: number, radius: number) =>
    `${fmt(radius * Math.cos(theta))} ${fmt(radius * Math.sin(theta))}`;
  const ro = arc.r_outer;
  const ri = arc.r_inner;
  return (
    `M ${pt(t1, ro)} ` +
    `A ${fmt(ro)} ${fmt(ro)} 0 ${large} 1 ${pt(t2, ro)} ` +
    `L ${pt(t2, ri)} ` +
    `A ${fmt(ri)} ${fmt(ri)} 0 ${large} 0 ${pt(t1, ri)} Z`
  );
}

function el<K extends string>(tag: K, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

interface Transform {
  k: number;
  tx: number;
  ty: number;
}

export class ConstraintsViewer {
  private readonly root: HTMLElement;
  private readonly callbacks: ViewerCallbacks;
  private readonly banner: HTMLElement;
  private readonly svg: SVGElement;
  private readonly zoomGroup: SVGElement;
  private readonly baseGroup: SVGElement;
  private readonly overlayGroup: SVGElement;

  private layout: LayoutModel | null = null;
  private pathsByRef: Map<RefKey, string[]> = new Map();
  private overlays: ViewerOverlays = emptyOverlays();
  private transform: Transform = { k: 1, tx: 0, ty: 0 };
  private viewBox = { min: -528, size: 1056 };
  private dragging: { x: number; y: number } | null = null;

  constructor(root: HTMLElement, callbacks: ViewerCallbacks) {
    this.root = root;
    this.callbacks = callbacks;

    this.banner = document.createElement("div");
    this.banner.className = "viewer-banner";
    this.banner.hidden = true;
    root.appendChild(this.banner);

    this.svg = el("svg", {
      xmlns: SVG_NS,
      class: "constraints-svg",
      "font-family": "sans-serif",
    });
    this.zoomGroup = el("g", { class: "zoom" });
    this.baseGroup = el("g", { class: "base" });
    this.overlayGroup = el("g", { class: "overlays" });
    this.zoomGroup.appendChild(this.baseGroup);
    this.zoomGroup.appendChild(this.overlayGroup);
    this.svg.appendChild(this.zoomGroup);
    root.appendChild(this.svg);

    this.svg.addEventListener("wheel", (event) => this.onWheel(event as WheelEvent));
    this.svg.addEventListener("pointerdown", (event) =>
      this.onPointerDown(event as PointerEvent),
    );
    this.svg.addEventListener("pointermove", (event) =>
      this.onPointerMove(event as PointerEvent),
    );
    this.svg.addEventListener("pointerup", () => {
      this.dragging = null;
    });
    this.svg.addEventListener("pointerleave", () => {
      this.dragging = null;
    });
    this.svg.addEventListener("click", (event) => {
      if (event.target === this.svg || event.target === this.zoomGroup) {
        this.callbacks.onBackgroundClick();
      }
    });
  }

  setData(layout: LayoutModel, pathsByRef: Map<RefKey, string[]>): void {
    this.layout = layout;
    this.pathsByRef = pathsByRef;
    if (layout.schema_version !== KNOWN_LAYOUT_SCHEMA) {
      this.banner.hidden = false;
      this.banner.textContent =
        `layout schema "${layout.schema_version}" is not supported by this ` +
        `viewer (expected "${KNOWN_LAYOUT_SCHEMA}"); not rendering`;
      this.baseGroup.replaceChildren();
      this.overlayGroup.replaceChildren();
      return;
    }
    this.banner.hidden = true;
    this.banner.textContent = "";
    const margin = 1.32 * layout.config.R;
    this.viewBox = { min: -margin, size: 2 * margin };
    this.svg.setAttribute(
      "viewBox",
      `${fmt(-margin)} ${fmt(-margin)} ${fmt(2 * margin)} ${fmt(2 * margin)}`,
    );
    this.renderBase();
    this.renderOverlays();
  }

  applyOverlays(overlays: ViewerOverlays): void {
    const filterChanged =
      overlays.hierarchyPath.join("/") !== this.overlays.hierarchyPath.join("/");
    this.overlays = overlays;
    if (this.layout === null || !this.banner.hidden) {
      return;
    }
    if (filterChanged) {
      this.applyVisibility();
    }
    this.renderOverlays();
  }

  resetTransform(): void {
    this.transform = { k: 1, tx: 0, ty: 0 };
    this.applyTransform();
  }

  /** Constraint refs currently visible under the hierarchy filter. */
  visibleRefs(): RefKey[] {
    if (this.layout === null) {
      return [];
    }
    return this.layout.constraints
      .map((p) => refKey(p.kind, p.id))
      .filter((ref) =>
        constraintVisible(this.overlays.hierarchyPath, this.pathsByRef.get(ref)),
      );
  }

  private applyTransform(): void {
    this.zoomGroup.setAttribute(
      "transform",
      `translate(${fmt(this.transform.tx)} ${fmt(this.transform.ty)}) ` +
        `scale(${this.transform.k.toFixed(4)})`,
    );
  }

  /** Pointer position in viewBox units; falls back to the center when the
   * element has no box yet (headless tests). */
  private toViewBox(event: { clientX: number; clientY: number }): {
    x: number;
    y: number;
  } {
    const rect = (this.svg as unknown as Element).getBoundingClientRect();
    if (!rect || rect.width === 0 || rect.height === 0) {
      return { x: 0, y: 0 };
    }
    return {
      x: this.viewBox.min + ((event.clientX - rect.left) / rect.width) * this.viewBox.size,
      y: this.viewBox.min + ((event.clientY - rect.top) / rect.height) * this.viewBox.size,
    };
  }

  private onWheel(event: WheelEvent): void {
    event.preventDefault();
    const { k, tx, ty } = this.transform;
    const factor = Math.exp(-event.deltaY * 0.0015);
    const next = Math.min(20, Math.max(0.2, k * factor));
    const p = this.toViewBox(event);
    const wx = (p.x - tx) / k;
    const wy = (p.y - ty) / k;
    this.transform = { k: next, tx: p.x - wx * next, ty: p.y - wy * next };
    this.applyTransform();
  }

  private onPointerDown(event: PointerEvent): void {
    this.dragging = { x: event.clientX, y: event.clientY };
  }

  private onPointerMove(event: PointerEvent): void {
    if (this.dragging === null) {
      return;
    }
    const rect = (this.svg as unknown as Element).getBoundingClientRect();
    const scale =
      rect && rect.width > 0 ? this.viewBox.size / rect.width : 1;
    this.transform = {
      ...this.transform,
      tx: this.transform.tx + (event.clientX - this.dragging.x) * scale,
      ty: this.transform.ty + (event.clientY - this.dragging.y) * scale,
    };
    this.dragging = { x: event.clientX, y: event.clientY };
    this.applyTransform();
  }

  private renderBase(): void {
    const layout = this.layout;
    if (layout === null) {
      return;
    }
    const config = layout.config;
    this.baseGroup.replaceChildren();

    const edges = el("g", { class: "edges" });
    layout.edges.forEach((e, i) => {
      const line = el("line", {
        x1: fmt(e.x1),
        y1: fmt(e.y1),
        x2: fmt(e.x2),
        y2: fmt(e.y2),
        stroke: EDGE_COLOR,
        "stroke-width": "1",
        fill: "none",
        opacity: "0.75",
        "data-edge": String(i),
      });
      edges.appendChild(line);
    });
    this.baseGroup.appendChild(edges);

    const arcs = el("g", { class: "arcs" });
    layout.arcs.forEach((arc, i) => {
      const path = el("path", {
        d: arcPathD(arc),
        fill: arc.color,
        stroke: "#d0d0d0",
        "stroke-width": "0.5",
        class: "arc",
        "data-arc": String(i),
        "data-path": arc.path.join("/"),
      });
      path.addEventListener("click", (event) => {
        const mouse = event as MouseEvent;
        if (mouse.altKey || mouse.ctrlKey || mouse.metaKey || mouse.shiftKey) {
          mouse.preventDefault();
          mouse.stopPropagation();
          this.callbacks.onArcFilter([...arc.path]);
        }
      });
      arcs.appendChild(path);
      if (arc.label) {
        const mid = (arc.start_angle + arc.end_angle) / 2;
        const midR = (arc.r_inner + arc.r_outer) / 2;
        const label = el("text", {
          transform:
            `translate(${fmt(midR * Math.cos(mid))} ${fmt(midR * Math.sin(mid))}) ` +
            `rotate(${fmt((arc.label_rotation * 180) / Math.PI)})`,
          "text-anchor": "middle",
          "dominant-baseline": "middle",
          "font-size": fmt(0.9 * config.font_size),
          "data-arc-label": String(i),
          class: "arc-label",
        });
        label.textContent = arc.label;
        arcs.appendChild(label);
      }
    });
    this.baseGroup.appendChild(arcs);

    const features = el("g", { class: "features" });
    layout.features.forEach((f, i) => {
      const radius = 0.33 * config.node_radius * (1 + 0.18 * Math.sqrt(f.degree));
      const key = featureKey(f);
      const circle = el("circle", {
        cx: fmt(f.x),
        cy: fmt(f.y),
        r: fmt(radius),
        fill: FEATURE_FILL,
        class: "feature",
        "data-feature": String(i),
        "data-feature-key": key,
      });
      circle.addEventListener("pointerenter", () =>
        this.callbacks.onFeatureHover(key),
      );
      circle.addEventListener("pointerleave", () =>
        this.callbacks.onFeatureHover(null),
      );
      circle.addEventListener("click", (event) => {
        event.stopPropagation();
        this.callbacks.onFeatureClick(this.featureDetails(i));
      });
      features.appendChild(circle);
      const label = el("text", {
        x: fmt(f.x),
        y: fmt(f.y - 1.6 * radius),
        "text-anchor": "middle",
        "font-size": fmt(0.8 * config.font_size),
        fill: "#555555",
        class: "feature-label",
        "data-feature-label": String(i),
      });
      label.textContent = f.label;
      features.appendChild(label);
    });
    this.baseGroup.appendChild(features);

    const constraints = el("g", { class: "constraints" });
    for (const p of layout.constraints) {
      const ref = refKey(p.kind, p.id);
      const circle = el("circle", {
        cx: fmt(p.x),
        cy: fmt(p.y),
        r: fmt(config.node_radius),
        fill: p.color,
        stroke: "#333333",
        "stroke-width": "1",
        class: "node",
        "data-ref": ref,
      });
      circle.addEventListener("pointerenter", () => this.callbacks.onNodeHover(ref));
      circle.addEventListener("pointerleave", () => this.callbacks.onNodeHover(null));
      circle.addEventListener("click", (event) => {
        event.stopPropagation();
        this.callbacks.onNodeClick(ref);
      });
      constraints.appendChild(circle);

      const [ax, ay] = p.label_anchor;
      const label = el("text", {
        transform:
          `translate(${fmt(ax)} ${fmt(ay)}) ` +
          `rotate(${fmt((p.label_rotation * 180) / Math.PI)})`,
        "text-anchor": p.label_mirrored ? "end" : "start",
        "dominant-baseline": "middle",
        "font-size": fmt(config.font_size),
        class: "node-label",
        "data-ref-label": ref,
      });
      label.textContent = p.id;
      constraints.appendChild(label);
    }
    this.baseGroup.appendChild(constraints);

    this.applyVisibility();
    this.applyTransform();
  }

  private featureDetails(index: number): FeatureDetails {
    const layout = this.layout;
    if (layout === null) {
      throw new Error("no layout loaded");
    }
    const placement = layout.features[index];
    if (placement === undefined) {
      throw new Error(`feature index ${index} out of range`);
    }
    const constraints: RefKey[] = [];
    for (const edge of layout.edges) {
      if (edge.feature === index) {
        const c = layout.constraints[edge.constraint];
        if (c !== undefined) {
          constraints.push(refKey(c.kind, c.id));
        }
      }
    }
    return { placement, key: featureKey(placement), constraints };
  }

  /** Show or hide base elements under the hierarchy filter. */
  private applyVisibility(): void {
    const layout = this.layout;
    if (layout === null) {
      return;
    }
    const filter = this.overlays.hierarchyPath;
    const visible = new Set<number>();
    layout.constraints.forEach((p, i) => {
      const ref = refKey(p.kind, p.id);
      if (constraintVisible(filter, this.pathsByRef.get(ref))) {
        visible.add(i);
      }
    });

    layout.constraints.forEach((p, i) => {
      const ref = refKey(p.kind, p.id);
      const show = visible.has(i);
      this.setShown(`[data-ref="${cssEscape(ref)}"]`, show);
      this.setShown(`[data-ref-label="${cssEscape(ref)}"]`, show);
    });

    const featureVisible = new Set<number>();
    layout.edges.forEach((e, i) => {
      const show = visible.has(e.constraint);
      this.setShown(`[data-edge="${i}"]`, show);
      if (show) {
        featureVisible.add(e.feature);
      }
    });
    layout.features.forEach((_, i) => {
      const show = featureVisible.has(i) || filter.length === 0;
      this.setShown(`[data-feature="${i}"]`, show);
      this.setShown(`[data-feature-label="${i}"]`, show);
    });

    layout.arcs.forEach((arc, i) => {
      const show = filter.length === 0 || pathsOverlap(filter, arc.path);
      this.setShown(`[data-arc="${i}"]`, show);
      this.setShown(`[data-arc-label="${i}"]`, show);
    });
  }

  private setShown(selector: string, show: boolean): void {
    const node = this.baseGroup.querySelector(selector);
    if (node) {
      if (show) {
        node.removeAttribute("display");
      } else {
        node.setAttribute("display", "none");
      }
    }
  }

  private renderOverlays(): void {
    const layout = this.layout;
    this.overlayGroup.replaceChildren();
    if (layout === null) {
      return;
    }
    const config = layout.config;
    const byRef = new Map(layout.constraints.map((p) => [refKey(p.kind, p.id), p]));
    const filter = this.overlays.hierarchyPath;

    const placementShown = (ref: RefKey): boolean =>
      constraintVisible(filter, this.pathsByRef.get(ref));

    for (const [ref, stripes] of this.overlays.stripes) {
      const p = byRef.get(ref);
      if (p === undefined || !placementShown(ref)) {
        continue;
      }
      stripes.forEach((stripe, i) => {
        this.overlayGroup.appendChild(
          el("circle", {
            cx: fmt(p.x),
            cy: fmt(p.y),
            r: fmt(config.node_radius + 3 + 3.2 * i),
            fill: "none",
            stroke: stripe.color,
            "stroke-width": "2.4",
            "stroke-dasharray": stripe.dash,
            class: "stripe",
            "data-stripe-ref": ref,
            "data-stripe-spec": stripe.spec,
          }),
        );
        this.overlayGroup.appendChild(
          this.badge(p.x, p.y, config, stripe.count, stripe.color, i + 1, ref, stripe.spec),
        );
      });
    }

    const hover = this.overlays.hover;
    if (hover !== null) {
      const highlighted = new Set<number>();
      layout.constraints.forEach((p, i) => {
        if (hover.refs.has(refKey(p.kind, p.id))) {
          highlighted.add(i);
        }
      });
      layout.edges.forEach((e) => {
        if (!highlighted.has(e.constraint)) {
          return;
        }
        const ref = refKey(
          layout.constraints[e.constraint]!.kind,
          layout.constraints[e.constraint]!.id,
        );
        if (!placementShown(ref)) {
          return;
        }
        this.overlayGroup.appendChild(
          el("line", {
            x1: fmt(e.x1),
            y1: fmt(e.y1),
            x2: fmt(e.x2),
            y2: fmt(e.y2),
            stroke: hover.color,
            "stroke-width": "1.8",
            opacity: "0.9",
            class: "edge-highlight",
          }),
        );
      });
      for (const [ref, count] of hover.refs) {
        const p = byRef.get(ref);
        if (p === undefined || !placementShown(ref)) {
          continue;
        }
        this.overlayGroup.appendChild(
          el("circle", {
            cx: fmt(p.x),
            cy: fmt(p.y),
            r: fmt(config.node_radius + 2),
            fill: "none",
            stroke: hover.color,
            "stroke-width": "2.6",
            class: "hover-ring",
            "data-hover-ref": ref,
          }),
        );
        this.overlayGroup.appendChild(
          this.badge(p.x, p.y, config, count, hover.color, 0, ref, null),
        );
      }
    }

    if (this.overlays.hoveredNode !== null) {
      const p = byRef.get(this.overlays.hoveredNode);
      if (p !== undefined && placementShown(this.overlays.hoveredNode)) {
        this.overlayGroup.appendChild(
          el("circle", {
            cx: fmt(p.x),
            cy: fmt(p.y),
            r: fmt(config.node_radius + 1.5),
            fill: "none",
            stroke: "#111111",
            "stroke-width": "1.6",
            class: "node-hover-ring",
          }),
        );
      }
    }

    if (this.overlays.hoveredFeature !== null) {
      const idx = layout.features.findIndex(
        (f) => featureKey(f) === this.overlays.hoveredFeature,
      );
      const f = idx >= 0 ? layout.features[idx] : undefined;
      if (f !== undefined) {
        const radius = 0.33 * config.node_radius * (1 + 0.18 * Math.sqrt(f.degree));
        this.overlayGroup.appendChild(
          el("circle", {
            cx: fmt(f.x),
            cy: fmt(f.y),
            r: fmt(radius + 2),
            fill: "none",
            stroke: "#111111",
            "stroke-width": "1.4",
            class: "feature-hover-ring",
          }),
        );
      }
    }
  }

  /** Count badge next to a node; ring index staggers badges for nodes
   * carrying several selections. */
  private badge(
    x: number,
    y: number,
    config: { node_radius: number; font_size: number },
    count: number,
    color: string,
    ringIndex: number,
    ref: RefKey,
    spec: string | null,
  ): SVGElement {
    const norm = Math.hypot(x, y) || 1;
    const offset = config.node_radius + 9 + 7.5 * ringIndex;
    const bx = x - (x / norm) * offset;
    const by = y - (y / norm) * offset;
    const group = el("g", {
      class: "badge",
      "data-badge-ref": ref,
      ...(spec === null ? {} : { "data-badge-spec": spec }),
      "data-badge-count": String(count),
    });
    group.appendChild(
      el("circle", {
        cx: fmt(bx),
        cy: fmt(by),
        r: "6.5",
        fill: color,
        stroke: "#ffffff",
        "stroke-width": "1",
      }),
    );
    const text = el("text", {
      x: fmt(bx),
      y: fmt(by),
      "text-anchor": "middle",
      "dominant-baseline": "central",
      "font-size": fmt(0.82 * config.font_size),
      fill: "#ffffff",
      class: "badge-count",
    });
    text.textContent = String(count);
    group.appendChild(text);
    return group;
  }
}

/** Minimal attribute-selector escaping for refs like "soft:bin_high". */
function cssEscape(value: string): string {
  return value.replace(/["\\]/g, "\\$&");
}
