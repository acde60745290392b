"""Radial hypergraph geometry.

Constraints sit evenly on a ring of radius R, ordered by a depth-first
walk of the identifier hierarchy so related constraints stay adjacent.
Hierarchy arcs fill an annulus just inside the ring, root level innermost.
Feature nodes sit at the centroid of their connected constraints, pulled
in to R_max when the centroid lands outside it.

Coordinates use screen convention: y grows downward and angles run
clockwise from the positive x axis, so the default start angle of -pi/2
puts the first constraint at the top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..features import Feature
from ..hypergraph import Hypergraph
from ..model import SOFT, HierarchyNode, dfs_constraint_order
from ..parser.syntax import Diagnostic, _NOSPAN
from .colormap import BLUE, RED, WHITE, diverging_color

LAYOUT_SCHEMA_VERSION = "asplens.layout/1"

TAU = 2 * math.pi


class EmptyGraph(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class LayoutConfig:
    R: float = 400.0
    R_max: float | None = None  # default 0.72 R
    arc_band: tuple[float, float] | None = None  # default (0.78 R, 0.97 R)
    arc_gap: float = 0.02  # radians trimmed off both arc ends combined
    weight_domain: tuple[float, float] = (0.0, 50.0)
    hard_color: str = "#4d4d4d"
    low_color: str = BLUE
    mid_color: str = WHITE
    high_color: str = RED
    start_angle: float = -math.pi / 2
    centroid_weighted: bool = False
    node_radius: float | None = None  # default 0.022 R
    font_size: float | None = None  # default 0.028 R

    def __post_init__(self):
        if not (0 < self.r_max < self.band[0] < self.band[1] <= self.R):
            raise ValueError(
                "layout radii must satisfy 0 < R_max < arc inner < arc outer <= R"
            )

    @property
    def r_max(self) -> float:
        return 0.72 * self.R if self.R_max is None else self.R_max

    @property
    def band(self) -> tuple[float, float]:
        if self.arc_band is None:
            return (0.78 * self.R, 0.97 * self.R)
        return self.arc_band

    @property
    def node_r(self) -> float:
        return 0.022 * self.R if self.node_radius is None else self.node_radius

    @property
    def font(self) -> float:
        return 0.028 * self.R if self.font_size is None else self.font_size

    @property
    def label_radius(self) -> float:
        return self.R + 2.2 * self.node_r


@dataclass(frozen=True, slots=True)
class ConstraintPlacement:
    kind: str
    id: str
    theta: float
    x: float
    y: float
    color: str
    weight: int | None
    label_rotation: float
    label_mirrored: bool
    label_anchor: tuple[float, float]

    @property
    def key(self) -> tuple[str, str]:
        return (self.kind, self.id)


@dataclass(frozen=True, slots=True)
class Arc:
    path: tuple[str, ...]
    segment: str
    depth: int
    start_angle: float
    end_angle: float
    r_inner: float
    r_outer: float
    color: str
    mean_weight: float | None
    label: str
    label_rotation: float


@dataclass(frozen=True, slots=True)
class FeaturePlacement:
    kind: str
    name: str
    arity: int | None
    label: str
    x: float
    y: float
    clamped: bool
    degree: int


@dataclass(frozen=True, slots=True)
class EdgePath:
    feature_index: int
    constraint_index: int
    x1: float
    y1: float
    x2: float
    y2: float
    count: int


@dataclass(frozen=True, slots=True)
class LayoutModel:
    kind: str
    config: LayoutConfig
    constraint_placements: tuple[ConstraintPlacement, ...]
    arcs: tuple[Arc, ...]
    feature_placements: tuple[FeaturePlacement, ...]
    edge_paths: tuple[EdgePath, ...]
    diagnostics: tuple[Diagnostic, ...] = ()


def normalize_angle(theta: float) -> float:
    t = theta % TAU
    # tiny negative inputs round to TAU itself under float modulo
    return 0.0 if t == TAU else t


def label_transform(theta: float) -> tuple[float, bool]:
    """Rotation and mirror flag for a radial label at angle theta.

    Labels on the left half of the circle (between 90 and 270 degrees,
    exclusive) are flipped by pi so they read left to right.
    """
    t = normalize_angle(theta)
    mirrored = math.pi / 2 < t < 3 * math.pi / 2
    rotation = normalize_angle(t + math.pi) if mirrored else t
    return rotation, mirrored


def weight_color(
    weight: float | None,
    config: LayoutConfig,
    diagnostics: list[Diagnostic] | None = None,
) -> str:
    """Diverging color for a soft weight; the shared fixed color for an
    absent weight (hard constraints). Out-of-domain weights clamp."""
    if weight is None:
        return config.hard_color
    lo, hi = config.weight_domain
    value = weight
    if value < lo or value > hi:
        value = min(max(value, lo), hi)
        if diagnostics is not None:
            diagnostics.append(
                Diagnostic(
                    severity="warning",
                    message=f"weight {weight} outside domain [{lo},{hi}], clamped",
                    span=_NOSPAN,
                    construct="weight-out-of-domain",
                )
            )
    return diverging_color(
        value,
        (lo, hi),
        low_color=config.low_color,
        mid_color=config.mid_color,
        high_color=config.high_color,
    )


def place_constraints(
    graph: Hypergraph,
    hierarchy: HierarchyNode,
    config: LayoutConfig,
    diagnostics: list[Diagnostic] | None = None,
) -> tuple[ConstraintPlacement, ...]:
    if not graph.constraint_nodes:
        raise EmptyGraph("no constraints to place")

    present = {node.key: node for node in graph.constraint_nodes}
    ordered = [key for key in dfs_constraint_order(hierarchy) if key in present]
    leftovers = [n.key for n in graph.constraint_nodes if n.key not in set(ordered)]
    ordered.extend(leftovers)

    n = len(ordered)
    step = TAU / n
    placements = []
    for i, key in enumerate(ordered):
        node = present[key]
        theta = config.start_angle + i * step
        x = config.R * math.cos(theta)
        y = config.R * math.sin(theta)
        rotation, mirrored = label_transform(theta)
        anchor = (
            config.label_radius * math.cos(theta),
            config.label_radius * math.sin(theta),
        )
        placements.append(
            ConstraintPlacement(
                kind=node.kind,
                id=node.id,
                theta=theta,
                x=x,
                y=y,
                color=weight_color(
                    node.weight if node.kind == SOFT else None,
                    config,
                    diagnostics,
                ),
                weight=node.weight,
                label_rotation=rotation,
                label_mirrored=mirrored,
                label_anchor=anchor,
            )
        )
    return tuple(placements)


def _subtree_keys(node: HierarchyNode) -> list[tuple[str, str]]:
    return dfs_constraint_order(node)


def place_arcs(
    hierarchy: HierarchyNode,
    placements: tuple[ConstraintPlacement, ...],
    config: LayoutConfig,
    diagnostics: list[Diagnostic] | None = None,
) -> tuple[Arc, ...]:
    if not placements:
        return ()
    kind = placements[0].kind
    theta_of = {p.key: p.theta for p in placements}
    weight_of = {p.key: p.weight for p in placements}
    halfstep = math.pi / len(placements)

    pending: list[tuple[tuple[str, ...], HierarchyNode, float, float, float | None]] = []
    max_depth = -1

    def visit(node: HierarchyNode, prefix: tuple[str, ...]) -> None:
        nonlocal max_depth
        path = prefix + (node.segment,) if node.segment else prefix
        if node.depth >= 0:
            keys = [k for k in _subtree_keys(node) if k in theta_of]
            if keys:
                thetas = [theta_of[k] for k in keys]
                lo, hi = min(thetas), max(thetas)
                start = lo - halfstep + config.arc_gap / 2
                end = hi + halfstep - config.arc_gap / 2
                if end < start:
                    start = end = (lo + hi) / 2
                mean = None
                if kind == SOFT:
                    mean = sum(weight_of[k] or 0 for k in keys) / len(keys)
                pending.append((path, node, start, end, mean))
                max_depth = max(max_depth, node.depth)
        for child in node.children:
            visit(child, path)

    visit(hierarchy, ())
    if not pending:
        return ()

    inner, outer = config.band
    rings = max_depth + 1
    height = (outer - inner) / rings
    ring_pad = 0.15 * height

    arcs = []
    for path, node, start, end, mean in pending:
        r_in = inner + node.depth * height
        r_out = inner + (node.depth + 1) * height - ring_pad
        color = (
            weight_color(mean, config, diagnostics)
            if kind == SOFT
            else config.hard_color
        )
        mid_r = (r_in + r_out) / 2
        label, rotation = _arc_label(node.segment, start, end, mid_r, config)
        arcs.append(
            Arc(
                path=path,
                segment=node.segment,
                depth=node.depth,
                start_angle=start,
                end_angle=end,
                r_inner=r_in,
                r_outer=r_out,
                color=color,
                mean_weight=mean,
                label=label,
                label_rotation=rotation,
            )
        )
    return tuple(arcs)


def _arc_label(
    text: str, start: float, end: float, mid_r: float, config: LayoutConfig
) -> tuple[str, float]:
    """Truncate text to the arc length at the label radius; tangential
    rotation at the arc midpoint, flipped when it would be upside down."""
    available = (end - start) * mid_r
    char_w = 0.62 * config.font
    max_chars = int(available / char_w) if char_w > 0 else 0
    if len(text) > max_chars:
        text = text[: max_chars - 1] + "…" if max_chars > 1 else ""
    mid = (start + end) / 2
    tangent = normalize_angle(mid + math.pi / 2)
    if math.pi / 2 < tangent < 3 * math.pi / 2:
        tangent = normalize_angle(tangent + math.pi)
    return text, tangent


def place_features(
    graph: Hypergraph,
    placements: tuple[ConstraintPlacement, ...],
    config: LayoutConfig,
) -> tuple[FeaturePlacement, ...]:
    position_of = {}
    for p in placements:
        position_of[graph.constraint_index(p.key)] = (p.x, p.y)

    adjacency: dict[int, list[tuple[int, int]]] = {}
    for f, c, count in graph.edges:
        adjacency.setdefault(f, []).append((c, count))

    features = []
    for f_idx, node in enumerate(graph.feature_nodes):
        members = adjacency.get(f_idx, [])
        if not members:
            continue
        if config.centroid_weighted:
            total = sum(count for _, count in members)
            x = sum(position_of[c][0] * count for c, count in members) / total
            y = sum(position_of[c][1] * count for c, count in members) / total
        else:
            x = sum(position_of[c][0] for c, _ in members) / len(members)
            y = sum(position_of[c][1] for c, _ in members) / len(members)
        norm = math.hypot(x, y)
        clamped = norm > config.r_max
        if clamped:
            scale = config.r_max / norm
            x *= scale
            y *= scale
            # scaling can overshoot by an ulp; the bound is a hard invariant
            while math.hypot(x, y) > config.r_max:
                x = math.nextafter(x, 0.0)
                y = math.nextafter(y, 0.0)
        features.append(
            FeaturePlacement(
                kind=node.feature.kind,
                name=node.feature.name,
                arity=node.feature.arity,
                label=node.feature.label,
                x=x,
                y=y,
                clamped=clamped,
                degree=node.degree,
            )
        )
    return tuple(features)


def edge_segments(
    graph: Hypergraph,
    placements: tuple[ConstraintPlacement, ...],
    features: tuple[FeaturePlacement, ...],
) -> tuple[EdgePath, ...]:
    constraint_pos = {}
    for p in placements:
        constraint_pos[graph.constraint_index(p.key)] = (p.x, p.y)
    feature_pos = {}
    for placed in features:
        idx = graph.feature_index(Feature(placed.kind, placed.name, placed.arity))
        feature_pos[idx] = (placed.x, placed.y)

    paths = []
    for f, c, count in graph.edges:
        if f not in feature_pos or c not in constraint_pos:
            continue
        fx, fy = feature_pos[f]
        cx, cy = constraint_pos[c]
        paths.append(EdgePath(f, c, fx, fy, cx, cy, count))
    return tuple(paths)


def compute_layout(
    graph: Hypergraph,
    hierarchy: HierarchyNode,
    config: LayoutConfig | None = None,
) -> LayoutModel:
    """Full layout: ring placements, hierarchy arcs, feature centroids,
    straight edges. Pure function of its inputs."""
    if config is None:
        config = LayoutConfig()
    if not graph.constraint_nodes:
        raise EmptyGraph("no constraints to lay out")
    kind = graph.constraint_nodes[0].kind
    diagnostics: list[Diagnostic] = []
    placements = place_constraints(graph, hierarchy, config, diagnostics)
    arcs = place_arcs(hierarchy, placements, config, diagnostics)
    features = place_features(graph, placements, config)
    edges = edge_segments(graph, placements, features)
    return LayoutModel(
        kind=kind,
        config=config,
        constraint_placements=placements,
        arcs=arcs,
        feature_placements=features,
        edge_paths=edges,
        diagnostics=tuple(diagnostics),
    )


def _round6(value: float) -> float:
    rounded = round(value, 6)
    return 0.0 if rounded == 0 else rounded


def layout_to_obj(layout: LayoutModel) -> dict:
    from ..parser import jsonio

    config = layout.config
    return {
        "schema_version": LAYOUT_SCHEMA_VERSION,
        "type": layout.kind,
        "config": {
            "R": _round6(config.R),
            "R_max": _round6(config.r_max),
            "arc_band": [_round6(config.band[0]), _round6(config.band[1])],
            "arc_gap": _round6(config.arc_gap),
            "weight_domain": list(config.weight_domain),
            "hard_color": config.hard_color,
            "start_angle": _round6(config.start_angle),
            "node_radius": _round6(config.node_r),
            "font_size": _round6(config.font),
        },
        "constraints": [
            {
                "kind": p.kind,
                "id": p.id,
                "theta": _round6(p.theta),
                "x": _round6(p.x),
                "y": _round6(p.y),
                "color": p.color,
                "weight": p.weight,
                "label_rotation": _round6(p.label_rotation),
                "label_mirrored": p.label_mirrored,
                "label_anchor": [
                    _round6(p.label_anchor[0]),
                    _round6(p.label_anchor[1]),
                ],
            }
            for p in layout.constraint_placements
        ],
        "arcs": [
            {
                "path": list(a.path),
                "segment": a.segment,
                "depth": a.depth,
                "start_angle": _round6(a.start_angle),
                "end_angle": _round6(a.end_angle),
                "r_inner": _round6(a.r_inner),
                "r_outer": _round6(a.r_outer),
                "color": a.color,
                "mean_weight": None
                if a.mean_weight is None
                else _round6(a.mean_weight),
                "label": a.label,
                "label_rotation": _round6(a.label_rotation),
            }
            for a in layout.arcs
        ],
        "features": [
            {
                "kind": f.kind,
                "name": f.name,
                "arity": f.arity,
                "label": f.label,
                "x": _round6(f.x),
                "y": _round6(f.y),
                "clamped": f.clamped,
                "degree": f.degree,
            }
            for f in layout.feature_placements
        ],
        "edges": [
            {
                "feature": e.feature_index,
                "constraint": e.constraint_index,
                "x1": _round6(e.x1),
                "y1": _round6(e.y1),
                "x2": _round6(e.x2),
                "y2": _round6(e.y2),
                "count": e.count,
            }
            for e in layout.edge_paths
        ],
        "diagnostics": [jsonio.diagnostic_to_obj(d) for d in layout.diagnostics],
    }


def layout_to_json(layout: LayoutModel) -> str:
    from ..parser.jsonio import dumps_canonical

    return dumps_canonical(layout_to_obj(layout))
