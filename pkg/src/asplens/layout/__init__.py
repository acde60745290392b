"""Radial layout: ring placement, hierarchy arcs, diverging weight colors,
feature centroids, and SVG export."""

from .colormap import BLUE, RED, WHITE, diverging_color, hex_to_rgb, rgb_to_hex
from .radial import (
    LAYOUT_SCHEMA_VERSION,
    Arc,
    ConstraintPlacement,
    EdgePath,
    EmptyGraph,
    FeaturePlacement,
    LayoutConfig,
    LayoutModel,
    compute_layout,
    edge_segments,
    label_transform,
    layout_to_json,
    layout_to_obj,
    normalize_angle,
    place_arcs,
    place_constraints,
    place_features,
    weight_color,
)
from .svg import render_svg

__all__ = [
    "LAYOUT_SCHEMA_VERSION",
    "Arc",
    "BLUE",
    "ConstraintPlacement",
    "EdgePath",
    "EmptyGraph",
    "FeaturePlacement",
    "LayoutConfig",
    "LayoutModel",
    "RED",
    "WHITE",
    "compute_layout",
    "diverging_color",
    "edge_segments",
    "hex_to_rgb",
    "label_transform",
    "layout_to_json",
    "layout_to_obj",
    "normalize_angle",
    "place_arcs",
    "place_constraints",
    "place_features",
    "render_svg",
    "rgb_to_hex",
    "weight_color",
]
