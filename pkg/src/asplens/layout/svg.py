"""Deterministic SVG export of a radial layout.

Pure string building: identical layouts yield identical bytes. Layout
coordinates are already in screen convention (y down, angles clockwise
from the positive x axis), so positions map straight onto the SVG plane.
"""

from __future__ import annotations

import math

from .radial import Arc, ConstraintPlacement, LayoutModel

_EDGE_STYLE = 'stroke="#b8b8b8" stroke-width="1" fill="none" opacity="0.75"'
_FEATURE_FILL = "#8a8a8a"


def _fmt(value: float) -> str:
    out = f"{value:.2f}"
    return "0.00" if out == "-0.00" else out


def _arc_path(arc: Arc) -> str:
    t1, t2 = arc.start_angle, arc.end_angle
    large = 1 if (t2 - t1) > math.pi else 0

    def pt(theta: float, radius: float) -> str:
        return f"{_fmt(radius * math.cos(theta))} {_fmt(radius * math.sin(theta))}"

    ro, ri = arc.r_outer, arc.r_inner
    # increasing angle is clockwise on screen: sweep 1 out, 0 back
    return (
        f"M {pt(t1, ro)} "
        f"A {_fmt(ro)} {_fmt(ro)} 0 {large} 1 {pt(t2, ro)} "
        f"L {pt(t2, ri)} "
        f"A {_fmt(ri)} {_fmt(ri)} 0 {large} 0 {pt(t1, ri)} Z"
    )


def _constraint_label(p: ConstraintPlacement, font: float) -> str:
    ax, ay = p.label_anchor
    anchor = "end" if p.label_mirrored else "start"
    deg = math.degrees(p.label_rotation)
    return (
        f'<text transform="translate({_fmt(ax)} {_fmt(ay)}) '
        f'rotate({_fmt(deg)})" text-anchor="{anchor}" '
        f'font-size="{_fmt(font)}" dominant-baseline="middle">'
        f"{_escape(p.id)}</text>"
    )


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def render_svg(layout: LayoutModel) -> str:
    config = layout.config
    margin = 1.32 * config.R
    size = 2 * margin
    font = config.font
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(-margin)} {_fmt(-margin)} {_fmt(size)} {_fmt(size)}" '
        f'width="{round(size)}" height="{round(size)}" '
        f'font-family="sans-serif">'
    ]

    parts.append('<g class="edges">')
    for e in layout.edge_paths:
        parts.append(
            f'<line x1="{_fmt(e.x1)}" y1="{_fmt(e.y1)}" x2="{_fmt(e.x2)}" '
            f'y2="{_fmt(e.y2)}" {_EDGE_STYLE}/>'
        )
    parts.append("</g>")

    parts.append('<g class="arcs">')
    for arc in layout.arcs:
        parts.append(
            f'<path d="{_arc_path(arc)}" fill="{arc.color}" '
            f'stroke="#d0d0d0" stroke-width="0.5"/>'
        )
        if arc.label:
            mid = (arc.start_angle + arc.end_angle) / 2
            mid_r = (arc.r_inner + arc.r_outer) / 2
            x = mid_r * math.cos(mid)
            y = mid_r * math.sin(mid)
            deg = math.degrees(arc.label_rotation)
            parts.append(
                f'<text transform="translate({_fmt(x)} {_fmt(y)}) '
                f'rotate({_fmt(deg)})" text-anchor="middle" '
                f'dominant-baseline="middle" font-size="{_fmt(0.9 * font)}">'
                f"{_escape(arc.label)}</text>"
            )
    parts.append("</g>")

    parts.append('<g class="features">')
    for f in layout.feature_placements:
        r = 0.33 * config.node_r * (1 + 0.18 * math.sqrt(f.degree))
        parts.append(
            f'<circle cx="{_fmt(f.x)}" cy="{_fmt(f.y)}" r="{_fmt(r)}" '
            f'fill="{_FEATURE_FILL}"/>'
        )
        parts.append(
            f'<text x="{_fmt(f.x)}" y="{_fmt(f.y - 1.6 * r)}" '
            f'text-anchor="middle" font-size="{_fmt(0.8 * font)}" '
            f'fill="#555555">{_escape(f.label)}</text>'
        )
    parts.append("</g>")

    parts.append('<g class="constraints">')
    for p in layout.constraint_placements:
        parts.append(
            f'<circle cx="{_fmt(p.x)}" cy="{_fmt(p.y)}" r="{_fmt(config.node_r)}" '
            f'fill="{p.color}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(_constraint_label(p, font))
    parts.append("</g>")

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
