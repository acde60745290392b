"""Radial layout tests: ring geometry, colormap, arcs, feature clamping."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asplens.features import extract_features
from asplens.hypergraph import build_hypergraph
from asplens.layout import (
    BLUE,
    RED,
    WHITE,
    EmptyGraph,
    LayoutConfig,
    compute_layout,
    hex_to_rgb,
    label_transform,
    place_arcs,
    place_constraints,
    weight_color,
)
from asplens.model import build_hierarchy, extract_constraints, extract_weights
from asplens.parser import parse_program

TAU = 2 * math.pi


def build(source, weights="", filter_kind="soft", min_degree=2,
          kinds=("predicate", "variable")):
    cset = extract_constraints(parse_program(source))
    cset = extract_weights(parse_program(weights), cset)
    cset = build_hierarchy(cset)
    incidences = extract_features(cset, set(kinds))
    graph = build_hypergraph(cset, incidences, filter_kind, set(kinds),
                             min_degree)
    return cset, graph


def soft_kb(ids):
    return "\n".join(f"soft({i},E) :- p(E)." for i in ids)


def test_uniform_angles_four_nodes():
    cset, graph = build(soft_kb(["a", "b", "c", "d"]))
    config = LayoutConfig(start_angle=0.0)
    placements = place_constraints(graph, cset.hierarchy, config)
    angles = [p.theta for p in placements]
    assert angles == pytest.approx([0, math.pi / 2, math.pi, 3 * math.pi / 2])


def test_single_node_at_start_angle():
    cset, graph = build(soft_kb(["only"]))
    config = LayoutConfig()
    placements = place_constraints(graph, cset.hierarchy, config)
    assert len(placements) == 1
    assert placements[0].theta == pytest.approx(config.start_angle)


def test_positions_on_ring():
    cset, graph = build(soft_kb([f"c{i}" for i in range(7)]))
    config = LayoutConfig()
    for p in place_constraints(graph, cset.hierarchy, config):
        assert math.hypot(p.x, p.y) == pytest.approx(config.R)


def test_dfs_contiguity():
    source = soft_kb(["bin_high", "bin_low", "mark_m1"])
    cset, graph = build(source)
    placements = place_constraints(graph, cset.hierarchy, LayoutConfig())
    order = [p.id for p in placements]
    assert order == ["bin_high", "bin_low", "mark_m1"]


def test_empty_graph_raises():
    cset, graph = build("fieldtype(a,b).")
    with pytest.raises(EmptyGraph):
        place_constraints(graph, cset.hierarchy, LayoutConfig())


def test_colormap_endpoints_exact():
    config = LayoutConfig()
    assert weight_color(0, config) == BLUE
    assert weight_color(50, config) == RED
    assert weight_color(25, config) == WHITE


def test_hard_color_for_absent_weight():
    config = LayoutConfig()
    assert weight_color(None, config) == config.hard_color


def test_out_of_domain_clamps_with_diagnostic():
    config = LayoutConfig()
    diagnostics = []
    assert weight_color(99, config, diagnostics) == RED
    assert weight_color(-3, config, diagnostics) == BLUE
    assert len(diagnostics) == 2
    assert all(d.construct == "weight-out-of-domain" for d in diagnostics)


def test_colormap_stays_on_blue_white_red_path():
    config = LayoutConfig()
    for w in range(0, 26):
        r, g, b = hex_to_rgb(weight_color(w, config))
        assert b >= r  # blue half leans blue
    for w in range(25, 51):
        r, g, b = hex_to_rgb(weight_color(w, config))
        assert r >= b  # red half leans red


def test_colormap_lightness_monotone_per_half():
    from asplens.layout.colormap import rgb_to_lab

    config = LayoutConfig()
    lightness = [
        rgb_to_lab(hex_to_rgb(weight_color(w, config)))[0] for w in range(51)
    ]
    for i in range(25):
        assert lightness[i] <= lightness[i + 1] + 1e-6
    for i in range(25, 50):
        assert lightness[i] >= lightness[i + 1] - 1e-6


def test_label_transform_right_side():
    rotation, mirrored = label_transform(0.0)
    assert not mirrored
    assert rotation == pytest.approx(0.0)


def test_label_transform_left_side():
    rotation, mirrored = label_transform(math.pi)
    assert mirrored
    assert rotation == pytest.approx(0.0)


def test_label_transform_boundaries_open():
    assert label_transform(math.pi / 2)[1] is False
    assert label_transform(3 * math.pi / 2)[1] is False
    assert label_transform(math.pi / 2 + 1e-9)[1] is True
    assert label_transform(3 * math.pi / 2 - 1e-9)[1] is True


@given(st.floats(-10 * TAU, 10 * TAU, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_label_transform_mirror_rule(theta):
    rotation, mirrored = label_transform(theta)
    t = theta % TAU
    assert mirrored == (math.pi / 2 < t < 3 * math.pi / 2)
    assert 0 <= rotation < TAU


def test_single_group_arc_spans_circle():
    cset, graph = build(soft_kb([f"grp_c{i}" for i in range(4)]))
    config = LayoutConfig()
    placements = place_constraints(graph, cset.hierarchy, config)
    arcs = place_arcs(cset.hierarchy, placements, config)
    (arc,) = [a for a in arcs if a.depth == 0]
    width = arc.end_angle - arc.start_angle
    assert width == pytest.approx(TAU - config.arc_gap)


def test_arc_mean_weight_color():
    source = "soft(bin_high,E) :- p(E).\nsoft(bin_low,E) :- p(E)."
    weights = "#const bin_high_weight = 2.\n#const bin_low_weight = 10."
    cset, graph = build(source, weights)
    config = LayoutConfig()
    placements = place_constraints(graph, cset.hierarchy, config)
    arcs = place_arcs(cset.hierarchy, placements, config)
    bin_arc = [a for a in arcs if a.segment == "bin"][0]
    assert bin_arc.mean_weight == pytest.approx(6.0)
    assert bin_arc.color == weight_color(6, config)


def test_two_level_arcs_nested():
    ids = ["enc_a", "enc_b_c", "enc_b_d", "mark_x", "mark_y"]
    cset, graph = build(soft_kb(ids))
    config = LayoutConfig()
    placements = place_constraints(graph, cset.hierarchy, config)
    arcs = place_arcs(cset.hierarchy, placements, config)
    by_path = {a.path: a for a in arcs}
    parentage = []
    for path, arc in by_path.items():
        if len(path) > 1:
            parentage.append((arc, by_path[path[:-1]]))
    assert parentage
    for child, parent in parentage:
        assert child.start_angle >= parent.start_angle - 1e-12
        assert child.end_angle <= parent.end_angle + 1e-12
        assert child.depth == parent.depth + 1
        assert child.r_inner > parent.r_outer  # inside-out stacking


def test_same_depth_arcs_disjoint():
    ids = ["bin_a", "bin_b", "mark_a", "mark_b", "zero_a", "zero_b"]
    cset, graph = build(soft_kb(ids))
    config = LayoutConfig()
    placements = place_constraints(graph, cset.hierarchy, config)
    arcs = sorted(
        (a for a in place_arcs(cset.hierarchy, placements, config)
         if a.depth == 0),
        key=lambda a: a.start_angle,
    )
    for left, right in zip(arcs, arcs[1:]):
        assert left.end_angle < right.start_angle


def test_hard_view_arcs_use_hard_color():
    source = "hard(bin_a) :- p(E).\nhard(bin_b) :- q(E)."
    cset, graph = build(source, filter_kind="hard")
    config = LayoutConfig()
    placements = place_constraints(graph, cset.hierarchy, config)
    arcs = place_arcs(cset.hierarchy, placements, config)
    assert all(a.color == config.hard_color for a in arcs)
    assert all(a.mean_weight is None for a in arcs)
    assert all(p.color == config.hard_color for p in placements)


def test_feature_centroid_of_opposite_nodes_is_center():
    cset, graph = build(soft_kb(["a", "b"]), kinds=("variable",))
    config = LayoutConfig(start_angle=0.0)
    layout = compute_layout(graph, cset.hierarchy, config)
    (feature,) = layout.feature_placements
    assert math.hypot(feature.x, feature.y) == pytest.approx(0.0, abs=1e-9)
    assert not feature.clamped


def test_degree_two_adjacent_feature_clamped():
    # two adjacent constraints out of many: centroid lands outside R_max
    ids = [f"c{i}" for i in range(12)]
    source = "\n".join(
        f"soft({i},E) :- p(E), shared(Q{'1' if i in ('c0', 'c1') else i})."
        for i in ids
    )
    cset, graph = build(source, kinds=("variable",))
    config = LayoutConfig()
    layout = compute_layout(graph, cset.hierarchy, config)
    q1 = [f for f in layout.feature_placements if f.name == "Q1"][0]
    assert q1.clamped
    assert math.hypot(q1.x, q1.y) == pytest.approx(config.r_max)


def test_all_features_within_r_max():
    ids = [f"c{i}" for i in range(9)]
    source = "\n".join(
        f"soft({ids[i]},E) :- p{i % 3}(E), q{i % 2}(X)." for i in range(9)
    )
    cset, graph = build(source)
    config = LayoutConfig()
    layout = compute_layout(graph, cset.hierarchy, config)
    assert layout.feature_placements
    for f in layout.feature_placements:
        assert math.hypot(f.x, f.y) <= config.r_max + 1e-12


def test_config_invariant_validation():
    with pytest.raises(ValueError):
        LayoutConfig(R=100, R_max=99, arc_band=(50, 80))
    with pytest.raises(ValueError):
        LayoutConfig(R=100, arc_band=(80, 101))


def test_layout_json_deterministic():
    from asplens.layout import layout_to_json

    ids = ["bin_high", "bin_low", "mark_m1", "zero"]
    cset, graph = build(soft_kb(ids))
    first = layout_to_json(compute_layout(graph, cset.hierarchy))
    second = layout_to_json(compute_layout(graph, cset.hierarchy))
    assert first == second
    assert '"schema_version":"asplens.layout/' in first
