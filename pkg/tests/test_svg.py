"""SVG export tests: determinism, golden file, empty layout."""

import pathlib

from asplens.features import extract_features
from asplens.hypergraph import build_hypergraph
from asplens.layout import (
    LayoutConfig,
    LayoutModel,
    compute_layout,
    render_svg,
)
from asplens.model import build_hierarchy, extract_constraints, extract_weights
from asplens.parser import parse_program

GOLDEN = pathlib.Path(__file__).parent / "golden" / "layout_three.svg"


def three_constraint_layout():
    source = (
        "soft(bin_high,E) :- bin(E,B), B > 12.\n"
        "soft(bin_low,E) :- bin(E,B), B < 3.\n"
        "soft(zero,E) :- channel(E,x), not zero(E).\n"
    )
    weights = (
        "#const bin_high_weight = 2.\n"
        "#const bin_low_weight = 10.\n"
        "#const zero_weight = 25.\n"
    )
    cset = build_hierarchy(
        extract_weights(
            parse_program(weights),
            extract_constraints(parse_program(source)),
        )
    )
    incidences = extract_features(cset, {"predicate", "variable"})
    graph = build_hypergraph(
        cset, incidences, "soft", {"predicate", "variable"}, 2
    )
    return compute_layout(graph, cset.hierarchy, LayoutConfig())


def test_golden_file_match():
    assert render_svg(three_constraint_layout()) == GOLDEN.read_text()


def test_identical_bytes_across_runs():
    first = render_svg(three_constraint_layout())
    second = render_svg(three_constraint_layout())
    assert first == second


def test_empty_layout_is_valid_document():
    layout = LayoutModel(
        kind="soft",
        config=LayoutConfig(),
        constraint_placements=(),
        arcs=(),
        feature_placements=(),
        edge_paths=(),
    )
    svg = render_svg(layout)
    assert svg.startswith("<svg ")
    assert svg.rstrip().endswith("</svg>")
    assert '<g class="constraints">' in svg


def test_draws_every_element_class():
    svg = render_svg(three_constraint_layout())
    assert svg.count("<circle") >= 3 + 3  # nodes and features
    assert svg.count("<line") == 7
    assert svg.count("<path") == 4  # bin, bin/high, bin/low, zero arcs
    assert "bin_high" in svg


def test_label_text_is_escaped():
    layout = three_constraint_layout()
    svg = render_svg(layout)
    assert "&lt;" not in svg  # no markup-significant ids in fixture
    assert "<text" in svg
