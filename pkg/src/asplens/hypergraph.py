"""Bipartite constraint/feature hypergraph.

Each shared feature becomes its own node connected to every constraint it
appears in, so a feature shared by n constraints costs n edges instead of
the n*(n-1)/2 pairwise links.
"""

from __future__ import annotations

from dataclasses import dataclass

from .features import FEATURE_KINDS, Feature, FeatureIncidence, shared_features
from .model import CONSTRAINT_KINDS, ConstraintSet



HYPERGRAPH_SCHEMA_VERSION = "asplens.hypergraph/1"


class UnknownNode(KeyError):
    pass


@dataclass(frozen=True, slots=True)
class ConstraintNode:
    kind: str
    id: str
    weight: int | None
    hierarchy_path: tuple[str, ...]

    @property
    def key(self) -> tuple[str, str]:
        return (self.kind, self.id)


@dataclass(frozen=True, slots=True)
class FeatureNode:
    feature: Feature
    degree: int


@dataclass(frozen=True, slots=True)
class Hypergraph:
    constraint_nodes: tuple[ConstraintNode, ...]
    feature_nodes: tuple[FeatureNode, ...]
    edges: tuple[tuple[int, int, int], ...]  # (feature idx, constraint idx, count)

    def constraint_index(self, key: tuple[str, str]) -> int:
        for i, node in enumerate(self.constraint_nodes):
            if node.key == key:
                return i
        raise UnknownNode(key)

    def feature_index(self, feature: Feature) -> int:
        for i, node in enumerate(self.feature_nodes):
            if node.feature == feature:
                return i
        raise UnknownNode(feature)


def build_hypergraph(
    cset: ConstraintSet,
    incidences: list[FeatureIncidence],
    filter_kind: str,
    feature_kinds: frozenset[str] | set[str] = frozenset(FEATURE_KINDS),
    min_degree: int = 2,
) -> Hypergraph:
    """Build the graph over constraints of one kind.

    Hard and soft constraints are never mixed in one graph. Constraints
    with no shared feature still get a node; features are re-thresholded
    against the filtered constraint set only.
    """
    if filter_kind not in CONSTRAINT_KINDS:
        raise ValueError(f"filter_kind must be one of {CONSTRAINT_KINDS}")
    feature_kinds = frozenset(feature_kinds)

    constraints = [c for c in cset.constraints if c.kind == filter_kind]
    constraint_nodes = tuple(
        ConstraintNode(c.kind, c.id, c.weight, c.hierarchy_path)
        for c in constraints
    )
    index_of = {node.key: i for i, node in enumerate(constraint_nodes)}

    filtered = [
        inc
        for inc in incidences
        if inc.constraint_id in index_of and inc.feature.kind in feature_kinds
    ]
    groups = shared_features(filtered, min_degree=min_degree)

    counts: dict[tuple[Feature, tuple[str, str]], int] = {}
    for inc in filtered:
        key = (inc.feature, inc.constraint_id)
        counts[key] = counts.get(key, 0) + inc.occurrence_count

    feature_nodes = []
    edges = []
    for f_idx, (feature, members) in enumerate(groups):
        feature_nodes.append(FeatureNode(feature, len(members)))
        for member in members:
            edges.append((f_idx, index_of[member], counts[(feature, member)]))

    return Hypergraph(
        constraint_nodes=constraint_nodes,
        feature_nodes=tuple(feature_nodes),
        edges=tuple(edges),
    )


def neighborhood(graph: Hypergraph, node_ref: tuple) -> list[tuple]:
    """Adjacent node refs, sorted. A ref is ("constraint", kind, id) or
    ("feature", feature_kind, name, arity)."""
    if node_ref[0] == "constraint":
        idx = graph.constraint_index((node_ref[1], node_ref[2]))
        refs = {
            _feature_ref(graph.feature_nodes[f].feature)
            for f, c, _ in graph.edges
            if c == idx
        }
    elif node_ref[0] == "feature":
        feature = Feature(
            kind=node_ref[1],
            name=node_ref[2],
            arity=node_ref[3] if len(node_ref) > 3 else None,
        )
        idx = graph.feature_index(feature)
        refs = {
            _constraint_ref(graph.constraint_nodes[c])
            for f, c, _ in graph.edges
            if f == idx
        }
    else:
        raise UnknownNode(node_ref)
    return sorted(refs, key=_ref_sort_key)


def _feature_ref(feature: Feature) -> tuple:
    return ("feature", feature.kind, feature.name, feature.arity)


def _constraint_ref(node: ConstraintNode) -> tuple:
    return ("constraint", node.kind, node.id)


def _ref_sort_key(ref: tuple) -> tuple:
    return tuple("" if part is None else str(part) for part in ref)


def hypergraph_to_obj(graph: Hypergraph) -> dict:
    return {
        "schema_version": HYPERGRAPH_SCHEMA_VERSION,
        "constraints": [
            {
                "kind": n.kind,
                "id": n.id,
                "weight": n.weight,
                "hierarchy_path": list(n.hierarchy_path),
            }
            for n in graph.constraint_nodes
        ],
        "features": [
            {
                "kind": n.feature.kind,
                "name": n.feature.name,
                "arity": n.feature.arity,
                "label": n.feature.label,
                "degree": n.degree,
            }
            for n in graph.feature_nodes
        ],
        "edges": [list(e) for e in graph.edges],
    }


def hypergraph_to_json(graph: Hypergraph) -> str:
    from .parser.jsonio import dumps_canonical

    return dumps_canonical(hypergraph_to_obj(graph))
