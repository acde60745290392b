"""Immutable bundle of inputs and derived artifacts.

A workspace reads the knowledge base, attaches weights, loads candidate
spec fact files, and caches hypergraphs, layouts, and reports keyed by
the parameters that produced them. The content hash of all inputs is
recorded so clients can tell when derived artifacts went stale.
"""

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from .features import FEATURE_KINDS, extract_features
from .hypergraph import Hypergraph, build_hypergraph
from .layout import LayoutModel, compute_layout
from .model import (
    ConstraintSet,
    build_hierarchy,
    extract_constraints,
    extract_weights,
    load_weights_program,
)
from .parser import parse_program
from .scoring import ViolationReport, evaluate_spec, facts_from_source, rank_specs

_KIND_TOKENS = {
    "predicate": "predicate",
    "predicates": "predicate",
    "variable": "variable",
    "variables": "variable",
}

CONSTRAINT_TYPES = ("hard", "soft")
DEFAULT_MIN_DEGREE = 2


def parse_feature_tokens(text: str) -> frozenset[str]:
    """Comma-separated feature kinds, plural or singular, to internal names."""
    kinds = set()
    for token in text.split(","):
        token = token.strip().lower()
        if not token:
            continue
        if token not in _KIND_TOKENS:
            raise ValueError(f"unknown feature kind {token!r}")
        kinds.add(_KIND_TOKENS[token])
    if not kinds:
        raise ValueError("no feature kinds given")
    return frozenset(kinds)


GraphKey = tuple[str, tuple[str, ...], int]


@dataclass
class Workspace:
    kb_path: Path
    weights_path: Path | None
    specs_dir: Path | None
    cset: ConstraintSet
    spec_sources: tuple[tuple[str, str], ...]
    input_hash: str
    _graphs: dict[GraphKey, Hypergraph] = field(default_factory=dict)
    _layouts: dict[GraphKey, LayoutModel] = field(default_factory=dict)
    _reports: tuple[ViolationReport, ...] | None = None

    def _key(self, kind: str, feature_kinds: frozenset[str], min_degree: int) -> GraphKey:
        if kind not in CONSTRAINT_TYPES:
            raise ValueError(f"type must be one of {CONSTRAINT_TYPES}")
        if min_degree < 0:
            raise ValueError("min_degree must be non-negative")
        return (kind, tuple(sorted(feature_kinds)), min_degree)

    def hypergraph(
        self,
        kind: str = "soft",
        feature_kinds: frozenset[str] = frozenset(FEATURE_KINDS),
        min_degree: int = DEFAULT_MIN_DEGREE,
    ) -> Hypergraph:
        key = self._key(kind, feature_kinds, min_degree)
        if key not in self._graphs:
            incidences = extract_features(self.cset, feature_kinds)
            self._graphs[key] = build_hypergraph(
                self.cset, incidences, kind, feature_kinds, min_degree
            )
        return self._graphs[key]

    def layout(
        self,
        kind: str = "soft",
        feature_kinds: frozenset[str] = frozenset(FEATURE_KINDS),
        min_degree: int = DEFAULT_MIN_DEGREE,
    ) -> LayoutModel:
        key = self._key(kind, feature_kinds, min_degree)
        if key not in self._layouts:
            graph = self.hypergraph(kind, feature_kinds, min_degree)
            self._layouts[key] = compute_layout(graph, self.cset.hierarchy)
        return self._layouts[key]

    def reports(self) -> tuple[ViolationReport, ...]:
        if self._reports is None:
            reports = [
                evaluate_spec(self.cset, facts_from_source(text, name=name))
                for name, text in self.spec_sources
            ]
            self._reports = tuple(rank_specs(reports))
        return self._reports


def _iter_spec_files(specs_dir: Path) -> list[Path]:
    return sorted(p for p in specs_dir.iterdir() if p.suffix == ".lp" and p.is_file())


def build_constraint_set(kb_path: Path, weights_path: Path | None) -> ConstraintSet:
    program = parse_program(kb_path.read_text(), source_name=kb_path.name)
    cset = build_hierarchy(extract_constraints(program))
    if weights_path is not None:
        weights_program = load_weights_program(
            weights_path.read_text(), source_name=weights_path.name
        )
        cset = extract_weights(weights_program, cset)
    return cset


def load_workspace(
    kb_path: str | Path,
    weights_path: str | Path | None = None,
    specs_dir: str | Path | None = None,
) -> Workspace:
    kb_path = Path(kb_path)
    weights_path = Path(weights_path) if weights_path is not None else None
    specs_dir = Path(specs_dir) if specs_dir is not None else None

    hasher = hashlib.sha256()
    hasher.update(kb_path.read_bytes())
    if weights_path is not None:
        hasher.update(b"\x00")
        hasher.update(weights_path.read_bytes())
    spec_sources: list[tuple[str, str]] = []
    if specs_dir is not None:
        for path in _iter_spec_files(specs_dir):
            text = path.read_text()
            spec_sources.append((path.stem, text))
            hasher.update(b"\x00")
            hasher.update(path.name.encode())
            hasher.update(b"\x00")
            hasher.update(text.encode())

    cset = build_constraint_set(kb_path, weights_path)
    return Workspace(
        kb_path=kb_path,
        weights_path=weights_path,
        specs_dir=specs_dir,
        cset=cset,
        spec_sources=tuple(spec_sources),
        input_hash=hasher.hexdigest(),
    )
