"""Feature extraction: shared syntax elements of constraint bodies.

A feature is either a body predicate (with its arity) or a named body
variable. Heads are excluded; the anonymous placeholder is excluded.
Features shared by several constraints are what the hypergraph connects.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Constraint, ConstraintSet
from .parser.syntax import Comparison, Negated, Positive, term_variables

PREDICATE = "predicate"
VARIABLE = "variable"
FEATURE_KINDS = (PREDICATE, VARIABLE)


@dataclass(frozen=True, slots=True)
class Feature:
    kind: str
    name: str
    arity: int | None = None

    @property
    def label(self) -> str:
        if self.kind == PREDICATE:
            return f"{self.name}/{self.arity}"
        return self.name

    @property
    def key(self) -> tuple[str, str, int]:
        return (self.kind, self.name, -1 if self.arity is None else self.arity)


@dataclass(frozen=True, slots=True)
class FeatureIncidence:
    feature: Feature
    constraint_id: tuple[str, str]
    occurrence_count: int


def constraint_features(
    constraint: Constraint, kinds: frozenset[str] | set[str]
) -> list[FeatureIncidence]:
    """Feature incidences of one constraint body, first-appearance order."""
    counts: dict[Feature, int] = {}
    for lit in constraint.body:
        if isinstance(lit, (Positive, Negated)):
            if PREDICATE in kinds:
                feat = Feature(PREDICATE, lit.atom.predicate, lit.atom.arity)
                counts[feat] = counts.get(feat, 0) + 1
            if VARIABLE in kinds:
                for term in lit.atom.args:
                    for name in term_variables(term):
                        feat = Feature(VARIABLE, name)
                        counts[feat] = counts.get(feat, 0) + 1
        elif isinstance(lit, Comparison) and VARIABLE in kinds:
            for operand in (lit.left, lit.right):
                for name in term_variables(operand):
                    feat = Feature(VARIABLE, name)
                    counts[feat] = counts.get(feat, 0) + 1
    return [
        FeatureIncidence(feat, constraint.key, n) for feat, n in counts.items()
    ]


def extract_features(
    cset: ConstraintSet, kinds: set[str] | frozenset[str] = frozenset(FEATURE_KINDS)
) -> list[FeatureIncidence]:
    """All feature incidences of a constraint set.

    kinds selects which feature kinds to extract and must be a non-empty
    subset of {predicate, variable}.
    """
    kinds = frozenset(kinds)
    if not kinds or not kinds <= frozenset(FEATURE_KINDS):
        raise ValueError(f"kinds must be a non-empty subset of {FEATURE_KINDS}")
    incidences: list[FeatureIncidence] = []
    for constraint in cset.constraints:
        incidences.extend(constraint_features(constraint, kinds))
    return incidences


def shared_features(
    incidences: list[FeatureIncidence], min_degree: int = 2
) -> list[tuple[Feature, list[tuple[str, str]]]]:
    """Group incidences by feature, keeping features touching at least
    min_degree distinct constraints. Constraint lists come back sorted."""
    if min_degree < 1:
        raise ValueError("min_degree must be >= 1")
    groups: dict[Feature, set[tuple[str, str]]] = {}
    for inc in incidences:
        groups.setdefault(inc.feature, set()).add(inc.constraint_id)
    result = [
        (feat, sorted(members))
        for feat, members in groups.items()
        if len(members) >= min_degree
    ]
    result.sort(key=lambda pair: pair[0].key)
    return result
