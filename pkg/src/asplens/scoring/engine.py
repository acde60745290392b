"""Violation evaluation: count satisfying substitutions per constraint,
score and rank candidate specs, and relate reports across specs.

A violation of a constraint by a spec is one distinct substitution over
the constraint's body variables under which every positive literal is a
fact, every negated literal is absent, and every comparison holds. A
spec's cost is the weight-times-count sum over its violated soft
constraints; hard violations mark the spec ill-formed without stopping
the report.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..model import Constraint, ConstraintSet, SOFT
from ..parser.jsonio import diagnostic_to_obj, dumps_canonical
from ..parser.syntax import Diagnostic
from . import backend
from .compile import CompiledBody, EncodedFacts, UnsupportedBody, compile_body
from .facts import FactSet

REPORT_SCHEMA_VERSION = "asplens.report/1"

DEFAULT_WITNESS_CAP = 32


class UnknownConstraint(KeyError):
    pass


class UnknownSpec(KeyError):
    pass


@dataclass(frozen=True, slots=True)
class Violation:
    kind: str
    id: str
    count: int
    weight: int | None
    witnesses: tuple[dict[str, int | str], ...]

    @property
    def ref(self) -> tuple[str, str]:
        return (self.kind, self.id)


@dataclass(frozen=True, slots=True)
class ViolationReport:
    spec_name: str
    violations: tuple[Violation, ...]  # soft, count > 0, sorted by id
    hard_violations: tuple[Violation, ...]
    cost: int
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def ill_formed(self) -> bool:
        return bool(self.hard_violations)

    @property
    def violated_refs(self) -> frozenset[tuple[str, str]]:
        return frozenset(
            v.ref for v in self.violations + self.hard_violations
        )

    def count_of(self, ref: tuple[str, str]) -> int:
        for v in self.violations + self.hard_violations:
            if v.ref == ref:
                return v.count
        return 0


def _decode_witnesses(
    plan: CompiledBody, rows: list[tuple[int, ...]]
) -> tuple[dict[str, int | str], ...]:
    names = plan.slot_names
    values = plan.values

    def val(vid: int) -> int | str:
        v = values[vid]
        # opaque function values are interned with wrapping parens
        if isinstance(v, str) and v.startswith("("):
            return v[1:-1]
        return v

    return tuple(
        {names[j]: val(vid) for j, vid in enumerate(row)} for row in rows
    )


def evaluate_constraint(
    constraint: Constraint,
    facts: FactSet,
    enc: EncodedFacts | None = None,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> tuple[int, tuple[dict[str, int | str], ...]]:
    """Distinct satisfying substitutions of the constraint body over the
    facts, plus up to witness_cap of them as variable-to-value maps.

    Raises UnsupportedBody when the body contains a construct the
    evaluator skips (function terms); evaluate_spec turns that into a
    diagnostic instead.
    """
    if enc is None:
        enc = EncodedFacts(facts)
    plan = compile_body(constraint, enc)
    count, rows = backend.execute(plan, witness_cap)
    return count, _decode_witnesses(plan, rows)


def evaluate_spec(
    cset: ConstraintSet,
    facts: FactSet,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> ViolationReport:
    """Evaluate every constraint against one spec's facts.

    cost = Σ weight × count over violated soft constraints; a violated
    soft constraint without a weight contributes 0 and is flagged.
    """
    enc = EncodedFacts(facts)
    diagnostics = list(facts.diagnostics)
    soft_entries: list[Violation] = []
    hard_entries: list[Violation] = []
    cost = 0
    for constraint in cset.constraints:
        try:
            count, witnesses = evaluate_constraint(
                constraint, facts, enc, witness_cap
            )
        except UnsupportedBody as exc:
            diagnostics.append(
                Diagnostic(
                    severity="warning",
                    message=(
                        f"{constraint.kind} constraint '{constraint.id}' "
                        f"not evaluated: {exc.reason}"
                    ),
                    span=constraint.span,
                    construct="unsupported-body",
                )
            )
            continue
        if count == 0:
            continue
        entry = Violation(
            kind=constraint.kind,
            id=constraint.id,
            count=count,
            weight=constraint.weight,
            witnesses=witnesses,
        )
        if constraint.kind == SOFT:
            soft_entries.append(entry)
            if constraint.weight is None:
                diagnostics.append(
                    Diagnostic(
                        severity="warning",
                        message=(
                            f"soft constraint '{constraint.id}' violated "
                            "but has no weight; counted as 0 in cost"
                        ),
                        span=constraint.span,
                        construct="missing-weight",
                    )
                )
            else:
                cost += constraint.weight * count
        else:
            hard_entries.append(entry)
    soft_entries.sort(key=lambda v: v.id)
    hard_entries.sort(key=lambda v: v.id)
    return ViolationReport(
        spec_name=facts.name,
        violations=tuple(soft_entries),
        hard_violations=tuple(hard_entries),
        cost=cost,
        diagnostics=tuple(diagnostics),
    )


def rank_specs(reports: list[ViolationReport]) -> list[ViolationReport]:
    """Ascending cost, spec name breaking ties; ill-formed specs last."""
    return sorted(
        reports, key=lambda r: (r.ill_formed, r.cost, r.spec_name)
    )


def violations_of_constraint(
    reports: list[ViolationReport],
    ref: tuple[str, str],
    cset: ConstraintSet | None = None,
) -> list[tuple[str, int]]:
    """Specs violating the constraint, highest count first.

    With a ConstraintSet given, an unknown ref raises UnknownConstraint;
    without one, any ref simply matches nothing.
    """
    kind, id = ref
    if cset is not None and cset.get(kind, id) is None:
        raise UnknownConstraint(f"{kind}:{id}")
    out = [
        (report.spec_name, report.count_of(ref))
        for report in reports
        if report.count_of(ref) > 0
    ]
    out.sort(key=lambda pair: (-pair[1], pair[0]))
    return out


def shared_violations(
    reports: list[ViolationReport],
    spec_names: list[str],
) -> tuple[tuple[tuple[str, str], ...], dict[str, tuple[tuple[str, str], ...]]]:
    """Violated-constraint refs common to all named specs, and per spec
    the refs none of the other named specs violates."""
    names: list[str] = []
    for name in spec_names:
        if name not in names:
            names.append(name)
    if len(names) < 2:
        raise ValueError("shared_violations needs at least two spec names")
    by_name = {report.spec_name: report for report in reports}
    refs: dict[str, frozenset[tuple[str, str]]] = {}
    for name in names:
        report = by_name.get(name)
        if report is None:
            raise UnknownSpec(name)
        refs[name] = report.violated_refs
    common = frozenset.intersection(*refs.values())
    exclusive = {
        name: tuple(
            sorted(refs[name] - frozenset.union(
                *(refs[other] for other in names if other != name)
            ))
        )
        for name in names
    }
    return tuple(sorted(common)), exclusive


def _violation_to_obj(v: Violation) -> dict:
    return {
        "kind": v.kind,
        "id": v.id,
        "count": v.count,
        "weight": v.weight,
        "witnesses": [dict(w) for w in v.witnesses],
    }


def report_to_obj(report: ViolationReport) -> dict:
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "spec": report.spec_name,
        "cost": report.cost,
        "ill_formed": report.ill_formed,
        "violations": [_violation_to_obj(v) for v in report.violations],
        "hard_violations": [
            _violation_to_obj(v) for v in report.hard_violations
        ],
        "diagnostics": [diagnostic_to_obj(d) for d in report.diagnostics],
    }


def report_to_json(report: ViolationReport) -> str:
    return dumps_canonical(report_to_obj(report))


def reports_to_obj(reports: list[ViolationReport]) -> dict:
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "reports": [report_to_obj(r) for r in reports],
    }


def reports_to_json(reports: list[ViolationReport]) -> str:
    return dumps_canonical(reports_to_obj(reports))
