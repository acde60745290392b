"""Constraint model: classify parsed rules into hard and soft constraints,
join weights from a separate declarations source, and derive the identifier
hierarchy used by the layout.

Hard and soft constraints are recognized by their head predicate. The first
head argument is the constraint identifier; identifiers split on ``_`` form
a prefix tree with single-child chains collapsed for readability.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterator

from .parser.syntax import (
    BodyLiteral,
    Comment,
    ConstDecl,
    Constant,
    Diagnostic,
    Program,
    Rule,
    Span,
    Statement,
    Term,
    _NOSPAN,
)

MODEL_SCHEMA_VERSION = "asplens.model/1"

HARD = "hard"
SOFT = "soft"
CONSTRAINT_KINDS = (HARD, SOFT)


class MalformedConstraint(Exception):
    """Raised internally when a hard/soft rule's first head argument is not
    a plain constant; surfaced as a diagnostic."""

    def __init__(self, span: Span, message: str):
        super().__init__(message)
        self.span = span
        self.message = message


@dataclass(frozen=True, slots=True)
class Constraint:
    kind: str
    id: str
    head_extra_args: tuple[Term, ...]
    body: tuple[BodyLiteral, ...]
    weight: int | None = None
    doc: str | None = None
    span: Span = field(default=_NOSPAN, compare=False)
    hierarchy_path: tuple[str, ...] = ()

    @property
    def key(self) -> tuple[str, str]:
        return (self.kind, self.id)


@dataclass(frozen=True, slots=True)
class HierarchyNode:
    segment: str
    children: tuple["HierarchyNode", ...] = ()
    constraint_ids: tuple[tuple[str, str], ...] = ()
    depth: int = -1

    def walk(self) -> Iterator["HierarchyNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def leaves(self) -> Iterator["HierarchyNode"]:
        if not self.children:
            yield self
        else:
            for child in self.children:
                yield from child.leaves()


#: placeholder used before build_hierarchy runs
EMPTY_HIERARCHY = HierarchyNode(segment="")


@dataclass(frozen=True, slots=True)
class ConstraintSet:
    constraints: tuple[Constraint, ...]
    hierarchy: HierarchyNode = EMPTY_HIERARCHY
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def soft(self) -> tuple[Constraint, ...]:
        return tuple(c for c in self.constraints if c.kind == SOFT)

    @property
    def hard(self) -> tuple[Constraint, ...]:
        return tuple(c for c in self.constraints if c.kind == HARD)

    def get(self, kind: str, id: str) -> Constraint | None:
        for c in self.constraints:
            if c.kind == kind and c.id == id:
                return c
        return None


def extract_constraints(program: Program) -> ConstraintSet:
    """Collect hard/soft rules from a parsed knowledge base.

    Rules whose head predicate is ``hard`` or ``soft`` become constraints;
    the first head argument must be a constant and serves as the id.
    Attached comments directly above a rule become its doc string.
    Everything else in the program is ignored.
    """
    constraints: list[Constraint] = []
    diagnostics: list[Diagnostic] = []
    seen: set[tuple[str, str]] = set()

    statements = program.statements
    for index, stmt in enumerate(statements):
        if not isinstance(stmt, Rule) or stmt.head.predicate not in CONSTRAINT_KINDS:
            continue
        try:
            constraint = _rule_to_constraint(stmt, _doc_for(statements, index))
        except MalformedConstraint as exc:
            diagnostics.append(
                Diagnostic(
                    severity="error",
                    message=exc.message,
                    span=exc.span,
                    construct="malformed-constraint",
                )
            )
            continue
        if constraint.key in seen:
            diagnostics.append(
                Diagnostic(
                    severity="error",
                    message=f"duplicate {constraint.kind} constraint id "
                    f"{constraint.id!r}",
                    span=stmt.span,
                    construct="duplicate-identifier",
                )
            )
            continue
        seen.add(constraint.key)
        constraints.append(constraint)

    return ConstraintSet(
        constraints=tuple(constraints), diagnostics=tuple(diagnostics)
    )


def _rule_to_constraint(rule: Rule, doc: str | None) -> Constraint:
    head = rule.head
    if not head.args:
        raise MalformedConstraint(
            rule.span, f"{head.predicate} head has no identifier argument"
        )
    first = head.args[0]
    if not isinstance(first, Constant):
        raise MalformedConstraint(
            rule.span,
            f"{head.predicate} identifier must be a plain constant",
        )
    return Constraint(
        kind=head.predicate,
        id=first.name,
        head_extra_args=tuple(head.args[1:]),
        body=rule.body,
        doc=doc,
        span=rule.span,
    )


def _doc_for(statements: tuple[Statement, ...], index: int) -> str | None:
    """Join the contiguous block of attached comments above statement i."""
    lines: list[str] = []
    j = index - 1
    while j >= 0 and isinstance(statements[j], Comment) and statements[j].attached:
        lines.append(statements[j].body_text)
        j -= 1
    if not lines:
        return None
    return "\n".join(reversed(lines))


WEIGHT_SUFFIX = "_weight"

# fallback scanner for weight files that do not fully parse
_WEIGHT_RE = re.compile(
    r"#const\s+([a-z][A-Za-z0-9_]*)\s*=\s*(-?[0-9]+)\s*\."
)


def extract_weights(weights_program: Program, cset: ConstraintSet) -> ConstraintSet:
    """Attach ``<id>_weight`` const declarations to soft constraints.

    Mismatches in either direction are diagnostics, never errors: soft
    constraints without a declaration keep weight None, declarations
    without a matching soft constraint are reported as unmatched.
    """
    decls: dict[str, tuple[int, Span]] = {}
    diagnostics = list(cset.diagnostics)

    for stmt in weights_program.statements:
        if not isinstance(stmt, ConstDecl):
            continue
        if not stmt.name.endswith(WEIGHT_SUFFIX):
            continue
        target = stmt.name[: -len(WEIGHT_SUFFIX)]
        if target in decls:
            diagnostics.append(
                Diagnostic(
                    severity="warning",
                    message=f"duplicate weight declaration {stmt.name}",
                    span=stmt.span,
                    construct="duplicate-weight",
                )
            )
            continue
        decls[target] = (stmt.value, stmt.span)

    soft_ids = {c.id for c in cset.constraints if c.kind == SOFT}
    updated: list[Constraint] = []
    for c in cset.constraints:
        if c.kind != SOFT:
            updated.append(c)
            continue
        if c.id in decls:
            value, span = decls[c.id]
            if value < 0:
                diagnostics.append(
                    Diagnostic(
                        severity="error",
                        message=f"weight for {c.id} must be non-negative, "
                        f"got {value}",
                        span=span,
                        construct="invalid-weight",
                    )
                )
                updated.append(c)
            else:
                updated.append(replace(c, weight=value))
        else:
            diagnostics.append(
                Diagnostic(
                    severity="warning",
                    message=f"soft constraint {c.id} has no weight declaration",
                    span=c.span,
                    construct="missing-weight",
                )
            )
            updated.append(c)

    for name in sorted(set(decls) - soft_ids):
        diagnostics.append(
            Diagnostic(
                severity="warning",
                message=f"weight declaration {name}{WEIGHT_SUFFIX} matches "
                "no soft constraint",
                span=decls[name][1],
                construct="unmatched-weight",
            )
        )

    return ConstraintSet(
        constraints=tuple(updated),
        hierarchy=cset.hierarchy,
        diagnostics=tuple(diagnostics),
    )


def scan_weight_declarations(text: str, source_name: str = "<weights>") -> Program:
    """Regex fallback: pull ``#const name = int.`` pairs out of text that
    does not survive full parsing. Comments are stripped line-wise first."""
    stripped_lines = []
    for line in text.split("\n"):
        cut = line.find("%")
        stripped_lines.append(line if cut < 0 else line[:cut])
    stripped = "\n".join(stripped_lines)

    line_starts = [0]
    for i, ch in enumerate(stripped):
        if ch == "\n":
            line_starts.append(i + 1)

    def locate(pos: int) -> tuple[int, int]:
        import bisect

        line = bisect.bisect_right(line_starts, pos)
        return line, pos - line_starts[line - 1] + 1

    statements = []
    for m in _WEIGHT_RE.finditer(stripped):
        line, col = locate(m.start())
        statements.append(
            ConstDecl(
                name=m.group(1),
                value=int(m.group(2)),
                span=Span(m.start(), m.end(), line, col),
            )
        )
    return Program(statements=tuple(statements), source_name=source_name)


def load_weights_program(text: str, source_name: str = "<weights>") -> Program:
    """Parse a weights source, falling back to the regex scanner when the
    text does not parse cleanly."""
    from .parser.parse import parse_program

    program = parse_program(text, source_name=source_name)
    if program.error_diagnostics:
        return scan_weight_declarations(text, source_name=source_name)
    return program


def build_hierarchy(
    cset: ConstraintSet, *, collapse_chains: bool = True
) -> ConstraintSet:
    """Populate the identifier hierarchy and each constraint's path.

    Identifiers split on ``_`` form a prefix tree over both kinds at once;
    with collapse_chains (the default) any interior segment with a single
    child and no terminating constraints is merged into that child.
    """
    keys = sorted({c.key for c in cset.constraints}, key=lambda k: (k[1], k[0]))

    root = _TrieNode("")
    for kind, cid in keys:
        node = root
        for segment in cid.split("_"):
            node = node.child(segment)
        node.constraint_ids.append((kind, cid))

    if collapse_chains:
        _collapse(root)

    frozen = _freeze(root, depth=-1)
    paths = {}
    _collect_paths(frozen, (), paths)

    updated = tuple(
        replace(c, hierarchy_path=paths[c.id]) for c in cset.constraints
    )
    return ConstraintSet(
        constraints=updated, hierarchy=frozen, diagnostics=cset.diagnostics
    )


class _TrieNode:
    __slots__ = ("segment", "children", "constraint_ids")

    def __init__(self, segment: str):
        self.segment = segment
        self.children: dict[str, _TrieNode] = {}
        self.constraint_ids: list[tuple[str, str]] = []

    def child(self, segment: str) -> "_TrieNode":
        node = self.children.get(segment)
        if node is None:
            node = _TrieNode(segment)
            self.children[segment] = node
        return node


def _collapse(node: _TrieNode) -> None:
    for child in list(node.children.values()):
        _collapse(child)
    if node.segment == "":
        return
    while len(node.children) == 1 and not node.constraint_ids:
        (only,) = node.children.values()
        node.segment = f"{node.segment}_{only.segment}"
        node.constraint_ids = only.constraint_ids
        node.children = only.children


def _freeze(node: _TrieNode, depth: int) -> HierarchyNode:
    children = tuple(
        _freeze(node.children[seg], depth + 1) for seg in sorted(node.children)
    )
    return HierarchyNode(
        segment=node.segment,
        children=children,
        constraint_ids=tuple(sorted(node.constraint_ids)),
        depth=depth,
    )


def _collect_paths(
    node: HierarchyNode,
    prefix: tuple[str, ...],
    out: dict[str, tuple[str, ...]],
) -> None:
    path = prefix + (node.segment,) if node.segment else prefix
    for _, cid in node.constraint_ids:
        out[cid] = path
    for child in node.children:
        _collect_paths(child, path, out)


def dfs_constraint_order(node: HierarchyNode) -> list[tuple[str, str]]:
    """Constraint keys in depth-first hierarchy order: ids terminating at a
    node come before those of its children, children lexicographic."""
    order: list[tuple[str, str]] = []
    order.extend(node.constraint_ids)
    for child in node.children:
        order.extend(dfs_constraint_order(child))
    return order


def model_to_obj(cset: ConstraintSet) -> dict:
    from .parser import jsonio

    return {
        "schema_version": MODEL_SCHEMA_VERSION,
        "constraints": [
            {
                "kind": c.kind,
                "id": c.id,
                "head_extra_args": [
                    jsonio.term_to_obj(t) for t in c.head_extra_args
                ],
                "body": [jsonio.literal_to_obj(l) for l in c.body],
                "weight": c.weight,
                "doc": c.doc,
                "span": jsonio.span_to_obj(c.span),
                "hierarchy_path": list(c.hierarchy_path),
            }
            for c in sorted(cset.constraints, key=lambda c: c.span.start)
        ],
        "hierarchy": _hierarchy_to_obj(cset.hierarchy),
        "diagnostics": [
            jsonio.diagnostic_to_obj(d) for d in cset.diagnostics
        ],
    }


def _hierarchy_to_obj(node: HierarchyNode) -> dict:
    return {
        "segment": node.segment,
        "depth": node.depth,
        "constraint_ids": [list(k) for k in node.constraint_ids],
        "children": [_hierarchy_to_obj(c) for c in node.children],
    }


def model_to_json(cset: ConstraintSet) -> str:
    from .parser.jsonio import dumps_canonical

    return dumps_canonical(model_to_obj(cset))


def model_from_obj(obj: dict) -> ConstraintSet:
    from .parser import jsonio

    constraints = tuple(
        Constraint(
            kind=c["kind"],
            id=c["id"],
            head_extra_args=tuple(
                jsonio.term_from_obj(t) for t in c["head_extra_args"]
            ),
            body=tuple(jsonio.literal_from_obj(l) for l in c["body"]),
            weight=c["weight"],
            doc=c["doc"],
            span=jsonio.span_from_obj(c["span"]),
            hierarchy_path=tuple(c["hierarchy_path"]),
        )
        for c in obj["constraints"]
    )
    return ConstraintSet(
        constraints=constraints,
        hierarchy=_hierarchy_from_obj(obj["hierarchy"]),
        diagnostics=tuple(
            jsonio.diagnostic_from_obj(d) for d in obj["diagnostics"]
        ),
    )


def _hierarchy_from_obj(obj: dict) -> HierarchyNode:
    return HierarchyNode(
        segment=obj["segment"],
        children=tuple(_hierarchy_from_obj(c) for c in obj["children"]),
        constraint_ids=tuple(tuple(k) for k in obj["constraint_ids"]),
        depth=obj["depth"],
    )


def model_from_json(text: str) -> ConstraintSet:
    import json

    return model_from_obj(json.loads(text))
