"""Typed syntax tree for the supported ASP subset.

All nodes are frozen dataclasses carrying a source span. Spans are
excluded from equality so that two structurally identical trees compare
equal regardless of where they were parsed from; the round-trip property
(parse of the canonical print equals the original) relies on this.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .tokens import Span

# Reserved head predicate for integrity constraints (":- body.").
CONSTRAINT_HEAD = "__constraint"

_NOSPAN = Span(0, 0, 1, 1)


def _span_field() -> Span:
    return field(default=_NOSPAN, compare=False)  # type: ignore[return-value]


@dataclass(frozen=True, slots=True)
class Variable:
    name: str
    span: Span = _span_field()


@dataclass(frozen=True, slots=True)
class Constant:
    name: str
    span: Span = _span_field()


@dataclass(frozen=True, slots=True)
class Integer:
    value: int
    span: Span = _span_field()


@dataclass(frozen=True, slots=True)
class Anonymous:
    span: Span = _span_field()


@dataclass(frozen=True, slots=True)
class Function:
    name: str
    args: tuple["Term", ...]
    span: Span = _span_field()


@dataclass(frozen=True, slots=True)
class BinOp:
    """Integer arithmetic inside comparison operands, left-associative."""

    op: str  # one of + - * /
    left: "Operand"
    right: "Operand"
    span: Span = _span_field()


Term = Variable | Constant | Integer | Anonymous | Function
Operand = Variable | Constant | Integer | BinOp


@dataclass(frozen=True, slots=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()
    span: Span = _span_field()

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True, slots=True)
class Positive:
    atom: Atom
    span: Span = _span_field()


@dataclass(frozen=True, slots=True)
class Negated:
    atom: Atom
    span: Span = _span_field()


COMPARISON_OPS = ("=", "!=", "<", "<=", ">", ">=")


@dataclass(frozen=True, slots=True)
class Comparison:
    left: Operand
    op: str
    right: Operand
    span: Span = _span_field()


BodyLiteral = Positive | Negated | Comparison


@dataclass(frozen=True, slots=True)
class Fact:
    head: Atom
    span: Span = _span_field()


@dataclass(frozen=True, slots=True)
class Rule:
    head: Atom
    body: tuple[BodyLiteral, ...]
    span: Span = _span_field()

    @property
    def is_integrity(self) -> bool:
        return self.head.predicate == CONSTRAINT_HEAD


@dataclass(frozen=True, slots=True)
class ConstDecl:
    name: str
    value: int
    span: Span = _span_field()


@dataclass(frozen=True, slots=True)
class Comment:
    text: str  # raw text including the leading '%'
    attached: bool = False
    span: Span = _span_field()

    @property
    def body_text(self) -> str:
        return self.text.lstrip("%").strip()


Statement = Fact | Rule | ConstDecl | Comment


@dataclass(frozen=True, slots=True)
class Diagnostic:
    severity: str  # "error" | "unsupported" | "lex"
    message: str
    span: Span
    construct: str | None = None

    def format(self) -> str:
        return f"{self.span.line}:{self.span.col}: {self.severity}: {self.message}"


@dataclass(frozen=True, slots=True)
class Program:
    statements: tuple[Statement, ...]
    source_name: str = field(default="<string>", compare=False)
    diagnostics: tuple[Diagnostic, ...] = field(default=(), compare=False)

    @property
    def error_diagnostics(self) -> tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity in ("error", "lex"))

    @property
    def unsupported_diagnostics(self) -> tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity == "unsupported")


def term_variables(term: Term | Operand) -> list[str]:
    """Named variables in *term*, in first-appearance order, with repeats."""
    out: list[str] = []
    _collect_vars(term, out)
    return out


def _collect_vars(term, out: list[str]) -> None:
    if isinstance(term, Variable):
        out.append(term.name)
    elif isinstance(term, Function):
        for a in term.args:
            _collect_vars(a, out)
    elif isinstance(term, BinOp):
        _collect_vars(term.left, out)
        _collect_vars(term.right, out)


def literal_variables(lit: BodyLiteral) -> list[str]:
    """Named variables of a body literal, in order, with repeats."""
    out: list[str] = []
    if isinstance(lit, (Positive, Negated)):
        for a in lit.atom.args:
            _collect_vars(a, out)
    else:
        _collect_vars(lit.left, out)
        _collect_vars(lit.right, out)
    return out


def body_variables(body: tuple[BodyLiteral, ...]) -> tuple[str, ...]:
    """Distinct named variables of a rule body, in first-appearance order."""
    seen: dict[str, None] = {}
    for lit in body:
        for name in literal_variables(lit):
            seen.setdefault(name, None)
    return tuple(seen)


def is_ground(term: Term) -> bool:
    if isinstance(term, (Variable, Anonymous)):
        return False
    if isinstance(term, Function):
        return all(is_ground(a) for a in term.args)
    return True
