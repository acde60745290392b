"""JSON serialization of the syntax tree.

Schema (documented in the README): top-level object with
``schema_version``, ``source``, ``statements``, ``diagnostics``. Every
node carries its span as ``{start,end,line,col}``. Output is canonical:
byte-identical across runs for identical input.
"""

from __future__ import annotations

import json
from typing import Any

from . import syntax as S
from .tokens import Span

AST_SCHEMA_VERSION = "asplens.ast/1"


def span_to_obj(span: Span) -> dict[str, int]:
    return {"start": span.start, "end": span.end, "line": span.line, "col": span.col}


def span_from_obj(obj: dict[str, int]) -> Span:
    return Span(obj["start"], obj["end"], obj["line"], obj["col"])


def term_to_obj(term: S.Term | S.Operand) -> dict[str, Any]:
    span = span_to_obj(term.span)
    if isinstance(term, S.Variable):
        return {"kind": "variable", "name": term.name, "span": span}
    if isinstance(term, S.Constant):
        return {"kind": "constant", "name": term.name, "span": span}
    if isinstance(term, S.Integer):
        return {"kind": "integer", "value": term.value, "span": span}
    if isinstance(term, S.Anonymous):
        return {"kind": "anonymous", "span": span}
    if isinstance(term, S.Function):
        return {
            "kind": "function",
            "name": term.name,
            "args": [term_to_obj(a) for a in term.args],
            "span": span,
        }
    if isinstance(term, S.BinOp):
        return {
            "kind": "binop",
            "op": term.op,
            "left": term_to_obj(term.left),
            "right": term_to_obj(term.right),
            "span": span,
        }
    raise TypeError(f"not a term: {term!r}")


def term_from_obj(obj: dict[str, Any]):
    span = span_from_obj(obj["span"])
    kind = obj["kind"]
    if kind == "variable":
        return S.Variable(obj["name"], span)
    if kind == "constant":
        return S.Constant(obj["name"], span)
    if kind == "integer":
        return S.Integer(obj["value"], span)
    if kind == "anonymous":
        return S.Anonymous(span)
    if kind == "function":
        return S.Function(obj["name"], tuple(term_from_obj(a) for a in obj["args"]), span)
    if kind == "binop":
        return S.BinOp(obj["op"], term_from_obj(obj["left"]), term_from_obj(obj["right"]), span)
    raise ValueError(f"unknown term kind: {kind}")


def atom_to_obj(atom: S.Atom) -> dict[str, Any]:
    return {
        "predicate": atom.predicate,
        "args": [term_to_obj(a) for a in atom.args],
        "span": span_to_obj(atom.span),
    }


def atom_from_obj(obj: dict[str, Any]) -> S.Atom:
    return S.Atom(
        obj["predicate"],
        tuple(term_from_obj(a) for a in obj["args"]),
        span_from_obj(obj["span"]),
    )


def literal_to_obj(lit: S.BodyLiteral) -> dict[str, Any]:
    span = span_to_obj(lit.span)
    if isinstance(lit, S.Positive):
        return {"kind": "positive", "atom": atom_to_obj(lit.atom), "span": span}
    if isinstance(lit, S.Negated):
        return {"kind": "negated", "atom": atom_to_obj(lit.atom), "span": span}
    return {
        "kind": "comparison",
        "op": lit.op,
        "left": term_to_obj(lit.left),
        "right": term_to_obj(lit.right),
        "span": span,
    }


def literal_from_obj(obj: dict[str, Any]) -> S.BodyLiteral:
    span = span_from_obj(obj["span"])
    kind = obj["kind"]
    if kind == "positive":
        return S.Positive(atom_from_obj(obj["atom"]), span)
    if kind == "negated":
        return S.Negated(atom_from_obj(obj["atom"]), span)
    if kind == "comparison":
        return S.Comparison(
            term_from_obj(obj["left"]), obj["op"], term_from_obj(obj["right"]), span
        )
    raise ValueError(f"unknown literal kind: {kind}")


def statement_to_obj(stmt: S.Statement) -> dict[str, Any]:
    span = span_to_obj(stmt.span)
    if isinstance(stmt, S.Fact):
        return {"kind": "fact", "span": span, "head": atom_to_obj(stmt.head)}
    if isinstance(stmt, S.Rule):
        return {
            "kind": "rule",
            "span": span,
            "head": atom_to_obj(stmt.head),
            "body": [literal_to_obj(lit) for lit in stmt.body],
        }
    if isinstance(stmt, S.ConstDecl):
        return {"kind": "const", "span": span, "name": stmt.name, "value": stmt.value}
    if isinstance(stmt, S.Comment):
        return {"kind": "comment", "span": span, "text": stmt.text, "attached": stmt.attached}
    raise TypeError(f"not a statement: {stmt!r}")


def statement_from_obj(obj: dict[str, Any]) -> S.Statement:
    span = span_from_obj(obj["span"])
    kind = obj["kind"]
    if kind == "fact":
        return S.Fact(atom_from_obj(obj["head"]), span)
    if kind == "rule":
        return S.Rule(
            atom_from_obj(obj["head"]),
            tuple(literal_from_obj(lit) for lit in obj["body"]),
            span,
        )
    if kind == "const":
        return S.ConstDecl(obj["name"], obj["value"], span)
    if kind == "comment":
        return S.Comment(obj["text"], obj["attached"], span)
    raise ValueError(f"unknown statement kind: {kind}")


def diagnostic_to_obj(diag: S.Diagnostic) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "severity": diag.severity,
        "message": diag.message,
        "span": span_to_obj(diag.span),
    }
    if diag.construct is not None:
        obj["construct"] = diag.construct
    return obj


def diagnostic_from_obj(obj: dict[str, Any]) -> S.Diagnostic:
    return S.Diagnostic(
        obj["severity"], obj["message"], span_from_obj(obj["span"]), obj.get("construct")
    )


def program_to_obj(program: S.Program) -> dict[str, Any]:
    return {
        "schema_version": AST_SCHEMA_VERSION,
        "source": program.source_name,
        "statements": [statement_to_obj(s) for s in program.statements],
        "diagnostics": [diagnostic_to_obj(d) for d in program.diagnostics],
    }


def program_from_obj(obj: dict[str, Any]) -> S.Program:
    return S.Program(
        statements=tuple(statement_from_obj(s) for s in obj["statements"]),
        source_name=obj.get("source", "<json>"),
        diagnostics=tuple(diagnostic_from_obj(d) for d in obj.get("diagnostics", [])),
    )


def dumps_canonical(obj: Any) -> str:
    """Compact, deterministic JSON with a trailing newline."""
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n"


def ast_to_json(program: S.Program) -> str:
    return dumps_canonical(program_to_obj(program))


def ast_from_json(text: str) -> S.Program:
    return program_from_obj(json.loads(text))
