"""Canonical pretty-printer. parse(print(P)) is structurally equal to P."""

from __future__ import annotations

from . import syntax as S

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def term_to_source(term: S.Term) -> str:
    if isinstance(term, S.Variable):
        return term.name
    if isinstance(term, S.Constant):
        return term.name
    if isinstance(term, S.Integer):
        return str(term.value)
    if isinstance(term, S.Anonymous):
        return "_"
    if isinstance(term, S.Function):
        args = ",".join(term_to_source(a) for a in term.args)
        return f"{term.name}({args})"
    raise TypeError(f"not a term: {term!r}")


def operand_to_source(op: S.Operand) -> str:
    if isinstance(op, S.BinOp):
        prec = _PRECEDENCE[op.op]
        left = operand_to_source(op.left)
        if isinstance(op.left, S.BinOp) and _PRECEDENCE[op.left.op] < prec:
            left = f"({left})"
        right = operand_to_source(op.right)
        if isinstance(op.right, S.BinOp) and _PRECEDENCE[op.right.op] <= prec:
            right = f"({right})"
        return f"{left} {op.op} {right}"
    return term_to_source(op)


def atom_to_source(atom: S.Atom) -> str:
    if not atom.args:
        return atom.predicate
    return f"{atom.predicate}({','.join(term_to_source(a) for a in atom.args)})"


def literal_to_source(lit: S.BodyLiteral) -> str:
    if isinstance(lit, S.Positive):
        return atom_to_source(lit.atom)
    if isinstance(lit, S.Negated):
        return f"not {atom_to_source(lit.atom)}"
    return f"{operand_to_source(lit.left)} {lit.op} {operand_to_source(lit.right)}"


def statement_to_source(stmt: S.Statement) -> str:
    if isinstance(stmt, S.Fact):
        return f"{atom_to_source(stmt.head)}."
    if isinstance(stmt, S.Rule):
        body = ", ".join(literal_to_source(lit) for lit in stmt.body)
        if stmt.is_integrity:
            return f":- {body}."
        return f"{atom_to_source(stmt.head)} :- {body}."
    if isinstance(stmt, S.ConstDecl):
        return f"#const {stmt.name} = {stmt.value}."
    if isinstance(stmt, S.Comment):
        return stmt.text
    raise TypeError(f"not a statement: {stmt!r}")


def program_to_source(program: S.Program) -> str:
    """Canonical source text; attached comments sit flush above their rule."""
    parts: list[str] = []
    for i, stmt in enumerate(program.statements):
        parts.append(statement_to_source(stmt))
        if i + 1 < len(program.statements):
            attached = isinstance(stmt, S.Comment) and stmt.attached
            parts.append("\n" if attached else "\n\n")
    parts.append("\n")
    return "".join(parts)
