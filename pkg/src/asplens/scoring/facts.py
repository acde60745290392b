"""Ground fact sets: the candidate visualization specs to evaluate.

A fact file is one ground fact per statement. Anything else in the file
(rules, const declarations, non-ground facts) is skipped with a
diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..parser.parse import parse_program
from ..parser.printer import term_to_source
from ..parser.syntax import (
    Atom,
    Comment,
    Constant,
    Diagnostic,
    Fact,
    Function,
    Integer,
    Program,
    is_ground,
)


def _atom_sort_key(atom: Atom):
    return (atom.predicate, atom.arity, tuple(term_to_source(t) for t in atom.args))


@dataclass(frozen=True, slots=True)
class FactSet:
    name: str
    atoms: tuple[Atom, ...]
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def constant_domain(self) -> tuple[int | str, ...]:
        """Atomic constants and integers appearing anywhere in the atoms,
        integers first (numeric order), then constants (lexicographic)."""
        ints: set[int] = set()
        names: set[str] = set()

        def collect(term):
            if isinstance(term, Integer):
                ints.add(term.value)
            elif isinstance(term, Constant):
                names.add(term.name)
            elif isinstance(term, Function):
                for arg in term.args:
                    collect(arg)

        for atom in self.atoms:
            for arg in atom.args:
                collect(arg)
        return tuple(sorted(ints)) + tuple(sorted(names))


def facts_from_program(program: Program, name: str) -> FactSet:
    atoms: list[Atom] = []
    seen = set()
    diagnostics = list(program.diagnostics)
    for stmt in program.statements:
        if not isinstance(stmt, Fact):
            if isinstance(stmt, Comment):
                continue
            diagnostics.append(
                Diagnostic(
                    severity="warning",
                    message="non-fact statement ignored in fact file",
                    span=stmt.span,
                    construct="non-fact",
                )
            )
            continue
        atom = stmt.head
        if not all(is_ground(arg) for arg in atom.args):
            diagnostics.append(
                Diagnostic(
                    severity="error",
                    message=f"fact {atom.predicate}/{atom.arity} is not ground",
                    span=stmt.span,
                    construct="non-ground-fact",
                )
            )
            continue
        key = _atom_sort_key(atom)
        if key in seen:
            continue
        seen.add(key)
        atoms.append(atom)
    atoms.sort(key=_atom_sort_key)
    return FactSet(name=name, atoms=tuple(atoms), diagnostics=tuple(diagnostics))


def facts_from_source(text: str, name: str) -> FactSet:
    return facts_from_program(parse_program(text, source_name=name), name)
