"""Compile a constraint body into a flat substitution-counting plan.

Values are interned to integer ids. Each positive literal becomes a scan
over the matching relation, projected to its bound-check and binding
columns and deduplicated so wildcard and duplicate matches never inflate
the substitution count. Negated literals become existence checks, and
comparisons become small RPN programs over the bound slots. Variables no
scan can bind are enumerated over the active domain: the values occurring
in the facts plus the integers written in the body.

The plan is kernel-agnostic: the compiled kernel walks the flat arrays,
the pure-Python kernel walks the tuple lists.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field

from ..model import Constraint
from ..parser.syntax import (
    Anonymous,
    BinOp,
    Comparison,
    Constant,
    Function,
    Integer,
    Negated,
    Positive,
    Variable,
    body_variables,
)
from .facts import FactSet

# step kinds
SCAN = 0
NEGCHECK = 1
COMPARE = 2
ENUM = 3

# scan post ops
OP_BIND = 0
OP_CHECK = 1

# rpn opcodes
RPN_PUSH_SLOT = 0
RPN_PUSH_INT = 1
RPN_PUSH_SYM = 2
RPN_ADD = 10
RPN_SUB = 11
RPN_MUL = 12
RPN_DIV = 13
RPN_EQ = 20
RPN_NE = 21
RPN_LT = 22
RPN_LE = 23
RPN_GT = 24
RPN_GE = 25

_CMP_OPCODE = {
    "=": RPN_EQ,
    "!=": RPN_NE,
    "<": RPN_LT,
    "<=": RPN_LE,
    ">": RPN_GT,
    ">=": RPN_GE,
}

_ARITH_OPCODE = {"+": RPN_ADD, "-": RPN_SUB, "*": RPN_MUL, "/": RPN_DIV}

_INT64_MAX = 2**63 - 1
_INT64_MIN = -(2**63)


class UnsupportedBody(Exception):
    def __init__(self, constraint_id: str, reason: str):
        super().__init__(f"{constraint_id}: {reason}")
        self.constraint_id = constraint_id
        self.reason = reason


class EncodedFacts:
    """Interned view of a FactSet: value ids, relations, active domain."""

    def __init__(self, facts: FactSet):
        self.vid_of: dict[tuple, int] = {}
        self.values: list[int | str] = []
        self.is_int: list[int] = []
        self.int_val: list[int] = []
        self.relations: dict[tuple[str, int], list[tuple[int, ...]]] = {}

        rel_rows: dict[tuple[str, int], set[tuple[int, ...]]] = {}
        for atom in facts.atoms:
            row = tuple(self._intern_ground(arg) for arg in atom.args)
            rel_rows.setdefault((atom.predicate, atom.arity), set()).add(row)
        for key, rows in rel_rows.items():
            self.relations[key] = sorted(rows)

        domain_ints = sorted(
            self.int_val[v] for v in range(len(self.values)) if self.is_int[v]
        )
        domain_names = sorted(
            self.values[v]
            for v in range(len(self.values))
            if not self.is_int[v] and not self.values[v].startswith("(")
        )
        self.domain_vids: list[int] = [
            self.vid_of[("i", v)] for v in domain_ints
        ] + [self.vid_of[("c", v)] for v in domain_names]

    def _intern(self, key: tuple, value: int | str, is_int: bool) -> int:
        vid = self.vid_of.get(key)
        if vid is None:
            vid = len(self.values)
            self.vid_of[key] = vid
            self.values.append(value)
            self.is_int.append(1 if is_int else 0)
            self.int_val.append(value if is_int else 0)
        return vid

    def _intern_ground(self, term) -> int:
        if isinstance(term, Integer):
            return self._intern(("i", term.value), term.value, True)
        if isinstance(term, Constant):
            return self._intern(("c", term.name), term.name, False)
        if isinstance(term, Function):
            from ..parser.printer import term_to_source

            text = "(" + term_to_source(term) + ")"
            return self._intern(("t", text), text, False)
        raise ValueError(f"fact argument is not ground: {term!r}")


@dataclass
class ScanStep:
    kind: int
    relation: tuple[str, int]
    pre_slots: list[int]
    post_ops: list[tuple[int, int]]  # (OP_BIND | OP_CHECK, slot)
    rows: list[tuple[int, ...]]  # sorted, width = len(pre) + len(post)
    suffixes_by_prefix: dict[tuple, list[tuple]] = field(default_factory=dict)
    rows_flat: array = field(default_factory=lambda: array("q"))
    pre_arr: array = field(default_factory=lambda: array("q"))
    post_arr: array = field(default_factory=lambda: array("q"))


@dataclass
class NegStep:
    kind: int
    relation: tuple[str, int]
    pre_slots: list[int]
    rows: list[tuple[int, ...]]  # sorted distinct check tuples
    rows_set: frozenset = frozenset()
    rows_flat: array = field(default_factory=lambda: array("q"))
    pre_arr: array = field(default_factory=lambda: array("q"))
    empty_fail: bool = False  # zero check columns and relation non-empty


@dataclass
class CompareStep:
    kind: int
    rpn: list[tuple[int, int]]
    rpn_flat: array = field(default_factory=lambda: array("q"))


@dataclass
class EnumStep:
    kind: int
    slot: int


@dataclass
class CompiledBody:
    n_slots: int
    slot_names: tuple[str, ...]
    steps: list
    domain: list[int]  # vids
    domain_flat: array
    is_int: array  # per vid
    int_val: array
    values: list[int | str]


class _Interner:
    """Compile-local extension of the fact interner: body constants and
    integers get ids without mutating the shared EncodedFacts."""

    def __init__(self, enc: EncodedFacts):
        self.enc = enc
        self.extra_of: dict[tuple, int] = {}
        self.values = list(enc.values)
        self.is_int = list(enc.is_int)
        self.int_val = list(enc.int_val)

    def vid(self, key: tuple, value: int | str, is_int: bool) -> int:
        existing = self.enc.vid_of.get(key)
        if existing is not None:
            return existing
        existing = self.extra_of.get(key)
        if existing is not None:
            return existing
        vid = len(self.values)
        self.extra_of[key] = vid
        self.values.append(value)
        self.is_int.append(1 if is_int else 0)
        self.int_val.append(value if is_int else 0)
        return vid

    def int_vid(self, value: int) -> int:
        return self.vid(("i", value), value, True)

    def const_vid(self, name: str) -> int:
        return self.vid(("c", name), name, False)


def compile_body(constraint: Constraint, enc: EncodedFacts) -> CompiledBody:
    """Plan the substitution count for one constraint body against one
    encoded fact set. Raises UnsupportedBody on function terms."""
    names = body_variables(constraint.body)
    slot_of = {name: i for i, name in enumerate(names)}
    interner = _Interner(enc)

    body_ints: list[int] = []

    def note_ints(term):
        if isinstance(term, Integer):
            body_ints.append(term.value)
        elif isinstance(term, BinOp):
            note_ints(term.left)
            note_ints(term.right)

    positives: list[tuple[int, Positive]] = []
    negatives: list[tuple[int, Negated]] = []
    compares: list[tuple[int, Comparison]] = []
    for index, lit in enumerate(constraint.body):
        if isinstance(lit, Positive):
            positives.append((index, lit))
            for arg in lit.atom.args:
                _reject_functions(constraint.id, arg)
                note_ints(arg)
        elif isinstance(lit, Negated):
            negatives.append((index, lit))
            for arg in lit.atom.args:
                _reject_functions(constraint.id, arg)
                note_ints(arg)
        else:
            note_ints(lit.left)
            note_ints(lit.right)
            if _operand_size(lit.left) + _operand_size(lit.right) > 63:
                # the compiled kernel evaluates comparisons on a fixed stack
                raise UnsupportedBody(
                    constraint.id, "comparison expression too large"
                )
            compares.append((index, lit))

    domain = list(enc.domain_vids)
    present = set(domain)
    for value in sorted(set(body_ints)):
        vid = interner.int_vid(value)
        if vid not in present:
            domain.append(vid)
            present.add(vid)

    steps: list = []
    bound: set[int] = set()

    def lit_slots(lit) -> set[int]:
        if isinstance(lit, (Positive, Negated)):
            out = set()
            for arg in lit.atom.args:
                if isinstance(arg, Variable):
                    out.add(slot_of[arg.name])
            return out
        out = set()
        for side in (lit.left, lit.right):
            _operand_slots(side, slot_of, out)
        return out

    def flush_ground() -> None:
        # emit every wholly-bound negation and comparison, original order
        progress = True
        while progress:
            progress = False
            for bucket, builder in (
                (negatives, _build_neg),
                (compares, _build_compare),
            ):
                for item in list(bucket):
                    _, lit = item
                    if lit_slots(lit) <= bound:
                        steps.append(builder(lit, slot_of, interner, enc))
                        bucket.remove(item)
                        progress = True

    flush_ground()
    while positives or negatives or compares:
        if positives:
            best = max(
                positives,
                key=lambda item: (len(lit_slots(item[1]) & bound), -item[0]),
            )
            positives.remove(best)
            _, lit = best
            steps.append(_build_scan(lit, slot_of, bound, interner, enc))
            bound.update(lit_slots(lit))
        else:
            unbound = sorted(
                slot
                for _, lit in negatives + compares
                for slot in lit_slots(lit) - bound
            )
            slot = unbound[0]
            steps.append(EnumStep(kind=ENUM, slot=slot))
            bound.add(slot)
        flush_ground()

    if any(v > _INT64_MAX or v < _INT64_MIN for v in interner.int_val):
        raise UnsupportedBody(constraint.id, "integer outside 64-bit range")

    domain_flat = array("q", domain)
    for step in steps:
        if isinstance(step, ScanStep):
            flat = array("q")
            k = len(step.pre_slots)
            by_prefix: dict[tuple, list[tuple]] = {}
            for row in step.rows:
                flat.extend(row)
                by_prefix.setdefault(row[:k], []).append(row[k:])
            step.rows_flat = flat
            step.suffixes_by_prefix = by_prefix
            step.pre_arr = array("q", step.pre_slots)
            step.post_arr = array(
                "q", [part for pair in step.post_ops for part in pair]
            )
        elif isinstance(step, NegStep):
            flat = array("q")
            for row in step.rows:
                flat.extend(row)
            step.rows_flat = flat
            step.rows_set = frozenset(step.rows)
            step.pre_arr = array("q", step.pre_slots)
        elif isinstance(step, CompareStep):
            flat = array("q")
            for op, arg in step.rpn:
                flat.append(op)
                flat.append(arg)
            step.rpn_flat = flat

    return CompiledBody(
        n_slots=len(names),
        slot_names=names,
        steps=steps,
        domain=domain,
        domain_flat=domain_flat,
        is_int=array("b", interner.is_int),
        int_val=array("q", interner.int_val),
        values=interner.values,
    )


def _reject_functions(constraint_id: str, term) -> None:
    if isinstance(term, Function):
        raise UnsupportedBody(
            constraint_id, "function terms in rule bodies are not evaluated"
        )


def _operand_slots(operand, slot_of, out: set[int]) -> None:
    if isinstance(operand, Variable):
        out.add(slot_of[operand.name])
    elif isinstance(operand, BinOp):
        _operand_slots(operand.left, slot_of, out)
        _operand_slots(operand.right, slot_of, out)


def _operand_size(operand) -> int:
    """Number of value pushes the operand compiles to."""
    if isinstance(operand, BinOp):
        return _operand_size(operand.left) + _operand_size(operand.right)
    return 1


def _build_scan(
    lit: Positive,
    slot_of: dict[str, int],
    bound: set[int],
    interner: _Interner,
    enc: EncodedFacts,
) -> ScanStep:
    atom = lit.atom
    rel = enc.relations.get((atom.predicate, atom.arity), [])

    const_cols: list[tuple[int, int]] = []  # (column, vid)
    pre_cols: list[tuple[int, int]] = []  # (column, slot)
    post_cols: list[tuple[int, int, int]] = []  # (column, op, slot)
    bound_in_row: set[int] = set()
    for col, arg in enumerate(atom.args):
        if isinstance(arg, Anonymous):
            continue
        if isinstance(arg, Variable):
            slot = slot_of[arg.name]
            if slot in bound:
                pre_cols.append((col, slot))
            elif slot in bound_in_row:
                post_cols.append((col, OP_CHECK, slot))
            else:
                post_cols.append((col, OP_BIND, slot))
                bound_in_row.add(slot)
        elif isinstance(arg, Integer):
            const_cols.append((col, interner.int_vid(arg.value)))
        elif isinstance(arg, Constant):
            const_cols.append((col, interner.const_vid(arg.name)))
        else:
            raise AssertionError(f"unexpected term {arg!r}")

    kept = [col for col, _ in pre_cols] + [col for col, _, _ in post_cols]
    rows = set()
    for fact_row in rel:
        if all(fact_row[col] == vid for col, vid in const_cols):
            rows.add(tuple(fact_row[col] for col in kept))
    return ScanStep(
        kind=SCAN,
        relation=(atom.predicate, atom.arity),
        pre_slots=[slot for _, slot in pre_cols],
        post_ops=[(op, slot) for _, op, slot in post_cols],
        rows=sorted(rows),
    )


def _build_neg(
    lit: Negated,
    slot_of: dict[str, int],
    interner: _Interner,
    enc: EncodedFacts,
) -> NegStep:
    atom = lit.atom
    rel = enc.relations.get((atom.predicate, atom.arity), [])

    const_cols: list[tuple[int, int]] = []
    pre_cols: list[tuple[int, int]] = []
    for col, arg in enumerate(atom.args):
        if isinstance(arg, Anonymous):
            continue
        if isinstance(arg, Variable):
            pre_cols.append((col, slot_of[arg.name]))
        elif isinstance(arg, Integer):
            const_cols.append((col, interner.int_vid(arg.value)))
        elif isinstance(arg, Constant):
            const_cols.append((col, interner.const_vid(arg.name)))
        else:
            raise AssertionError(f"unexpected term {arg!r}")

    kept = [col for col, _ in pre_cols]
    rows = set()
    for fact_row in rel:
        if all(fact_row[col] == vid for col, vid in const_cols):
            rows.add(tuple(fact_row[col] for col in kept))
    return NegStep(
        kind=NEGCHECK,
        relation=(atom.predicate, atom.arity),
        pre_slots=[slot for _, slot in pre_cols],
        rows=sorted(rows),
        empty_fail=not pre_cols and bool(rows),
    )


def _build_compare(
    lit: Comparison,
    slot_of: dict[str, int],
    interner: _Interner,
    enc: EncodedFacts,
) -> CompareStep:
    rpn: list[tuple[int, int]] = []

    def emit(operand) -> None:
        if isinstance(operand, Variable):
            rpn.append((RPN_PUSH_SLOT, slot_of[operand.name]))
        elif isinstance(operand, Integer):
            rpn.append((RPN_PUSH_INT, operand.value))
        elif isinstance(operand, Constant):
            rpn.append((RPN_PUSH_SYM, interner.const_vid(operand.name)))
        elif isinstance(operand, BinOp):
            emit(operand.left)
            emit(operand.right)
            rpn.append((_ARITH_OPCODE[operand.op], 0))
        else:
            raise AssertionError(f"unexpected operand {operand!r}")

    emit(lit.left)
    emit(lit.right)
    rpn.append((_CMP_OPCODE[lit.op], 0))
    return CompareStep(kind=COMPARE, rpn=rpn)
