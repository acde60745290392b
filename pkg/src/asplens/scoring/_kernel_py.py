"""Pure-Python execution kernel for compiled constraint bodies.

Same contract as the compiled kernel: execute(plan, witness_cap) returns
the exact substitution count and up to witness_cap witness tuples of
value ids in slot order.
"""

from __future__ import annotations

from .compile import (
    COMPARE,
    ENUM,
    NEGCHECK,
    OP_BIND,
    RPN_ADD,
    RPN_DIV,
    RPN_EQ,
    RPN_GE,
    RPN_GT,
    RPN_LE,
    RPN_LT,
    RPN_MUL,
    RPN_NE,
    RPN_PUSH_INT,
    RPN_PUSH_SLOT,
    RPN_PUSH_SYM,
    RPN_SUB,
    SCAN,
    CompiledBody,
)

NAME = "python"

_TAG_INT = 0
_TAG_SYM = 1
_TAG_ERR = 2


def execute(plan: CompiledBody, witness_cap: int = 32) -> tuple[int, list[tuple]]:
    slots = [0] * plan.n_slots
    steps = plan.steps
    n_steps = len(steps)
    is_int = plan.is_int
    int_val = plan.int_val
    domain = plan.domain
    count = 0
    witnesses: list[tuple] = []

    def run(i: int) -> None:
        nonlocal count
        if i == n_steps:
            count += 1
            if len(witnesses) < witness_cap:
                witnesses.append(tuple(slots))
            return
        step = steps[i]
        kind = step.kind
        if kind == SCAN:
            prefix = tuple(slots[s] for s in step.pre_slots)
            suffixes = step.suffixes_by_prefix.get(prefix)
            if not suffixes:
                return
            post_ops = step.post_ops
            for suffix in suffixes:
                ok = True
                for (op, slot), value in zip(post_ops, suffix):
                    if op == OP_BIND:
                        slots[slot] = value
                    elif slots[slot] != value:
                        ok = False
                        break
                if ok:
                    run(i + 1)
        elif kind == NEGCHECK:
            if step.empty_fail:
                return
            if tuple(slots[s] for s in step.pre_slots) in step.rows_set:
                return
            run(i + 1)
        elif kind == COMPARE:
            if _compare(step.rpn, slots, is_int, int_val):
                run(i + 1)
        else:  # ENUM
            slot = step.slot
            for vid in domain:
                slots[slot] = vid
                run(i + 1)

    run(0)
    return count, witnesses


def _compare(rpn, slots, is_int, int_val) -> bool:
    tags: list[int] = []
    vals: list[int] = []
    result = False
    for op, arg in rpn:
        if op == RPN_PUSH_SLOT:
            vid = slots[arg]
            if is_int[vid]:
                tags.append(_TAG_INT)
                vals.append(int_val[vid])
            else:
                tags.append(_TAG_SYM)
                vals.append(vid)
        elif op == RPN_PUSH_INT:
            tags.append(_TAG_INT)
            vals.append(arg)
        elif op == RPN_PUSH_SYM:
            tags.append(_TAG_SYM)
            vals.append(arg)
        elif op < 20:  # arithmetic
            bt, bv = tags.pop(), vals.pop()
            at, av = tags.pop(), vals.pop()
            if at != _TAG_INT or bt != _TAG_INT:
                tags.append(_TAG_ERR)
                vals.append(0)
            elif op == RPN_ADD:
                tags.append(_TAG_INT)
                vals.append(av + bv)
            elif op == RPN_SUB:
                tags.append(_TAG_INT)
                vals.append(av - bv)
            elif op == RPN_MUL:
                tags.append(_TAG_INT)
                vals.append(av * bv)
            else:  # RPN_DIV, truncation toward zero
                if bv == 0:
                    tags.append(_TAG_ERR)
                    vals.append(0)
                else:
                    q = abs(av) // abs(bv)
                    tags.append(_TAG_INT)
                    vals.append(-q if (av < 0) != (bv < 0) else q)
        else:  # comparison, final op
            bt, bv = tags.pop(), vals.pop()
            at, av = tags.pop(), vals.pop()
            if at == _TAG_ERR or bt == _TAG_ERR:
                result = False
            elif op == RPN_EQ:
                result = at == bt and av == bv
            elif op == RPN_NE:
                result = at != bt or av != bv
            elif at != _TAG_INT or bt != _TAG_INT:
                result = False
            elif op == RPN_LT:
                result = av < bv
            elif op == RPN_LE:
                result = av <= bv
            elif op == RPN_GT:
                result = av > bv
            else:
                result = av >= bv
    return result
