# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled execution kernel for constraint-body plans.

Drop-in replacement for the pure-Python kernel: execute(plan, witness_cap)
returns the exact substitution count and capped witness tuples. Row scans,
negative checks, and comparisons run over flat integer arrays.
"""

from cpython cimport array

from .compile import COMPARE, ENUM, NEGCHECK, SCAN

NAME = "compiled"

cdef int TAG_INT = 0
cdef int TAG_SYM = 1
cdef int TAG_ERR = 2

cdef int C_SCAN = SCAN
cdef int C_NEGCHECK = NEGCHECK
cdef int C_COMPARE = COMPARE
cdef int C_ENUM = ENUM


cdef class _Executor:
    cdef long long[:] slots
    cdef list steps
    cdef long long[:] domain
    cdef signed char[:] is_int
    cdef long long[:] int_val
    cdef long long count
    cdef int witness_cap
    cdef list witnesses
    cdef int n_steps
    cdef int n_slots

    def __init__(self, plan, int witness_cap):
        self.n_slots = plan.n_slots
        self.slots = array.array("q", [0] * max(plan.n_slots, 1))
        self.steps = plan.steps
        self.domain = plan.domain_flat if len(plan.domain_flat) else array.array("q", [0])[:0]
        self.is_int = plan.is_int if len(plan.is_int) else array.array("b", [0])[:0]
        self.int_val = plan.int_val if len(plan.int_val) else array.array("q", [0])[:0]
        self.count = 0
        self.witness_cap = witness_cap
        self.witnesses = []
        self.n_steps = len(plan.steps)

    cdef void _leaf(self):
        self.count += 1
        if len(self.witnesses) < self.witness_cap:
            self.witnesses.append(
                tuple(self.slots[j] for j in range(self.n_slots))
            )

    cdef void run(self, int i):
        if i == self.n_steps:
            self._leaf()
            return
        step = self.steps[i]
        cdef int kind = step.kind
        if kind == C_SCAN:
            self._scan(step, i)
        elif kind == C_NEGCHECK:
            self._negcheck(step, i)
        elif kind == C_COMPARE:
            if self._compare(step.rpn_flat):
                self.run(i + 1)
        else:
            self._enum(step.slot, i)

    cdef void _enum(self, int slot, int i):
        cdef Py_ssize_t j
        for j in range(self.domain.shape[0]):
            self.slots[slot] = self.domain[j]
            self.run(i + 1)

    cdef void _scan(self, step, int i):
        cdef long long[:] rows = step.rows_flat
        cdef long long[:] pre = step.pre_arr
        cdef long long[:] post = step.post_arr
        cdef Py_ssize_t k = pre.shape[0]
        cdef Py_ssize_t n_post = post.shape[0] // 2
        cdef Py_ssize_t width = k + n_post
        if width == 0:
            # propositional atom: rows_flat empty but rows may hold ()
            if step.rows:
                self.run(i + 1)
            return
        cdef Py_ssize_t n_rows = rows.shape[0] // width
        if n_rows == 0:
            return

        # binary search for the first row whose k-prefix >= bound prefix
        cdef Py_ssize_t lo = 0, hi = n_rows, mid
        cdef Py_ssize_t col
        cdef int cmp_res
        if k > 0:
            while lo < hi:
                mid = (lo + hi) // 2
                cmp_res = 0
                for col in range(k):
                    if rows[mid * width + col] < self.slots[pre[col]]:
                        cmp_res = -1
                        break
                    if rows[mid * width + col] > self.slots[pre[col]]:
                        cmp_res = 1
                        break
                if cmp_res < 0:
                    lo = mid + 1
                else:
                    hi = mid
        cdef Py_ssize_t r = lo
        cdef bint ok
        cdef Py_ssize_t base
        cdef long long value
        cdef int op, slot
        while r < n_rows:
            base = r * width
            ok = True
            for col in range(k):
                if rows[base + col] != self.slots[pre[col]]:
                    return  # sorted rows: past the matching prefix block
            for col in range(n_post):
                op = <int> post[2 * col]
                slot = <int> post[2 * col + 1]
                value = rows[base + k + col]
                if op == 0:  # bind
                    self.slots[slot] = value
                elif self.slots[slot] != value:
                    ok = False
                    break
            if ok:
                self.run(i + 1)
            r += 1

    cdef void _negcheck(self, step, int i):
        if step.empty_fail:
            return
        cdef long long[:] rows = step.rows_flat
        cdef long long[:] pre = step.pre_arr
        cdef Py_ssize_t k = pre.shape[0]
        if k == 0:
            # no check columns and not empty_fail: relation empty, passes
            self.run(i + 1)
            return
        cdef Py_ssize_t n_rows = rows.shape[0] // k
        cdef Py_ssize_t lo = 0, hi = n_rows, mid
        cdef Py_ssize_t col
        cdef int cmp_res
        while lo < hi:
            mid = (lo + hi) // 2
            cmp_res = 0
            for col in range(k):
                if rows[mid * k + col] < self.slots[pre[col]]:
                    cmp_res = -1
                    break
                if rows[mid * k + col] > self.slots[pre[col]]:
                    cmp_res = 1
                    break
            if cmp_res < 0:
                lo = mid + 1
            elif cmp_res > 0:
                hi = mid
            else:
                return  # exact match found: negation fails
        self.run(i + 1)

    cdef bint _compare(self, rpn_obj):
        cdef long long[:] rpn = rpn_obj
        cdef Py_ssize_t n = rpn.shape[0] // 2
        cdef int tags[64]
        cdef long long vals[64]
        cdef int sp = 0
        cdef Py_ssize_t j
        cdef int op
        cdef long long arg, av, bv, q
        cdef int at, bt
        cdef bint result = False
        for j in range(n):
            op = <int> rpn[2 * j]
            arg = rpn[2 * j + 1]
            if op == 0:  # push slot
                if self.is_int[self.slots[arg]]:
                    tags[sp] = TAG_INT
                    vals[sp] = self.int_val[self.slots[arg]]
                else:
                    tags[sp] = TAG_SYM
                    vals[sp] = self.slots[arg]
                sp += 1
            elif op == 1:  # push int
                tags[sp] = TAG_INT
                vals[sp] = arg
                sp += 1
            elif op == 2:  # push sym
                tags[sp] = TAG_SYM
                vals[sp] = arg
                sp += 1
            elif op < 20:  # arithmetic
                sp -= 2
                at = tags[sp]
                av = vals[sp]
                bt = tags[sp + 1]
                bv = vals[sp + 1]
                if at != TAG_INT or bt != TAG_INT:
                    tags[sp] = TAG_ERR
                    vals[sp] = 0
                elif op == 10:
                    tags[sp] = TAG_INT
                    vals[sp] = av + bv
                elif op == 11:
                    tags[sp] = TAG_INT
                    vals[sp] = av - bv
                elif op == 12:
                    tags[sp] = TAG_INT
                    vals[sp] = av * bv
                else:
                    if bv == 0:
                        tags[sp] = TAG_ERR
                        vals[sp] = 0
                    else:
                        tags[sp] = TAG_INT
                        vals[sp] = av / bv  # cdivision truncates toward zero
                sp += 1
            else:  # comparison, final op
                sp -= 2
                at = tags[sp]
                av = vals[sp]
                bt = tags[sp + 1]
                bv = vals[sp + 1]
                if at == TAG_ERR or bt == TAG_ERR:
                    result = False
                elif op == 20:
                    result = at == bt and av == bv
                elif op == 21:
                    result = at != bt or av != bv
                elif at != TAG_INT or bt != TAG_INT:
                    result = False
                elif op == 22:
                    result = av < bv
                elif op == 23:
                    result = av <= bv
                elif op == 24:
                    result = av > bv
                else:
                    result = av >= bv
        return result


def execute(plan, int witness_cap=32):
    ex = _Executor(plan, witness_cap)
    ex.run(0)
    return ex.count, ex.witnesses
