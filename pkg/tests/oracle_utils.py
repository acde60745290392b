"""Independent oracles shared by the test suite.

These deliberately avoid the package's own parsing and evaluation code so
that agreement between the two routes is meaningful.
"""

from itertools import product


def grep_count_constraints(source: str) -> tuple[int, int]:
    """Line-scan count of (soft, hard) rule heads at statement starts.

    Counts lines whose first non-space characters are ``soft(`` or
    ``hard(``. Valid against knowledge bases written one statement per
    line, which all bundled fixtures are.
    """
    soft = hard = 0
    for line in source.split("\n"):
        stripped = line.lstrip()
        if stripped.startswith("soft("):
            soft += 1
        elif stripped.startswith("hard("):
            hard += 1
    return soft, hard


def count_variable_occurrences(body_source: str) -> int:
    """Token-scan count of named variable occurrences in a body string.

    A variable token starts with an uppercase letter; ``_`` alone is the
    anonymous placeholder and does not count.
    """
    count = 0
    i = 0
    n = len(body_source)
    while i < n:
        ch = body_source[i]
        if ch == "%":
            while i < n and body_source[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (body_source[j].isalnum() or body_source[j] == "_"):
                j += 1
            word = body_source[i:j]
            if word != "not" and word[0].isupper():
                count += 1
            i = j
            continue
        i += 1
    return count


def brute_force_count(body, facts, domain):
    """Count substitutions satisfying a constraint body by exhaustive
    enumeration over domain^n. Independent of the package evaluator.

    body: list of literal dicts:
      {"kind": "pos"|"neg", "predicate": str, "args": [arg...]}
      {"kind": "cmp", "op": str, "left": operand, "right": operand}
    an arg is ("var", name) | ("const", value) | ("int", value) | ("any",)
    an operand is ("var", name) | ("const", value) | ("int", value)
      | ("binop", op, left, right)
    facts: set of tuples (predicate, arg-values...) where values are
      strings or ints
    domain: list of candidate values (strings and ints)
    """
    variables = []
    for lit in body:
        for arg in _literal_args(lit):
            _collect_vars(arg, variables)
    count = 0
    for values in product(domain, repeat=len(variables)):
        binding = dict(zip(variables, values))
        if all(_holds(lit, binding, facts) for lit in body):
            count += 1
    return count


def _literal_args(lit):
    if lit["kind"] in ("pos", "neg"):
        return lit["args"]
    return [lit["left"], lit["right"]]


def _collect_vars(arg, out):
    tag = arg[0]
    if tag == "var":
        if arg[1] not in out:
            out.append(arg[1])
    elif tag == "binop":
        _collect_vars(arg[2], out)
        _collect_vars(arg[3], out)


def _holds(lit, binding, facts):
    kind = lit["kind"]
    if kind in ("pos", "neg"):
        matched = _atom_matches(lit, binding, facts)
        return matched if kind == "pos" else not matched
    return _compare(lit, binding)


def _atom_matches(lit, binding, facts):
    for fact in facts:
        if fact[0] != lit["predicate"] or len(fact) - 1 != len(lit["args"]):
            continue
        ok = True
        for arg, value in zip(lit["args"], fact[1:]):
            tag = arg[0]
            if tag == "any":
                continue
            if tag == "var":
                if binding[arg[1]] != value:
                    ok = False
                    break
            elif arg[1] != value:
                ok = False
                break
        if ok:
            return True
    return False


def _compare(lit, binding):
    left = _eval_operand(lit["left"], binding)
    right = _eval_operand(lit["right"], binding)
    if left is None or right is None:
        return False
    op = lit["op"]
    if op == "=":
        return left == right
    if op == "!=":
        return left != right
    # ordering requires integers on both sides
    if not isinstance(left, int) or not isinstance(right, int):
        return False
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == ">":
        return left > right
    if op == ">=":
        return left >= right
    raise ValueError(op)


def _eval_operand(arg, binding):
    tag = arg[0]
    if tag == "var":
        return binding[arg[1]]
    if tag in ("const", "int"):
        return arg[1]
    if tag == "binop":
        left = _eval_operand(arg[2], binding)
        right = _eval_operand(arg[3], binding)
        if not isinstance(left, int) or not isinstance(right, int):
            return None
        op = arg[1]
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if op == "/":
            if right == 0:
                return None
            # truncation toward zero
            return int(left / right)
        raise ValueError(op)
    raise ValueError(tag)
