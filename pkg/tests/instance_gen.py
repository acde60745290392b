"""Random constraint/fact-set instance generator for oracle comparison.

Builds each instance as plain data (the oracle's literal dicts and fact
tuples), then renders ASP source from that data. The package under test
parses the rendered source; the oracle consumes the data directly, so
the two routes share no evaluation code.

Instances stay inside the envelope the exhaustive oracle can afford:
at most 4 body variables, 50 fact atoms, 20 constants, and a bounded
domain**variables * literals * facts work product.
"""

import random

VAR_POOL = ("X", "Y", "Z", "W")
MAX_WORK = 150_000


def render_arg(arg) -> str:
    tag = arg[0]
    if tag == "var":
        return arg[1]
    if tag == "any":
        return "_"
    return str(arg[1])  # const name or integer


def render_operand(arg) -> str:
    if arg[0] == "binop":
        return f"({render_operand(arg[2])} {arg[1]} {render_operand(arg[3])})"
    return render_arg(arg)


def render_literal(lit) -> str:
    if lit["kind"] == "cmp":
        return f"{render_operand(lit['left'])} {lit['op']} {render_operand(lit['right'])}"
    args = ", ".join(render_arg(a) for a in lit["args"])
    atom = f"{lit['predicate']}({args})" if args else lit["predicate"]
    return f"not {atom}" if lit["kind"] == "neg" else atom


def render_rule(body) -> str:
    return "soft(gen) :- " + ", ".join(render_literal(lit) for lit in body) + ".\n"


def render_facts(facts) -> str:
    lines = []
    for fact in sorted(facts, key=lambda f: tuple(str(x) for x in f)):
        if len(fact) == 1:
            lines.append(f"{fact[0]}.")
        else:
            lines.append(f"{fact[0]}({', '.join(str(v) for v in fact[1:])}).")
    return "\n".join(lines) + "\n"


def collect_body_ints(body) -> set:
    out = set()

    def walk(arg):
        if arg[0] == "int":
            out.add(arg[1])
        elif arg[0] == "binop":
            walk(arg[2])
            walk(arg[3])

    for lit in body:
        if lit["kind"] == "cmp":
            walk(lit["left"])
            walk(lit["right"])
        else:
            for arg in lit["args"]:
                walk(arg)
    return out


def oracle_domain(facts, body) -> list:
    values = set()
    for fact in facts:
        values.update(fact[1:])
    values.update(collect_body_ints(body))
    ints = sorted(v for v in values if isinstance(v, int))
    names = sorted(v for v in values if isinstance(v, str))
    return ints + names


def count_vars(body) -> int:
    seen = set()

    def walk(arg):
        if arg[0] == "var":
            seen.add(arg[1])
        elif arg[0] == "binop":
            walk(arg[2])
            walk(arg[3])

    for lit in body:
        if lit["kind"] == "cmp":
            walk(lit["left"])
            walk(lit["right"])
        else:
            for arg in lit["args"]:
                walk(arg)
    return len(seen)


def random_instance(rng: random.Random):
    """One random (body, facts) pair within the oracle's budget.

    Returns (body, facts, domain, rule_source, facts_source).
    """
    while True:
        n_vars = rng.randint(1, 4)
        variables = VAR_POOL[:n_vars]
        n_consts = rng.randint(1, {1: 20, 2: 20, 3: 8, 4: 5}[n_vars])
        constants = [f"c{i}" for i in range(n_consts)]
        int_pool = list(range(-3, 13))
        predicates = [
            (f"p{i}", rng.randint(0, 3)) for i in range(rng.randint(1, 3))
        ]

        def random_value():
            if rng.random() < 0.3:
                return rng.choice(int_pool)
            return rng.choice(constants)

        facts = set()
        for _ in range(rng.randint(0, 50)):
            pred, arity = rng.choice(predicates)
            facts.add((pred,) + tuple(random_value() for _ in range(arity)))
            if len(facts) >= 50:
                break

        def random_atom_arg():
            roll = rng.random()
            if roll < 0.45:
                return ("var", rng.choice(variables))
            if roll < 0.60:
                return ("const", rng.choice(constants))
            if roll < 0.75:
                return ("int", rng.choice(int_pool))
            return ("any",)

        def random_operand(depth=0):
            roll = rng.random()
            if depth < 2 and roll < 0.25:
                return (
                    "binop",
                    rng.choice("+-*/"),
                    random_operand(depth + 1),
                    random_operand(depth + 1),
                )
            if roll < 0.6:
                return ("var", rng.choice(variables))
            if roll < 0.85:
                return ("int", rng.choice(int_pool))
            return ("const", rng.choice(constants))

        body = []
        for _ in range(rng.randint(1, 4)):
            roll = rng.random()
            if roll < 0.55:
                pred, arity = rng.choice(predicates)
                body.append(
                    {
                        "kind": "pos",
                        "predicate": pred,
                        "args": [random_atom_arg() for _ in range(arity)],
                    }
                )
            elif roll < 0.8:
                pred, arity = rng.choice(predicates)
                body.append(
                    {
                        "kind": "neg",
                        "predicate": pred,
                        "args": [random_atom_arg() for _ in range(arity)],
                    }
                )
            else:
                body.append(
                    {
                        "kind": "cmp",
                        "op": rng.choice(["=", "!=", "<", "<=", ">", ">="]),
                        "left": random_operand(),
                        "right": random_operand(),
                    }
                )

        domain = oracle_domain(facts, body)
        n_used = count_vars(body)
        work = (
            max(len(domain), 1) ** n_used
            * len(body)
            * max(len(facts), 1)
        )
        if work <= MAX_WORK:
            return body, facts, domain, render_rule(body), render_facts(facts)
