"""Parser tests: AST shape, comment attachment, diagnostics, round trips."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asplens.parser import (
    Anonymous,
    Atom,
    Comment,
    Comparison,
    ConstDecl,
    Constant,
    Fact,
    Integer,
    Negated,
    Positive,
    Program,
    Rule,
    Variable,
    ast_from_json,
    ast_to_json,
    parse_program,
    program_to_source,
    statement_to_source,
)
from asplens.parser.syntax import CONSTRAINT_HEAD, BinOp, Function, body_variables


def only_statement(source):
    program = parse_program(source)
    assert not program.diagnostics, [d.format() for d in program.diagnostics]
    assert len(program.statements) == 1
    return program.statements[0]


def test_fact():
    stmt = only_statement("fieldtype(horsepower,number).")
    assert stmt == Fact(
        head=Atom("fieldtype", (Constant("horsepower"), Constant("number")))
    )


def test_rule_shape():
    # head soft(bin_high,E), body bin(E,B) and B > 12
    stmt = only_statement("soft(bin_high,E) :- bin(E,B), B > 12.")
    assert stmt == Rule(
        head=Atom("soft", (Constant("bin_high"), Variable("E"))),
        body=(
            Positive(Atom("bin", (Variable("E"), Variable("B")))),
            Comparison(Variable("B"), ">", Integer(12)),
        ),
    )


def test_const_decl():
    stmt = only_statement("#const bin_high_weight = 2.")
    assert stmt == ConstDecl(name="bin_high_weight", value=2)


def test_negative_const_decl():
    stmt = only_statement("#const offset = -3.")
    assert stmt == ConstDecl(name="offset", value=-3)


def test_integrity_constraint_uses_reserved_head():
    stmt = only_statement(":- mark(text), not channel(_,text).")
    assert isinstance(stmt, Rule)
    assert stmt.head.predicate == CONSTRAINT_HEAD
    assert stmt.is_integrity
    assert stmt.body == (
        Positive(Atom("mark", (Constant("text"),))),
        Negated(Atom("channel", (Anonymous(), Constant("text")))),
    )


def test_negation():
    stmt = only_statement("soft(no_zero,E) :- channel(E,x), not zero(E).")
    assert stmt.body[1] == Negated(Atom("zero", (Variable("E"),)))


def test_function_term():
    stmt = only_statement("cell(coord(1,2)).")
    assert stmt.head.args[0] == Function("coord", (Integer(1), Integer(2)))


def test_arithmetic_in_comparison():
    stmt = only_statement("soft(x,E) :- bin(E,B), B * 2 > 10 + 4.")
    cmp = stmt.body[1]
    assert cmp == Comparison(
        BinOp("*", Variable("B"), Integer(2)),
        ">",
        BinOp("+", Integer(10), Integer(4)),
    )


def test_statement_order_matches_source():
    program = parse_program("a.\nb.\nc.")
    assert [s.head.predicate for s in program.statements] == ["a", "b", "c"]


def test_comment_attachment():
    source = (
        "% prefer fewer bins\n"
        "soft(bins,E) :- bin(E,B).\n"
        "\n"
        "% free standing\n"
        "\n"
        "fact(a).\n"
    )
    program = parse_program(source)
    comments = [s for s in program.statements if isinstance(s, Comment)]
    assert comments[0].attached is True
    assert comments[1].attached is False


def test_multiline_comment_block_attaches_as_unit():
    source = "% line one\n% line two\nsoft(x,E) :- p(E).\n"
    program = parse_program(source)
    comments = [s for s in program.statements if isinstance(s, Comment)]
    assert [c.attached for c in comments] == [True, True]


def test_comment_before_fact_is_free():
    # attachment is to rules only
    program = parse_program("% about a fact\nfact(a).\n")
    comment = program.statements[0]
    assert comment.attached is False


def test_span_fidelity():
    source = "a(1).\n\nsoft(x,E) :- p(E), E > 2.\n#const w = 1.\n"
    program = parse_program(source)
    for stmt in program.statements:
        text = source[stmt.span.start : stmt.span.end]
        reparsed = parse_program(text)
        assert len(reparsed.statements) == 1
        assert reparsed.statements[0] == stmt


def test_error_isolation_keeps_supported_statements():
    source = (
        "good(a).\n"
        "soft(x,E) :- #count { p(X) } > 2.\n"
        "also_good(b).\n"
        "{ choice(a) }.\n"
        "hard(y) :- q(Y).\n"
    )
    program = parse_program(source)
    assert len(program.statements) == 3
    assert len(program.diagnostics) == 2
    assert all(d.severity == "unsupported" for d in program.diagnostics)


def test_parse_error_becomes_diagnostic():
    program = parse_program("p(a.\nq(b).")
    assert len(program.statements) == 1
    assert program.statements[0].head.predicate == "q"
    assert program.error_diagnostics


def test_strict_mode_raises():
    from asplens.parser.parse import ParseError

    with pytest.raises(ParseError):
        parse_program("p(a.", strict=True)


def test_weak_constraint_unsupported():
    program = parse_program(":~ p(X). [1@0,X]")
    assert not program.statements
    assert program.unsupported_diagnostics


def test_interval_unsupported():
    program = parse_program("p(1..5).")
    assert not program.statements
    assert program.unsupported_diagnostics


def test_disjunction_unsupported():
    program = parse_program("a(X) ; b(X) :- c(X).")
    assert not program.statements
    assert program.unsupported_diagnostics


def test_body_variables_first_appearance_order():
    stmt = only_statement("soft(x,E) :- bin(E,B), mark(M), B > 2, p(_).")
    assert body_variables(stmt.body) == ("E", "B", "M")


def test_empty_program_json():
    doc = ast_to_json(Program(statements=(), source_name="<name>"))
    obj = json.loads(doc)
    assert obj["source"] == "<name>"
    assert obj["statements"] == []


def test_json_is_deterministic():
    program = parse_program("a(1).\nsoft(x,E) :- p(E).", source_name="kb.lp")
    assert ast_to_json(program) == ast_to_json(parse_program(
        "a(1).\nsoft(x,E) :- p(E).", source_name="kb.lp"
    ))


def test_json_fact_kind():
    program = parse_program("fieldtype(horsepower,number).")
    obj = json.loads(ast_to_json(program))
    assert len(obj["statements"]) == 1
    assert obj["statements"][0]["kind"] == "fact"
    assert obj["statements"][0]["span"]["start"] == 0


def test_json_round_trip():
    source = (
        "% doc\n"
        "soft(bin_high,E) :- bin(E,B), B > 12.\n"
        "hard(h1) :- mark(text), not channel(_,text).\n"
        "#const bin_high_weight = 2.\n"
        "fieldtype(horsepower,number).\n"
    )
    program = parse_program(source)
    assert ast_from_json(ast_to_json(program)) == program


def test_print_parse_round_trip():
    source = (
        "% attached doc\n"
        "soft(bin_high,E) :- bin(E,B), B > 12.\n"
        "\n"
        "hard(h1) :- mark(text), not channel(_,text).\n"
        "\n"
        ":- q(X), X != 3.\n"
        "\n"
        "#const bin_high_weight = 2.\n"
    )
    program = parse_program(source)
    printed = program_to_source(program)
    assert parse_program(printed) == program


def test_printer_canonical_layout():
    program = parse_program("% doc\nsoft(x,E):-p(E).\nq(a).")
    assert program_to_source(program) == "% doc\nsoft(x,E) :- p(E).\n\nq(a).\n"


def test_printer_parenthesizes_arithmetic():
    stmt = only_statement("soft(x,E) :- p(E), (E + 1) * 2 > 6.")
    text = statement_to_source(stmt)
    assert "(E + 1) * 2 > 6" in text
    assert only_statement(text) == stmt


identifier_st = st.from_regex(r"[a-z][a-z0-9_]{0,8}", fullmatch=True)
variable_st = st.from_regex(r"[A-Z][A-Za-z0-9_]{0,4}", fullmatch=True)


@st.composite
def term_st(draw):
    choice = draw(st.integers(0, 3))
    if choice == 0:
        return Variable(draw(variable_st))
    if choice == 1:
        return Constant(draw(identifier_st))
    if choice == 2:
        return Integer(draw(st.integers(-1000, 1000)))
    return Anonymous()


@st.composite
def atom_st(draw):
    args = tuple(draw(st.lists(term_st(), min_size=0, max_size=3)))
    return Atom(draw(identifier_st), args)


@st.composite
def statement_st(draw):
    kind = draw(st.integers(0, 3))
    if kind == 0:
        head = draw(atom_st())
        ground = all(
            isinstance(a, (Constant, Integer)) for a in head.args
        )
        if not ground:
            head = Atom(head.predicate, (Constant("a"),))
        return Fact(head=head)
    if kind == 1:
        body = [Positive(draw(atom_st()))]
        if draw(st.booleans()):
            body.append(Negated(draw(atom_st())))
        if draw(st.booleans()):
            body.append(
                Comparison(Variable("X"), draw(st.sampled_from(
                    ("=", "!=", "<", "<=", ">", ">="))), Integer(draw(
                        st.integers(0, 99))))
            )
        return Rule(head=draw(atom_st()), body=tuple(body))
    if kind == 2:
        return ConstDecl(draw(identifier_st), draw(st.integers(-50, 50)))
    return Comment("% " + draw(st.from_regex(r"[a-z ]{0,20}", fullmatch=True)))


@given(st.lists(statement_st(), min_size=0, max_size=6))
@settings(max_examples=150, deadline=None)
def test_round_trip_property(statements):
    program = Program(statements=tuple(statements))
    printed = program_to_source(program)
    reparsed = parse_program(printed)
    assert not reparsed.error_diagnostics, printed
    # free-standing comments stay free; comments above rules attach
    normalized = tuple(
        Comment(s.text, attached=False) if isinstance(s, Comment) else s
        for s in reparsed.statements
    )
    expected = tuple(
        Comment(s.text, attached=False) if isinstance(s, Comment) else s
        for s in statements
    )
    assert normalized == expected


@given(st.text(max_size=200))
@settings(max_examples=300, deadline=None)
def test_parser_never_crashes(text):
    program = parse_program(text)
    assert isinstance(program, Program)
