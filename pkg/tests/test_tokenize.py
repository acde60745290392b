"""Tokenizer tests.

Expected token sequences in this file were derived by hand against the
token grammar before the tokenizer was written.
"""

import pytest

from asplens.parser import LexError, Token, scan_lenient, tokenize
from asplens.parser.tokens import (
    ARITH,
    CMP,
    COMMENT,
    DIRECTIVE,
    IDENTIFIER,
    INTEGER,
    PUNCT,
    VARIABLE,
)


def kinds_and_texts(tokens):
    return [(t.kind, t.text) for t in tokens]


def test_empty_input():
    assert tokenize("") == []


def test_rule_tokenization():
    # hand-tokenized: 18 tokens
    tokens = tokenize("soft(bin_high,E) :- bin(E,B), B > 12.")
    assert kinds_and_texts(tokens) == [
        (IDENTIFIER, "soft"),
        (PUNCT, "("),
        (IDENTIFIER, "bin_high"),
        (PUNCT, ","),
        (VARIABLE, "E"),
        (PUNCT, ")"),
        (PUNCT, ":-"),
        (IDENTIFIER, "bin"),
        (PUNCT, "("),
        (VARIABLE, "E"),
        (PUNCT, ","),
        (VARIABLE, "B"),
        (PUNCT, ")"),
        (PUNCT, ","),
        (VARIABLE, "B"),
        (CMP, ">"),
        (INTEGER, "12"),
        (PUNCT, "."),
    ]
    assert len(tokens) == 18


def test_comment_then_fact():
    tokens = tokenize("% comment\nx.")
    assert kinds_and_texts(tokens) == [
        (COMMENT, "% comment"),
        (IDENTIFIER, "x"),
        (PUNCT, "."),
    ]


def test_spans_are_byte_offsets():
    source = "soft(a).\nhard(b)."
    tokens = tokenize(source)
    for tok in tokens:
        assert source[tok.span.start : tok.span.end] == tok.text
    # second statement starts on line 2, column 1
    hard = [t for t in tokens if t.text == "hard"][0]
    assert (hard.span.line, hard.span.col) == (2, 1)


def test_round_trip_preserves_source():
    source = "% doc\nsoft(bin_high,E) :- bin(E,B), B > 12.\n\n#const w = 3.\n"
    tokens = tokenize(source)
    rebuilt = []
    pos = 0
    for tok in tokens:
        rebuilt.append(source[pos : tok.span.start])
        rebuilt.append(tok.text)
        pos = tok.span.end
    rebuilt.append(source[pos:])
    assert "".join(rebuilt) == source


def test_multi_char_operators():
    tokens = tokenize("a != b, c <= d, e >= f, g = h.")
    ops = [t.text for t in tokens if t.kind == CMP]
    assert ops == ["!=", "<=", ">=", "="]


def test_arrow_not_split():
    tokens = tokenize(":- a.")
    assert tokens[0] == Token(PUNCT, ":-", tokens[0].span)


def test_directive_token():
    tokens = tokenize("#const bin_high_weight = 2.")
    assert tokens[0].kind == DIRECTIVE
    assert tokens[0].text == "#const"


def test_arithmetic_tokens():
    tokens = tokenize("X = A + B * 2 - C / D.")
    arith = [t.text for t in tokens if t.kind == ARITH]
    assert arith == ["+", "*", "-", "/"]


def test_underscore_is_variable_kind():
    tokens = tokenize("p(_).")
    assert tokens[2].kind == VARIABLE
    assert tokens[2].text == "_"


def test_lex_error_on_foreign_character():
    with pytest.raises(LexError) as info:
        tokenize("soft(a) @ b.")
    assert info.value.span.start == 8


def test_scan_lenient_collects_errors():
    tokens, errors = scan_lenient("a. @@ b.")
    assert [t.text for t in tokens] == ["a", ".", "b", "."]
    assert len(errors) == 2


def test_comment_runs_to_end_of_line():
    tokens = tokenize("a. % rest of line . ignored\nb.")
    comment = [t for t in tokens if t.kind == COMMENT][0]
    assert comment.text == "% rest of line . ignored"
    assert [t.text for t in tokens if t.kind != COMMENT] == ["a", ".", "b", "."]
