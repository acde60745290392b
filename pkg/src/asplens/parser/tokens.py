"""Tokenizer for the supported ASP subset.

Produces a flat token stream with byte-accurate spans. Comments are
ordinary tokens so that downstream passes can attach documentation to
rules. The token texts plus the skipped whitespace reproduce the input
exactly; tests rely on that round-trip.
"""

from __future__ import annotations

from dataclasses import dataclass, field

IDENTIFIER = "identifier"
VARIABLE = "variable"
INTEGER = "integer"
PUNCT = "punctuation"
CMP = "comparison-operator"
ARITH = "arithmetic-operator"
COMMENT = "comment"
DIRECTIVE = "directive"

# Multi-char punctuation first so ":-" never lexes as ":" "-".
_PUNCT2 = (":-", ":~", "..")
_PUNCT1 = "(),.{}[];:~|"
_CMP2 = ("!=", "<=", ">=")
_CMP1 = "=<>"
_ARITH = "+-*/"


@dataclass(frozen=True, slots=True)
class Span:
    """Half-open byte range [start, end) with 1-based line/col of start."""

    start: int
    end: int
    line: int
    col: int


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    span: Span = field(compare=False)


class LexError(Exception):
    def __init__(self, message: str, span: Span):
        super().__init__(f"{span.line}:{span.col}: {message}")
        self.message = message
        self.span = span


def tokenize(source: str) -> list[Token]:
    """Tokenize *source*, raising LexError on the first foreign character."""
    tokens, bad = scan_lenient(source)
    if bad:
        raise bad[0]
    return tokens


def scan_lenient(source: str) -> tuple[list[Token], list[LexError]]:
    """Tokenize, collecting foreign characters as errors instead of raising.

    Foreign characters are skipped one at a time so that a single stray
    byte does not lose the rest of the file.
    """
    tokens: list[Token] = []
    errors: list[LexError] = []
    i = 0
    n = len(source)
    line = 1
    line_start = 0

    def span(start: int, end: int) -> Span:
        return Span(start, end, line, start - line_start + 1)

    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            line_start = i
            continue
        if ch in " \t\r":
            i += 1
            continue
        if ch == "%":
            end = source.find("\n", i)
            if end < 0:
                end = n
            tokens.append(Token(COMMENT, source[i:end], span(i, end)))
            i = end
            continue
        if "a" <= ch <= "z":
            end = _word_end(source, i)
            tokens.append(Token(IDENTIFIER, source[i:end], span(i, end)))
            i = end
            continue
        if "A" <= ch <= "Z" or ch == "_":
            end = _word_end(source, i)
            tokens.append(Token(VARIABLE, source[i:end], span(i, end)))
            i = end
            continue
        if "0" <= ch <= "9":
            end = i
            while end < n and "0" <= source[end] <= "9":
                end += 1
            tokens.append(Token(INTEGER, source[i:end], span(i, end)))
            i = end
            continue
        if ch == "#":
            end = _word_end(source, i + 1)
            if end == i + 1:
                errors.append(LexError("dangling '#'", span(i, i + 1)))
                i += 1
                continue
            tokens.append(Token(DIRECTIVE, source[i:end], span(i, end)))
            i = end
            continue
        two = source[i : i + 2]
        if two in _CMP2:
            tokens.append(Token(CMP, two, span(i, i + 2)))
            i += 2
            continue
        if two in _PUNCT2:
            tokens.append(Token(PUNCT, two, span(i, i + 2)))
            i += 2
            continue
        if ch in _CMP1:
            tokens.append(Token(CMP, ch, span(i, i + 1)))
            i += 1
            continue
        if ch in _ARITH:
            tokens.append(Token(ARITH, ch, span(i, i + 1)))
            i += 1
            continue
        if ch in _PUNCT1:
            tokens.append(Token(PUNCT, ch, span(i, i + 1)))
            i += 1
            continue
        errors.append(LexError(f"unexpected character {ch!r}", span(i, i + 1)))
        i += 1

    return tokens, errors


def _word_end(source: str, start: int) -> int:
    end = start
    n = len(source)
    while end < n and (
        "a" <= source[end] <= "z"
        or "A" <= source[end] <= "Z"
        or "0" <= source[end] <= "9"
        or source[end] == "_"
    ):
        end += 1
    return end
