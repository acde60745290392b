"""Recursive-descent parser for the supported ASP subset.

Supported statements: ground and non-ground facts, normal rules,
integrity constraints (empty head, stored under a reserved head
predicate), ``#const`` declarations, and line comments.

Aggregates, choice rules, disjunctive heads, weak constraints, pools,
intervals, and conditional literals are recognized and skipped: the
offending statement becomes an "unsupported" diagnostic and parsing
resumes at the next ``.``. Malformed statements degrade the same way
with an "error" diagnostic unless ``strict=True``.
"""

from __future__ import annotations

from . import syntax as S
from .tokens import (
    ARITH,
    CMP,
    COMMENT,
    DIRECTIVE,
    IDENTIFIER,
    INTEGER,
    PUNCT,
    VARIABLE,
    LexError,
    Span,
    Token,
    scan_lenient,
)

_UNSUPPORTED_DIRECTIVES = {
    "#count": "aggregate",
    "#sum": "aggregate",
    "#min": "aggregate",
    "#max": "aggregate",
    "#minimize": "optimization-statement",
    "#maximize": "optimization-statement",
    "#show": "show-directive",
    "#external": "external-directive",
    "#program": "program-directive",
    "#include": "include-directive",
    "#heuristic": "heuristic-directive",
}

_UNSUPPORTED_PUNCT = {
    "{": "aggregate-or-choice",
    "}": "aggregate-or-choice",
    "[": "weak-constraint-weight",
    "]": "weak-constraint-weight",
    ";": "disjunction-or-pool",
    ":~": "weak-constraint",
    "..": "interval",
    ":": "conditional-literal",
    "|": "disjunction",
    "~": "classical-negation",
}


class ParseError(Exception):
    def __init__(self, span: Span, expected: str, found: str):
        super().__init__(f"{span.line}:{span.col}: expected {expected}, found {found}")
        self.span = span
        self.expected = expected
        self.found = found


class UnsupportedConstruct(Exception):
    def __init__(self, span: Span, construct: str):
        super().__init__(f"{span.line}:{span.col}: unsupported construct: {construct}")
        self.span = span
        self.construct = construct


def parse_program(
    source: str, source_name: str = "<string>", strict: bool = False
) -> S.Program:
    """Parse *source* into a Program.

    With ``strict=False`` (default) malformed or unsupported statements
    are skipped and recorded in ``Program.diagnostics``; with
    ``strict=True`` the first problem raises ParseError,
    UnsupportedConstruct, or LexError.
    """
    tokens, lex_errors = scan_lenient(source)
    if strict and lex_errors:
        raise lex_errors[0]
    diagnostics: list[S.Diagnostic] = [
        S.Diagnostic("lex", e.message, e.span) for e in lex_errors
    ]
    parser = _Parser(tokens, source)
    statements: list[S.Statement] = []
    while not parser.at_end():
        start = parser.pos
        try:
            stmt = parser.statement()
        except UnsupportedConstruct as exc:
            if strict:
                raise
            diagnostics.append(
                S.Diagnostic(
                    "unsupported",
                    f"unsupported construct: {exc.construct}",
                    exc.span,
                    construct=exc.construct,
                )
            )
            parser.recover(start)
            continue
        except ParseError as exc:
            if strict:
                raise
            diagnostics.append(
                S.Diagnostic(
                    "error", f"expected {exc.expected}, found {exc.found}", exc.span
                )
            )
            parser.recover(start)
            continue
        statements.append(stmt)
    return S.Program(
        statements=tuple(_attach_comments(statements)),
        source_name=source_name,
        diagnostics=tuple(diagnostics),
    )


def _attach_comments(statements: list[S.Statement]) -> list[S.Statement]:
    """Mark comments that directly precede a rule (no blank line) attached.

    Runs backward so a block of adjacent comment lines above one rule is
    attached as a whole.
    """
    out = list(statements)
    attachable_line: int | None = None  # line a comment must end on to attach
    for i in range(len(out) - 1, -1, -1):
        stmt = out[i]
        if isinstance(stmt, S.Comment):
            attach = attachable_line is not None and stmt.span.line + 1 == attachable_line
            if attach != stmt.attached:
                out[i] = S.Comment(stmt.text, attach, stmt.span)
            attachable_line = stmt.span.line if attach else None
        else:
            attachable_line = stmt.span.line if isinstance(stmt, S.Rule) else None
    return out


class _Parser:
    def __init__(self, tokens: list[Token], source: str):
        self.tokens = tokens
        self.source = source
        self.pos = 0

    # -- token stream helpers -------------------------------------------

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def eof_span(self) -> Span:
        if self.tokens:
            last = self.tokens[-1].span
            return Span(last.end, last.end, last.line, last.col)
        return Span(0, 0, 1, 1)

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        tok = self.peek()
        expected = what or (text if text is not None else kind)
        if tok is None:
            raise ParseError(self.eof_span(), expected, "end of input")
        self.check_unsupported(tok)
        if tok.kind != kind or (text is not None and tok.text != text):
            raise ParseError(tok.span, expected, repr(tok.text))
        return self.advance()

    def check_unsupported(self, tok: Token) -> None:
        if tok.kind == DIRECTIVE and tok.text != "#const":
            construct = _UNSUPPORTED_DIRECTIVES.get(tok.text, tok.text)
            raise UnsupportedConstruct(tok.span, construct)
        if tok.kind == PUNCT and tok.text in _UNSUPPORTED_PUNCT:
            raise UnsupportedConstruct(tok.span, _UNSUPPORTED_PUNCT[tok.text])

    def recover(self, start: int) -> None:
        """Skip past the next '.' so parsing can continue."""
        self.pos = max(self.pos, start + 1)
        while not self.at_end():
            tok = self.advance()
            if tok.kind == PUNCT and tok.text == ".":
                return

    # -- grammar ---------------------------------------------------------

    def statement(self) -> S.Statement:
        tok = self.peek()
        assert tok is not None
        if tok.kind == COMMENT:
            self.advance()
            return S.Comment(tok.text, False, tok.span)
        if tok.kind == DIRECTIVE and tok.text == "#const":
            return self.const_decl()
        self.check_unsupported(tok)
        if tok.kind == PUNCT and tok.text == ":-":
            self.advance()
            body = self.body()
            dot = self.expect(PUNCT, ".")
            span = self._span(tok.span, dot.span)
            head = S.Atom(S.CONSTRAINT_HEAD, (), tok.span)
            return S.Rule(head, tuple(body), span)
        head = self.atom()
        nxt = self.peek()
        if nxt is not None and nxt.kind == PUNCT and nxt.text == ":-":
            self.advance()
            body = self.body()
            dot = self.expect(PUNCT, ".")
            return S.Rule(head, tuple(body), self._span(tok.span, dot.span))
        dot = self.expect(PUNCT, ".")
        return S.Fact(head, self._span(tok.span, dot.span))

    def const_decl(self) -> S.ConstDecl:
        first = self.expect(DIRECTIVE, "#const")
        name = self.expect(IDENTIFIER, what="constant name")
        self.expect(CMP, "=")
        value = self.signed_integer()
        dot = self.expect(PUNCT, ".")
        return S.ConstDecl(name.text, value, self._span(first.span, dot.span))

    def signed_integer(self) -> int:
        tok = self.peek()
        sign = 1
        if tok is not None and tok.kind == ARITH and tok.text == "-":
            self.advance()
            sign = -1
        num = self.expect(INTEGER, what="integer")
        return sign * int(num.text)

    def body(self) -> list[S.BodyLiteral]:
        literals = [self.literal()]
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == PUNCT and tok.text == ",":
                self.advance()
                literals.append(self.literal())
            else:
                return literals

    def literal(self) -> S.BodyLiteral:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.eof_span(), "body literal", "end of input")
        self.check_unsupported(tok)
        if tok.kind == IDENTIFIER and tok.text == "not":
            self.advance()
            atom = self.atom()
            return S.Negated(atom, self._span(tok.span, atom.span))
        if tok.kind == IDENTIFIER:
            # Could be an atom or a constant starting a comparison; parse
            # the atom and backtrack if a comparison operator follows.
            mark = self.pos
            atom = self.atom()
            nxt = self.peek()
            if nxt is not None and nxt.kind in (CMP, ARITH):
                self.pos = mark
                return self.comparison()
            return S.Positive(atom, atom.span)
        return self.comparison()

    def comparison(self) -> S.Comparison:
        start = self.peek()
        assert start is not None
        left = self.operand()
        op_tok = self.peek()
        if op_tok is None:
            raise ParseError(self.eof_span(), "comparison operator", "end of input")
        if op_tok.kind != CMP:
            self.check_unsupported(op_tok)
            raise ParseError(op_tok.span, "comparison operator", repr(op_tok.text))
        self.advance()
        right = self.operand()
        return S.Comparison(left, op_tok.text, right, self._span(start.span, right.span))

    def operand(self) -> S.Operand:
        """Integer arithmetic expression: terms with + - (lowest) and * / ."""
        left = self.mul_operand()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == ARITH and tok.text in "+-":
                self.advance()
                right = self.mul_operand()
                left = S.BinOp(tok.text, left, right, self._span(_opspan(left), _opspan(right)))
            else:
                return left

    def mul_operand(self) -> S.Operand:
        left = self.operand_atom()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == ARITH and tok.text in "*/":
                self.advance()
                right = self.operand_atom()
                left = S.BinOp(tok.text, left, right, self._span(_opspan(left), _opspan(right)))
            else:
                return left

    def operand_atom(self) -> S.Operand:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.eof_span(), "comparison operand", "end of input")
        if tok.kind == PUNCT and tok.text == "(":
            self.advance()
            inner = self.operand()
            self.expect(PUNCT, ")")
            return inner
        if tok.kind == ARITH and tok.text == "-":
            self.advance()
            num = self.expect(INTEGER, what="integer")
            return S.Integer(-int(num.text), self._span(tok.span, num.span))
        if tok.kind == VARIABLE:
            self.advance()
            if tok.text == "_":
                raise ParseError(tok.span, "comparison operand", "'_'")
            return S.Variable(tok.text, tok.span)
        if tok.kind == INTEGER:
            self.advance()
            return S.Integer(int(tok.text), tok.span)
        if tok.kind == IDENTIFIER:
            self.advance()
            nxt = self.peek()
            if nxt is not None and nxt.kind == PUNCT and nxt.text == "(":
                raise ParseError(nxt.span, "plain comparison operand", "function term")
            return S.Constant(tok.text, tok.span)
        self.check_unsupported(tok)
        raise ParseError(tok.span, "comparison operand", repr(tok.text))

    def atom(self) -> S.Atom:
        name = self.peek()
        if name is None:
            raise ParseError(self.eof_span(), "predicate name", "end of input")
        self.check_unsupported(name)
        if name.kind != IDENTIFIER:
            raise ParseError(name.span, "predicate name", repr(name.text))
        self.advance()
        nxt = self.peek()
        if nxt is None or not (nxt.kind == PUNCT and nxt.text == "("):
            return S.Atom(name.text, (), name.span)
        self.advance()
        args = [self.term()]
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == PUNCT and tok.text == ",":
                self.advance()
                args.append(self.term())
                continue
            close = self.expect(PUNCT, ")")
            return S.Atom(name.text, tuple(args), self._span(name.span, close.span))

    def term(self) -> S.Term:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.eof_span(), "term", "end of input")
        self.check_unsupported(tok)
        if tok.kind == VARIABLE:
            self.advance()
            if tok.text == "_":
                return S.Anonymous(tok.span)
            return S.Variable(tok.text, tok.span)
        if tok.kind == INTEGER:
            self.advance()
            return S.Integer(int(tok.text), tok.span)
        if tok.kind == ARITH and tok.text == "-":
            self.advance()
            num = self.expect(INTEGER, what="integer")
            return S.Integer(-int(num.text), self._span(tok.span, num.span))
        if tok.kind == IDENTIFIER:
            self.advance()
            nxt = self.peek()
            if nxt is not None and nxt.kind == PUNCT and nxt.text == "(":
                self.advance()
                args = [self.term()]
                while True:
                    sep = self.peek()
                    if sep is not None and sep.kind == PUNCT and sep.text == ",":
                        self.advance()
                        args.append(self.term())
                        continue
                    close = self.expect(PUNCT, ")")
                    return S.Function(tok.text, tuple(args), self._span(tok.span, close.span))
            return S.Constant(tok.text, tok.span)
        raise ParseError(tok.span, "term", repr(tok.text))

    def _span(self, first: Span, last: Span) -> Span:
        return Span(first.start, last.end, first.line, first.col)


def _opspan(op: S.Operand) -> Span:
    return op.span
