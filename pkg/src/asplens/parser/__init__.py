"""Tokenizer, recursive-descent parser, printer, and AST JSON for the
supported ASP subset."""

from .jsonio import AST_SCHEMA_VERSION, ast_from_json, ast_to_json
from .parse import ParseError, UnsupportedConstruct, parse_program
from .printer import (
    atom_to_source,
    literal_to_source,
    program_to_source,
    statement_to_source,
    term_to_source,
)
from .syntax import (
    Anonymous,
    Atom,
    BinOp,
    BodyLiteral,
    Comment,
    Comparison,
    ConstDecl,
    Constant,
    Diagnostic,
    Fact,
    Function,
    Integer,
    Negated,
    Positive,
    Program,
    Rule,
    Statement,
    Term,
    Variable,
)
from .tokens import LexError, Span, Token, scan_lenient, tokenize

__all__ = [
    "AST_SCHEMA_VERSION",
    "Anonymous",
    "Atom",
    "BinOp",
    "BodyLiteral",
    "Comment",
    "Comparison",
    "ConstDecl",
    "Constant",
    "Diagnostic",
    "Fact",
    "Function",
    "Integer",
    "LexError",
    "Negated",
    "ParseError",
    "Positive",
    "Program",
    "Rule",
    "Span",
    "Statement",
    "Term",
    "Token",
    "UnsupportedConstruct",
    "Variable",
    "ast_from_json",
    "ast_to_json",
    "atom_to_source",
    "literal_to_source",
    "parse_program",
    "scan_lenient",
    "program_to_source",
    "statement_to_source",
    "term_to_source",
    "tokenize",
]
