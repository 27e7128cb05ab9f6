"""Recursive-descent parser for the concrete formula syntax.

Grammar (whitespace-insensitive, ``#`` starts a comment)::

    formula  := iff
    iff      := impl ("<->" impl)*
    impl     := or ("->" impl)?
    or       := and ("|" and)*
    and      := unary ("&" unary)*
    unary    := "!" unary | quant | named | "(" formula ")" | atom
    quant    := ("exists" | "forall") var "." formula
    named    := "@" ident "[" [xvar ("," xvar)*] "]" "(" formula ")"
    atom     := xvar ("~" | "=" | "!=") xvar | xvar "in" Xvar

Quantifier bodies extend as far right as possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError
from .ast import (
    Adjacent,
    And,
    Equal,
    ExistsSet,
    ExistsVertex,
    ForallSet,
    ForallVertex,
    Formula,
    Iff,
    Implies,
    Member,
    Named,
    Not,
    NotEqual,
    Or,
    free_variables,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<op><->|->|!=|[()!&|~=.,\[\]@])
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)
_VAR = re.compile(r"(x|X)(\d+)\Z")


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "op", "word" or "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", line, i - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), line, i - line_start + 1))
        i = m.end()
    tokens.append(Token("eof", "", line, i - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{msg}, found {found}", tok.line, tok.col)

    def accept(self, text: str) -> Token | None:
        tok = self.tok
        if tok.kind in ("op", "word") and tok.text == text:
            self.i += 1
            return tok
        return None

    def expect(self, text: str) -> Token:
        tok = self.accept(text)
        if tok is None:
            self.error(f"expected {text!r}")
        return tok

    def var(self, kind: str | None = None) -> tuple[str, int, Token]:
        tok = self.tok
        m = _VAR.match(tok.text) if tok.kind == "word" else None
        if m is None or (kind is not None and m.group(1) != kind):
            want = {"x": "vertex variable", "X": "set variable"}.get(kind, "variable")
            self.error(f"expected {want}")
        self.i += 1
        return m.group(1), int(m.group(2)), tok

    # grammar rules

    def formula(self) -> Formula:
        left = self.impl()
        while (tok := self.accept("<->")) is not None:
            left = Iff(left, self.impl(), pos=(tok.line, tok.col))
        return left

    def impl(self) -> Formula:
        left = self.or_()
        if (tok := self.accept("->")) is not None:
            return Implies(left, self.impl(), pos=(tok.line, tok.col))
        return left

    def or_(self) -> Formula:
        left = self.and_()
        while (tok := self.accept("|")) is not None:
            left = Or(left, self.and_(), pos=(tok.line, tok.col))
        return left

    def and_(self) -> Formula:
        left = self.unary()
        while (tok := self.accept("&")) is not None:
            left = And(left, self.unary(), pos=(tok.line, tok.col))
        return left

    def unary(self) -> Formula:
        tok = self.tok
        pos = (tok.line, tok.col)
        if self.accept("!"):
            return Not(self.unary(), pos=pos)
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        if tok.kind == "word" and tok.text in ("exists", "forall"):
            self.i += 1
            kind, idx, _ = self.var()
            self.expect(".")
            body = self.formula()
            if kind == "x":
                cls = ExistsVertex if tok.text == "exists" else ForallVertex
            else:
                cls = ExistsSet if tok.text == "exists" else ForallSet
            return cls(idx, body, pos=pos)
        if self.accept("@"):
            return self.named(pos)
        if tok.kind == "word":
            return self.atom()
        self.error("expected a formula")

    def named(self, pos) -> Formula:
        tok = self.tok
        if tok.kind != "word":
            self.error("expected a tag name after '@'")
        self.i += 1
        self.expect("[")
        params = []
        if not self.accept("]"):
            while True:
                params.append(self.var("x")[1])
                if self.accept("]"):
                    break
                self.expect(",")
        self.expect("(")
        body = self.formula()
        self.expect(")")
        fv, _ = free_variables(body)
        if not fv <= set(params):
            missing = ", ".join(f"x{v}" for v in sorted(fv - set(params)))
            raise ParseError(f"tag {tok.text!r} does not list free variable(s) {missing}", *pos)
        return Named(tok.text, tuple(params), body, pos=pos)

    def atom(self) -> Formula:
        _, a, first = self.var("x")
        pos = (first.line, first.col)
        if self.accept("~"):
            return Adjacent(a, self.var("x")[1], pos=pos)
        if self.accept("="):
            return Equal(a, self.var("x")[1], pos=pos)
        if self.accept("!="):
            return NotEqual(a, self.var("x")[1], pos=pos)
        if self.accept("in"):
            return Member(a, self.var("X")[1], pos=pos)
        self.error("expected '~', '=', '!=' or 'in'")


def parse_formula(text: str) -> Formula:
    """Parse ``text``; free variables are allowed (see :func:`is_sentence`)."""
    p = _Parser(text)
    f = p.formula()
    if p.tok.kind != "eof":
        if p.tok.text == ")":
            p.error("unbalanced parenthesis")
        p.error("unexpected trailing input")
    return f
