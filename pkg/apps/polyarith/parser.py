"""
Recursive-descent parser for polynomial expressions.

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := uint | identifier | '(' expr ')'

Juxtaposition is not multiplication: "2x" and "x y" are rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from core.exceptions import (
    ExpressionSyntaxError,
    InvalidExponentError,
    UnknownIdentifierError,
)

from .models import Poly, Precision, PrimeContext

TOKEN = re.compile(r"\s*(?:(?P<int>[0-9]+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op" or "end"
    value: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = TOKEN.match(text, pos)
        if not match:
            offset = len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[pos + offset]!r}", pos + offset, text)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class Parser:
    """Evaluates the expression straight into a Poly while parsing"""

    def __init__(self, text: str, ctx: PrimeContext, precision: Precision = 1):
        self.text = text
        self.ctx = ctx
        self.precision = precision
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.value == op:
            self.index += 1
            return True
        return False

    def error(self, message: str, token: Optional[Token] = None) -> ExpressionSyntaxError:
        token = token or self.current
        return ExpressionSyntaxError(message, token.position, self.text)

    def parse(self) -> Poly:
        if self.current.kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.current.kind != "end":
            token = self.current
            if token.kind in ("int", "name") or token.value == "(":
                raise self.error("implicit multiplication is not supported, use '*'", token)
            raise self.error(f"unexpected {token.value!r}", token)
        return value

    def expr(self) -> Poly:
        negative = False
        if self.accept("-"):
            negative = True
        else:
            self.accept("+")
        value = self.term()
        if negative:
            value = -value
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> Poly:
        value = self.factor()
        while self.accept("*"):
            value = value * self.factor()
        return value

    def factor(self) -> Poly:
        value = self.base()
        if self.accept("^"):
            token = self.current
            if token.kind != "int":
                raise InvalidExponentError(
                    f"exponent must be a nonnegative integer literal at position {token.position}",
                    {"position": token.position},
                )
            self.advance()
            value = value ** int(token.value)
            if self.current.kind == "op" and self.current.value == "^":
                raise self.error("chained exponents need parentheses")
        return value

    def base(self) -> Poly:
        token = self.current
        if token.kind == "int":
            self.advance()
            return Poly.constant(self.ctx, int(token.value), self.precision)
        if token.kind == "name":
            self.advance()
            if token.value not in self.ctx.names:
                raise UnknownIdentifierError(token.value, token.position)
            return Poly.variable(self.ctx, token.value, self.precision)
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return value
        if token.kind == "end":
            raise self.error("unexpected end of expression")
        raise self.error(f"unexpected {token.value!r}")


def parse_poly(text: str, ctx: PrimeContext, precision: Precision = 1) -> Poly:
    """Parse `text` into a canonical Poly at the given precision"""
    return Parser(text, ctx, precision).parse()
