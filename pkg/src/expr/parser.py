"""Recursive-descent parser for the coefficient expression grammar.

    expr   := sign? term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' sign? rational)?
    atom   := ident | rational | 'i' | '(' expr ')' | ('ln'|'sqrt'|'exp') '(' expr ')'

A rational literal ``p/q`` is only read when a digit follows the slash, so
``x/2/3`` parses as ``x/(2/3)``.  Identifiers ending in ``_bar`` denote the
conjugate of a declared placeholder function.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from fractions import Fraction

from errors import ParseError, UnknownCoordinate

from .chart import Chart
from .models import (
    Exp,
    Expr,
    Function,
    ImaginaryUnit,
    Ln,
    Power,
    Product,
    Quotient,
    RationalConstant,
    RealCoordinate,
    Sqrt,
    Sum,
)

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(\S))")
_CALLS = {"ln": Ln, "sqrt": Sqrt, "exp": Exp}
_CONJUGATE_SUFFIX = "_bar"


class _Token:
    __slots__ = ("kind", "offset", "text")

    def __init__(self, kind: str, text: str, offset: int) -> None:
        self.kind = kind
        self.text = text
        self.offset = offset


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while (m := _TOKEN.match(text, pos)) is not None:
        start = _byte_offset(text, m.start(m.lastindex))
        if m.group(1):
            tokens.append(_Token("number", m.group(1), start))
        elif m.group(2):
            tokens.append(_Token("ident", m.group(2), start))
        else:
            symbol = m.group(3)
            if symbol not in "+-*/^()":
                raise ParseError(f"unexpected character {symbol!r}", start)
            tokens.append(_Token("op", symbol, start))
        pos = m.end()
    tokens.append(_Token("end", "", _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, coordinates: Iterable[str], functions: Iterable[str]) -> None:
        self.tokens = _tokenize(text)
        self.position = 0
        self.coordinates = frozenset(coordinates)
        self.functions = frozenset(functions)

    @property
    def current(self) -> _Token:
        return self.tokens[self.position]

    def peek(self, ahead: int = 1) -> _Token:
        return self.tokens[min(self.position + ahead, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        token = self.current
        self.position += 1
        return token

    def accept(self, symbol: str) -> bool:
        if self.current.kind == "op" and self.current.text == symbol:
            self.position += 1
            return True
        return False

    def expect(self, symbol: str) -> None:
        if not self.accept(symbol):
            found = self.current.text or "end of input"
            raise ParseError(f"expected {symbol!r}, found {found!r}", self.current.offset)

    def parse(self) -> Expr:
        node = self.expr()
        if self.current.kind != "end":
            raise ParseError(f"unexpected {self.current.text!r}", self.current.offset)
        return node

    def expr(self) -> Expr:
        terms: list[Expr] = []
        if self.accept("-"):
            terms.append(_negate(self.term()))
        else:
            self.accept("+")
            terms.append(self.term())
        while True:
            if self.accept("+"):
                terms.append(self.term())
            elif self.accept("-"):
                terms.append(_negate(self.term()))
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Expr:
        factors: list[Expr] = [self.factor()]
        while True:
            if self.accept("*"):
                factors.append(self.factor())
            elif self.accept("/"):
                numerator = factors[0] if len(factors) == 1 else Product(tuple(factors))
                factors = [Quotient(numerator, self.factor())]
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            negative = self.accept("-")
            if self.current.kind != "number":
                raise ParseError("exponent must be a rational literal", self.current.offset)
            exponent = self.rational()
            return Power(base, -exponent if negative else exponent)
        return base

    def rational(self) -> Fraction:
        numerator = int(self.advance().text)
        if self.current.text == "/" and self.peek().kind == "number":
            self.advance()
            token = self.advance()
            denominator = int(token.text)
            if denominator == 0:
                raise ParseError("zero denominator in rational literal", token.offset)
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def atom(self) -> Expr:
        token = self.current
        if token.kind == "number":
            return RationalConstant(self.rational())
        if token.kind == "op" and token.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if token.kind != "ident":
            found = token.text or "end of input"
            raise ParseError(f"unexpected {found!r}", token.offset)
        self.advance()
        name = token.text
        if name in _CALLS and self.current.text == "(":
            self.advance()
            argument = self.expr()
            self.expect(")")
            return _CALLS[name](argument)
        if name == "i":
            return ImaginaryUnit()
        if name in self.coordinates:
            return RealCoordinate(name)
        if name in self.functions:
            return Function(name)
        if name.endswith(_CONJUGATE_SUFFIX) and name[: -len(_CONJUGATE_SUFFIX)] in self.functions:
            return Function(name[: -len(_CONJUGATE_SUFFIX)], conjugated=True)
        raise UnknownCoordinate(f"unknown coordinate {name!r}", token.offset)


def _negate(node: Expr) -> Expr:
    if isinstance(node, RationalConstant):
        return RationalConstant(-node.value)
    if isinstance(node, Product):
        return Product((RationalConstant(Fraction(-1)), *node.factors))
    return Product((RationalConstant(Fraction(-1)), node))


def parse(text: str, chart: Chart | Sequence[str], functions: Iterable[str] = ()) -> Expr:
    """Parse expression text over the coordinates of a chart.

    Args:
        text: Expression source.
        chart: A ``Chart`` or a plain list of real coordinate names.
        functions: Names of complex placeholder functions that may appear.

    Returns:
        The parsed tree, not yet canonicalized.

    Raises:
        ParseError: Text does not match the grammar; carries the byte offset.
        UnknownCoordinate: An identifier is not a coordinate or declared function.
    """
    coordinates = chart.coordinates if isinstance(chart, Chart) else tuple(chart)
    return _Parser(text, coordinates, functions).parse()
