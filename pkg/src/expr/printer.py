"""Printer producing text in the parser's grammar with minimal parentheses."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import singledispatch

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

# numerators that would swallow a following "/digits" into a rational literal
_TRAILING_LITERAL = re.compile(r"[\^/]-?\d+$")


def _rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _is_negative_literal(node: Expr) -> bool:
    return isinstance(node, RationalConstant) and node.value < 0


def _wrap(node: Expr, precedence: int) -> str:
    text = to_string(node)
    if node.precedence < precedence:
        return f"({text})"
    return text


@singledispatch
def to_string(node: Expr) -> str:
    raise TypeError(f"cannot print {type(node).__name__}")


@to_string.register
def _(node: RealCoordinate) -> str:
    return node.name


@to_string.register
def _(node: RationalConstant) -> str:
    return _rational(node.value)


@to_string.register
def _(node: ImaginaryUnit) -> str:
    return "i"


@to_string.register
def _(node: Function) -> str:
    return f"{node.name}_bar" if node.conjugated else node.name


@to_string.register
def _(node: Sum) -> str:
    parts: list[str] = []
    for position, term in enumerate(node.terms):
        text = _wrap(term, 2) if isinstance(term, Sum) else to_string(term)
        if position == 0:
            parts.append(text)
        elif text.startswith("-"):
            parts.append(f" - {text[1:]}")
        else:
            parts.append(f" + {text}")
    return "".join(parts)


@to_string.register
def _(node: Product) -> str:
    factors = list(node.factors)
    prefix = ""
    if len(factors) > 1 and isinstance(factors[0], RationalConstant) and factors[0].value == -1:
        prefix = "-"
        factors = factors[1:]
    parts: list[str] = []
    for position, factor in enumerate(factors):
        if isinstance(factor, Quotient) or (position > 0 and _is_negative_literal(factor)):
            parts.append(f"({to_string(factor)})")
        elif isinstance(factor, RationalConstant) and factor.value.denominator != 1:
            parts.append(f"({to_string(factor)})")
        else:
            parts.append(_wrap(factor, 2))
    return prefix + "*".join(parts)


@to_string.register
def _(node: Quotient) -> str:
    numerator = _wrap(node.numerator, 2)
    denominator = to_string(node.denominator)
    if isinstance(node.denominator, Sum | Product | Quotient) or denominator.startswith("-"):
        denominator = f"({denominator})"
    elif isinstance(node.denominator, RationalConstant) and node.denominator.value.denominator != 1:
        denominator = f"({denominator})"
    if denominator[0].isdigit() and _TRAILING_LITERAL.search(numerator):
        numerator = f"({numerator})"
    return f"{numerator}/{denominator}"


@to_string.register
def _(node: Power) -> str:
    base = to_string(node.base)
    if node.base.precedence < 4 or (
        isinstance(node.base, RationalConstant)
        and (node.base.value < 0 or node.base.value.denominator != 1)
    ):
        base = f"({base})"
    return f"{base}^{_rational(node.exponent)}"


@to_string.register
def _(node: Ln) -> str:
    return f"ln({to_string(node.argument)})"


@to_string.register
def _(node: Sqrt) -> str:
    return f"sqrt({to_string(node.argument)})"


@to_string.register
def _(node: Exp) -> str:
    return f"exp({to_string(node.argument)})"
