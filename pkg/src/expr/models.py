"""Scalar expression tree.

Nodes are immutable dataclasses.  Arithmetic operators build canonical
trees: both operands are brought to their ``NormalForm`` and the result is
rebuilt with ``to_expr``, so ``a + b`` never nests raw ``Sum`` nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, singledispatch

import sympy

from errors import DomainViolation

from .canonical import (
    I,
    Coordinate,
    NormalForm,
    Placeholder,
    as_normal,
    make_exp,
    make_ln,
)

HALF = Fraction(1, 2)


class Expr:
    """Base class of every scalar expression node."""

    precedence = 4

    @cached_property
    def normal(self) -> NormalForm:
        return _to_normal(self)

    def __str__(self) -> str:
        from .printer import to_string

        return to_string(self)

    def _combine(self, other: object, op) -> Expr:
        return to_expr(op(self.normal, as_normal(other)))

    def __add__(self, other: object) -> Expr:
        return self._combine(other, lambda a, b: a + b)

    def __radd__(self, other: object) -> Expr:
        return self._combine(other, lambda a, b: b + a)

    def __sub__(self, other: object) -> Expr:
        return self._combine(other, lambda a, b: a - b)

    def __rsub__(self, other: object) -> Expr:
        return self._combine(other, lambda a, b: b - a)

    def __mul__(self, other: object) -> Expr:
        return self._combine(other, lambda a, b: a * b)

    def __rmul__(self, other: object) -> Expr:
        return self._combine(other, lambda a, b: b * a)

    def __truediv__(self, other: object) -> Expr:
        return self._combine(other, _divide)

    def __rtruediv__(self, other: object) -> Expr:
        return self._combine(other, lambda a, b: _divide(b, a))

    def __neg__(self) -> Expr:
        return to_expr(-self.normal)

    def __pow__(self, exponent: int | Fraction) -> Expr:
        try:
            return to_expr(self.normal.power(Fraction(exponent)))
        except ZeroDivisionError as e:
            raise DomainViolation(f"negative power of zero: {self}") from e

    def conjugate(self) -> Expr:
        return to_expr(self.normal.conjugate())

    @property
    def is_literal_zero(self) -> bool:
        return self.normal.is_zero


def _divide(a: NormalForm, b: NormalForm) -> NormalForm:
    if b.is_zero:
        raise DomainViolation("division by zero")
    return a / b


@dataclass(frozen=True)
class RealCoordinate(Expr):
    name: str


@dataclass(frozen=True)
class RationalConstant(Expr):
    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class ImaginaryUnit(Expr):
    pass


@dataclass(frozen=True)
class Function(Expr):
    """Placeholder function with no chart expression, e.g. an undetermined torsion coefficient."""

    name: str
    conjugated: bool = False
    real: bool = False


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple[Expr, ...]

    precedence = 1


@dataclass(frozen=True)
class Product(Expr):
    factors: tuple[Expr, ...]

    precedence = 2


@dataclass(frozen=True)
class Quotient(Expr):
    numerator: Expr
    denominator: Expr

    precedence = 2


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: Fraction

    precedence = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", Fraction(self.exponent))


@dataclass(frozen=True)
class Ln(Expr):
    argument: Expr


@dataclass(frozen=True)
class Sqrt(Expr):
    argument: Expr


@dataclass(frozen=True)
class Exp(Expr):
    argument: Expr


ZERO_EXPR = RationalConstant(Fraction(0))
ONE_EXPR = RationalConstant(Fraction(1))


@singledispatch
def _to_normal(node: Expr) -> NormalForm:
    raise TypeError(f"not an expression node: {type(node).__name__}")


@_to_normal.register
def _(node: RealCoordinate) -> NormalForm:
    return NormalForm.coordinate(node.name)


@_to_normal.register
def _(node: RationalConstant) -> NormalForm:
    return NormalForm.constant(node.value)


@_to_normal.register
def _(node: ImaginaryUnit) -> NormalForm:
    return I


@_to_normal.register
def _(node: Function) -> NormalForm:
    return NormalForm.function(node.name, node.conjugated, node.real)


@_to_normal.register
def _(node: Sum) -> NormalForm:
    return NormalForm.of(sympy.Add(*(term.normal.value for term in node.terms)))


@_to_normal.register
def _(node: Product) -> NormalForm:
    return NormalForm.of(sympy.Mul(*(factor.normal.value for factor in node.factors)))


@_to_normal.register
def _(node: Quotient) -> NormalForm:
    return _divide(node.numerator.normal, node.denominator.normal)


@_to_normal.register
def _(node: Power) -> NormalForm:
    try:
        return node.base.normal.power(node.exponent)
    except ZeroDivisionError as e:
        raise DomainViolation("negative power of zero") from e


@_to_normal.register
def _(node: Ln) -> NormalForm:
    try:
        return make_ln(node.argument.normal)
    except ZeroDivisionError as e:
        raise DomainViolation("logarithm of zero") from e
    except ValueError as e:
        raise DomainViolation(str(e)) from e


@_to_normal.register
def _(node: Sqrt) -> NormalForm:
    return node.argument.normal.power(HALF)


@_to_normal.register
def _(node: Exp) -> NormalForm:
    return make_exp(node.argument.normal)


def to_expr(nf: NormalForm) -> Expr:
    """Rebuild the canonical tree of a normal form."""
    node = _tree(nf.value)
    node.__dict__["normal"] = nf
    return node


def _tree(value: sympy.Expr) -> Expr:
    if value.is_Add:
        return Sum(tuple(_term(term) for term in value.as_ordered_terms()))
    return _term(value)


def _fraction(value: sympy.Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _atom(value: sympy.Basic) -> Expr:
    if isinstance(value, Coordinate):
        return RealCoordinate(value.name)
    if isinstance(value, Placeholder):
        return Function(value.base_name, conjugated=value.conjugated, real=bool(value.is_real))
    if value.is_Rational:
        return RationalConstant(_fraction(value))
    if value is sympy.I:
        return ImaginaryUnit()
    if value is sympy.E:
        return Exp(ONE_EXPR)
    if isinstance(value, sympy.log):
        return Ln(_tree(value.args[0]))
    if isinstance(value, sympy.exp):
        return Exp(_tree(value.args[0]))
    if isinstance(value, sympy.Abs):
        return Sqrt(Power(_tree(value.args[0]), 2))
    if value.is_Add or value.is_Mul:
        return _tree(value)
    raise TypeError(f"no expression node for {value}")


def _raise(base: Expr, exponent: Fraction) -> Expr:
    if exponent == 1:
        return base
    if exponent == HALF:
        return Sqrt(base)
    return Power(base, exponent)


def _term(value: sympy.Expr) -> Expr:
    coeff, rest = value.as_coeff_Mul()
    factors = [] if rest == 1 else list(sympy.Mul.make_args(rest))
    imaginary = sympy.I in factors
    others = sorted((f for f in factors if f is not sympy.I), key=sympy.default_sort_key)
    symbolic = bool(others) or imaginary
    ratio = _fraction(coeff)
    p, q = ratio.numerator, ratio.denominator
    upper: list[Expr] = []
    lower: list[Expr] = []
    if p == -1 and symbolic:
        upper.append(RationalConstant(Fraction(-1)))
    elif p != 1 or not symbolic:
        upper.append(RationalConstant(Fraction(p)))
    if imaginary:
        upper.append(ImaginaryUnit())
    if q != 1:
        lower.append(RationalConstant(Fraction(q)))
    for factor in others:
        base, exponent = factor, Fraction(1)
        if factor.is_Pow and factor.exp.is_Rational:
            base, exponent = factor.base, _fraction(factor.exp)
        if exponent > 0:
            upper.append(_raise(_atom(base), exponent))
        else:
            lower.append(_raise(_atom(base), -exponent))
    numerator = _join(upper)
    if not lower:
        return numerator
    return Quotient(numerator, _join(lower))


def _join(factors: list[Expr]) -> Expr:
    if not factors:
        return ONE_EXPR
    if len(factors) == 1:
        return factors[0]
    return Product(tuple(factors))


def constant(value: int | Fraction | complex | sympy.Expr) -> Expr:
    """Expression for an exact constant."""
    return to_expr(NormalForm.constant(value))
