"""Canonical normal form for coefficient expressions, kept as sympy expressions.

A ``NormalForm`` wraps a sympy expression held in one fixed shape: fully
expanded with logarithms left whole, exponential factors merged, Gaussian
denominators rationalised and the positive content of every radical of a
sum pulled out.  Chart coordinates are ``Coordinate`` symbols that carry
their sign: ``x`` coordinates are positive and every other coordinate is
only real, so ``sqrt(x1^2)`` folds to ``x1`` while ``sqrt(y1^2)`` stays
``|y1|``.  A complex placeholder function and its conjugate are two
independent ``Placeholder`` symbols; conjugation swaps them and flips ``i``.

Two normal forms built from equal values along the same rewriting paths
compare equal; no logarithmic or trigonometric identities are applied.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import sympy

CONJUGATE_SUFFIX = "_bar"

_POSITIVE_COORDINATE = re.compile(r"x\d*")


class Coordinate(sympy.Symbol):
    """Real chart coordinate; the ``x`` coordinates are also positive."""


class Placeholder(sympy.Symbol):
    """Placeholder function with no chart expression, or the conjugate of one."""

    @property
    def conjugated(self) -> bool:
        return not self.is_real and self.name.endswith(CONJUGATE_SUFFIX)

    @property
    def base_name(self) -> str:
        return self.name.removesuffix(CONJUGATE_SUFFIX) if self.conjugated else self.name

    @property
    def partner(self) -> Placeholder:
        if self.is_real:
            return self
        return placeholder_symbol(self.base_name, conjugated=not self.conjugated)


@lru_cache(maxsize=None)
def coordinate_symbol(name: str) -> Coordinate:
    if _POSITIVE_COORDINATE.fullmatch(name):
        return Coordinate(name, positive=True)
    return Coordinate(name, real=True)


@lru_cache(maxsize=None)
def placeholder_symbol(name: str, conjugated: bool = False, real: bool = False) -> Placeholder:
    if real:
        return Placeholder(name, real=True)
    return Placeholder(f"{name}{CONJUGATE_SUFFIX}" if conjugated else name)


def to_sympy(value: object) -> sympy.Expr:
    """Exact sympy number for a Python number; sympy values pass through."""
    if isinstance(value, sympy.Basic):
        return value
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int | Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, float):
        return to_sympy(Fraction(value))
    if isinstance(value, complex):
        return to_sympy(value.real) + sympy.I * to_sympy(value.imag)
    raise TypeError(f"cannot interpret {value!r} as an exact number")


def _is_numeric_denominator(node: sympy.Basic) -> bool:
    return (
        node.is_Pow
        and node.exp.is_negative
        and node.base.is_Add
        and node.base.is_number
        and not node.base.has(sympy.exp, sympy.log)
    )


def _is_power_of_sum(node: sympy.Basic) -> bool:
    return node.is_Pow and node.base.is_Add and node.exp.is_Rational


def _pull_content(node: sympy.Pow) -> sympy.Expr:
    content, primitive = node.base.as_content_primitive()
    if content == 1 or not content.is_positive:
        return node
    return content**node.exp * primitive**node.exp


def _expand(expr: sympy.Expr) -> sympy.Expr:
    return sympy.expand(expr, log=False, power_exp=False)


@lru_cache(maxsize=1 << 16)
def canonical(expr: sympy.Expr) -> sympy.Expr:
    expr = _expand(expr)
    nodes = sympy.preorder_traversal(expr)
    if expr.has(sympy.I) and any(_is_numeric_denominator(node) for node in nodes):
        expr = _expand(expr.replace(_is_numeric_denominator, sympy.radsimp))
    expr = expr.replace(_is_power_of_sum, _pull_content)
    if expr.has(sympy.exp):
        expr = sympy.powsimp(expr, combine="exp")
    return expr


def _is_rational_node(node: sympy.Basic) -> bool:
    if node.is_Add or node.is_Mul or node.is_Rational or node.is_Symbol or node is sympy.I:
        return True
    if node.is_Pow and node.exp.is_Rational:
        return node.base.is_Symbol or (node.base.is_Rational and node.base.is_positive)
    return False


@dataclass(frozen=True)
class NormalForm:
    """Canonical sympy expression; build through ``of`` or the named constructors."""

    value: sympy.Expr = sympy.S.Zero

    @classmethod
    def of(cls, expr: sympy.Expr) -> NormalForm:
        return cls(canonical(sympy.sympify(expr)))

    @classmethod
    def constant(cls, value: object) -> NormalForm:
        return cls.of(to_sympy(value))

    @classmethod
    def coordinate(cls, name: str) -> NormalForm:
        return cls(coordinate_symbol(name))

    @classmethod
    def function(cls, name: str, conjugated: bool = False, real: bool = False) -> NormalForm:
        return cls(placeholder_symbol(name, conjugated, real))

    @property
    def is_zero(self) -> bool:
        return self.value == sympy.S.Zero

    @property
    def is_constant(self) -> bool:
        return not self.value.free_symbols

    @property
    def constant_value(self) -> sympy.Expr:
        if not self.is_constant:
            raise ValueError(f"{self.value} is not constant")
        return self.value

    @cached_property
    def free_variables(self) -> frozenset[sympy.Symbol]:
        return frozenset(self.value.free_symbols)

    @cached_property
    def is_rational_class(self) -> bool:
        """Whether every node is a sum or product of symbols and constants to rational powers.

        Radicals of sums, logarithms, exponentials and absolute values fall outside.
        """
        return all(_is_rational_node(node) for node in sympy.preorder_traversal(self.value))

    def __add__(self, other: object) -> NormalForm:
        return NormalForm.of(self.value + as_normal(other).value)

    def __radd__(self, other: object) -> NormalForm:
        return as_normal(other) + self

    def __sub__(self, other: object) -> NormalForm:
        return NormalForm.of(self.value - as_normal(other).value)

    def __rsub__(self, other: object) -> NormalForm:
        return as_normal(other) - self

    def __neg__(self) -> NormalForm:
        return NormalForm.of(-self.value)

    def __mul__(self, other: object) -> NormalForm:
        return NormalForm.of(self.value * as_normal(other).value)

    def __rmul__(self, other: object) -> NormalForm:
        return as_normal(other) * self

    def __truediv__(self, other: object) -> NormalForm:
        return self * as_normal(other).inverse()

    def __rtruediv__(self, other: object) -> NormalForm:
        return as_normal(other) * self.inverse()

    def __pow__(self, exponent: int | Fraction) -> NormalForm:
        return self.power(exponent)

    def scale(self, factor: object) -> NormalForm:
        return self * as_normal(factor)

    def inverse(self) -> NormalForm:
        if self.is_zero:
            raise ZeroDivisionError("division by zero")
        value = 1 / self.value
        if self.value.is_number and not self.value.has(sympy.exp, sympy.log):
            value = sympy.radsimp(value)
        return NormalForm.of(value)

    def power(self, exponent: int | Fraction) -> NormalForm:
        exponent = Fraction(exponent)
        if exponent == 0:
            return ONE
        if self.is_zero and exponent < 0:
            raise ZeroDivisionError("negative power of zero")
        if exponent.denominator == 1 and exponent < 0:
            return self.inverse().power(-exponent)
        return NormalForm.of(self.value ** to_sympy(exponent))

    def conjugate(self) -> NormalForm:
        swaps: dict[sympy.Basic, sympy.Basic] = {sympy.I: -sympy.I}
        for symbol in self.free_variables:
            if isinstance(symbol, Placeholder) and not symbol.is_real:
                swaps[symbol] = symbol.partner
        return NormalForm.of(self.value.xreplace(swaps))

    def derivative(self, variable: sympy.Symbol) -> NormalForm:
        if variable not in self.free_variables:
            return ZERO
        result = sympy.diff(self.value, variable)
        if result.has(sympy.DiracDelta):
            result = result.replace(sympy.DiracDelta, lambda *_: sympy.S.Zero)
        if result.has(sympy.sign):
            result = result.replace(sympy.sign, lambda arg: arg / sympy.Abs(arg))
        return NormalForm.of(result)

    def substitute(self, mapping: Mapping[sympy.Symbol, NormalForm]) -> NormalForm:
        """Replace symbols simultaneously.

        Raises:
            ZeroDivisionError: The substitution divides by zero or takes the logarithm of zero.
        """
        relevant = {k: v.value for k, v in mapping.items() if k in self.free_variables}
        if not relevant:
            return self
        result = self.value.xreplace(relevant)
        if result.has(sympy.zoo, sympy.nan, sympy.oo, -sympy.oo):
            raise ZeroDivisionError(f"substitution is singular in {self.value}")
        return NormalForm.of(result)


ZERO = NormalForm()
ONE = NormalForm(sympy.S.One)
I = NormalForm(sympy.I)


def as_normal(value: object) -> NormalForm:
    """Coerce a number, sympy value, expression or normal form."""
    if isinstance(value, NormalForm):
        return value
    normal = getattr(value, "normal", None)
    if isinstance(normal, NormalForm):
        return normal
    return NormalForm.of(to_sympy(value))


def make_ln(argument: NormalForm) -> NormalForm:
    """Natural logarithm, principal branch.

    Raises:
        ZeroDivisionError: The argument is zero.
        ValueError: The argument is a constant off the positive axis.
    """
    if argument.is_zero:
        raise ZeroDivisionError("logarithm of zero")
    result = sympy.log(argument.value)
    if result.has(sympy.pi):
        raise ValueError(f"logarithm off the positive axis: {argument.value}")
    return NormalForm.of(result)


def make_exp(argument: NormalForm) -> NormalForm:
    return NormalForm.of(sympy.exp(argument.value))
