"""Vectorized floating-point evaluation of scalar expressions."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import singledispatch

import numpy as np

from errors import DomainViolation

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

_REAL_TOL = 1e-12


@dataclass
class EvalContext:
    """Sample points and placeholder-function values, one array entry per point."""

    points: Mapping[str, np.ndarray]
    functions: Mapping[str, np.ndarray] = field(default_factory=dict)
    size: int = 1

    def __post_init__(self) -> None:
        for values in self.points.values():
            self.size = int(np.size(values))
            break


def _positive_real(values: np.ndarray) -> np.ndarray:
    scale = np.maximum(1.0, np.abs(values.real))
    return (np.abs(values.imag) <= _REAL_TOL * scale) & (values.real > 0)


@singledispatch
def _eval(node: Expr, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    raise TypeError(f"cannot evaluate {type(node).__name__}")


def _valid(ctx: EvalContext) -> np.ndarray:
    return np.zeros(ctx.size, dtype=bool)


@_eval.register
def _(node: RealCoordinate, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    if node.name not in ctx.points:
        raise DomainViolation(f"coordinate {node.name} is not assigned")
    return np.asarray(ctx.points[node.name], dtype=complex), _valid(ctx)


@_eval.register
def _(node: RationalConstant, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    return np.full(ctx.size, float(node.value), dtype=complex), _valid(ctx)


@_eval.register
def _(node: ImaginaryUnit, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    return np.full(ctx.size, 1j), _valid(ctx)


@_eval.register
def _(node: Function, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    if node.name not in ctx.functions:
        raise DomainViolation(f"no value supplied for function {node.name}")
    values = np.asarray(ctx.functions[node.name], dtype=complex)
    if node.real:
        values = values.real.astype(complex)
    elif node.conjugated:
        values = np.conj(values)
    return values, _valid(ctx)


@_eval.register
def _(node: Sum, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    total = np.zeros(ctx.size, dtype=complex)
    invalid = _valid(ctx)
    for term in node.terms:
        values, bad = _eval(term, ctx)
        total = total + values
        invalid |= bad
    return total, invalid


@_eval.register
def _(node: Product, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    total = np.ones(ctx.size, dtype=complex)
    invalid = _valid(ctx)
    for factor in node.factors:
        values, bad = _eval(factor, ctx)
        total = total * values
        invalid |= bad
    return total, invalid


@_eval.register
def _(node: Quotient, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    numerator, bad_n = _eval(node.numerator, ctx)
    denominator, bad_d = _eval(node.denominator, ctx)
    zero = denominator == 0
    safe = np.where(zero, 1.0, denominator)
    return numerator / safe, bad_n | bad_d | zero


@_eval.register
def _(node: Power, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    base, invalid = _eval(node.base, ctx)
    exponent = node.exponent
    if exponent.denominator == 1:
        if exponent < 0:
            zero = base == 0
            invalid = invalid | zero
            base = np.where(zero, 1.0, base)
        return base ** int(exponent), invalid
    ok = _positive_real(base)
    magnitude = np.where(ok, base.real, 1.0)
    return (magnitude ** float(exponent)).astype(complex), invalid | ~ok


@_eval.register
def _(node: Sqrt, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    argument, invalid = _eval(node.argument, ctx)
    ok = _positive_real(argument)
    return np.sqrt(np.where(ok, argument.real, 1.0)).astype(complex), invalid | ~ok


@_eval.register
def _(node: Ln, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    argument, invalid = _eval(node.argument, ctx)
    ok = _positive_real(argument)
    return np.log(np.where(ok, argument.real, 1.0)).astype(complex), invalid | ~ok


@_eval.register
def _(node: Exp, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    argument, invalid = _eval(node.argument, ctx)
    return np.exp(argument), invalid


def evaluate_many(e: Expr, ctx: EvalContext) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate at every point of the context.

    Returns:
        Complex values and a mask marking points outside the real-analytic domain.
    """
    with np.errstate(all="ignore"):
        values, invalid = _eval(e, ctx)
    return values, invalid | ~np.isfinite(values)


def evaluate(
    e: Expr,
    point: Mapping[str, float],
    functions: Mapping[str, complex] | None = None,
) -> complex:
    """Evaluate at a single point.

    Raises:
        DomainViolation: A logarithm, square root or fractional power met a
            non-positive argument, or a denominator vanished.
    """
    ctx = EvalContext(
        points={name: np.array([value], dtype=float) for name, value in point.items()},
        functions={
            name: np.array([value], dtype=complex) for name, value in (functions or {}).items()
        },
        size=1,
    )
    values, invalid = evaluate_many(e, ctx)
    if invalid[0]:
        raise DomainViolation(f"{e} is not defined at {dict(point)}")
    return complex(values[0])
