"""Exact differentiation and substitution on scalar expressions."""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction

import sympy

from .canonical import I, NormalForm, Placeholder, as_normal, coordinate_symbol, placeholder_symbol
from .chart import Chart
from .models import Expr, Function, RealCoordinate, to_expr


def _variable(coordinate: str | RealCoordinate | Function) -> sympy.Symbol:
    if isinstance(coordinate, RealCoordinate):
        return coordinate_symbol(coordinate.name)
    if isinstance(coordinate, Function):
        return placeholder_symbol(coordinate.name, coordinate.conjugated, coordinate.real)
    return coordinate_symbol(coordinate)


def diff(e: Expr, coordinate: str | RealCoordinate | Function) -> Expr:
    """Exact partial derivative of ``e`` along a real coordinate."""
    return to_expr(e.normal.derivative(_variable(coordinate)))


def _wirtinger(e: Expr, holomorphic: str, chart: Chart, sign: int) -> Expr:
    pair = chart.pair(holomorphic)
    nf = e.normal
    along_real = nf.derivative(coordinate_symbol(pair.real)).scale(pair.scale / 2)
    along_imaginary = nf.derivative(coordinate_symbol(pair.imaginary)) * I.scale(
        Fraction(-sign, 2)
    )
    return to_expr(along_real + along_imaginary)


def wirtinger(e: Expr, holomorphic: str, chart: Chart) -> Expr:
    """Holomorphic derivative ``d/dz``, i.e. ``(scale/2) d/dx - (i/2) d/dy``.

    Raises:
        UnknownSymbol: The chart declares no complex coordinate of that name.
    """
    return _wirtinger(e, holomorphic, chart, 1)


def wirtinger_bar(e: Expr, holomorphic: str, chart: Chart) -> Expr:
    """Antiholomorphic derivative ``d/dconj(z)``."""
    return _wirtinger(e, holomorphic, chart, -1)


def substitute(e: Expr, mapping: Mapping[str | RealCoordinate | Function, object]) -> Expr:
    """Replace coordinates or placeholder functions by expressions or numbers."""
    keyed: dict[sympy.Symbol, NormalForm] = {
        _variable(k): as_normal(v) for k, v in mapping.items()
    }
    for symbol, value in list(keyed.items()):
        if isinstance(symbol, Placeholder) and not symbol.is_real:
            keyed.setdefault(symbol.partner, value.conjugate())
    return to_expr(e.normal.substitute(keyed))


def conjugate(e: Expr) -> Expr:
    return e.conjugate()


def canonicalize(e: Expr) -> Expr:
    """Flattened, folded and ordered tree equal in value to ``e``."""
    return to_expr(e.normal)
