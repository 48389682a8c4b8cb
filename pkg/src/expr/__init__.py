"""Scalar expression engine: parse, differentiate, evaluate and zero-test coefficients."""

from .calculus import canonicalize, conjugate, diff, substitute, wirtinger, wirtinger_bar
from .chart import Chart, ComplexPair, standard_chart, tube_chart
from .evaluate import evaluate
from .identity import Domain, is_zero, max_residual
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
    constant,
    to_expr,
)
from .parser import parse
from .printer import to_string

__all__ = [
    "Chart",
    "ComplexPair",
    "Domain",
    "Exp",
    "Expr",
    "Function",
    "ImaginaryUnit",
    "Ln",
    "Power",
    "Product",
    "Quotient",
    "RationalConstant",
    "RealCoordinate",
    "Sqrt",
    "Sum",
    "canonicalize",
    "conjugate",
    "constant",
    "diff",
    "evaluate",
    "is_zero",
    "max_residual",
    "parse",
    "standard_chart",
    "substitute",
    "to_expr",
    "to_string",
    "tube_chart",
    "wirtinger",
    "wirtinger_bar",
]
