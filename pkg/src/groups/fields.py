"""Exact and floating-point realizations of ``ScalarField``.

Rational and Gaussian-rational parameters, as Python or sympy numbers, and
symbolic expressions are handled exactly through normal forms; any float or
complex parameter switches the whole matrix to numpy arithmetic with an
absolute tolerance.
"""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction

import numpy as np

from config import settings
from errors import SingularMatrix
import sympy

from expr.canonical import I, NormalForm, as_normal, make_exp
from expr.evaluate import evaluate
from expr.linalg import determinant, invert, matmul
from expr.models import Expr, to_expr

from .interfaces import Rows, ScalarField


class ExactField:
    """Arithmetic on normal forms; zero tests are structural."""

    name = "exact"

    def coerce(self, value: object) -> NormalForm:
        return as_normal(value)

    def exp_i(self, angle: object) -> NormalForm:
        return make_exp(I * as_normal(angle))

    def conjugate(self, value: NormalForm) -> NormalForm:
        return as_normal(value).conjugate()

    def is_zero(self, value: NormalForm) -> bool:
        return as_normal(value).is_zero

    def matrix(self, rows: Rows) -> list[list[NormalForm]]:
        return [[as_normal(entry) for entry in row] for row in rows]

    def matmul(self, a: Rows, b: Rows) -> list[list[NormalForm]]:
        return matmul(self.matrix(a), self.matrix(b))

    def inverse(self, a: Rows) -> list[list[NormalForm]]:
        return invert(self.matrix(a))

    def determinant(self, a: Rows) -> NormalForm:
        return determinant(self.matrix(a))


class NumericField:
    """Complex floating-point arithmetic with an absolute zero tolerance."""

    name = "numeric"

    def __init__(self, tol: float | None = None) -> None:
        self.tol = settings.GROUP_TOL if tol is None else tol

    def coerce(self, value: object) -> complex:
        if isinstance(value, NormalForm | Expr):
            normal = as_normal(value)
            if normal.is_constant:
                return complex(normal.constant_value)
            return evaluate(to_expr(normal), {})
        return complex(value)

    def exp_i(self, angle: object) -> complex:
        return complex(np.exp(1j * self.coerce(angle).real))

    def conjugate(self, value: complex) -> complex:
        return complex(value).conjugate()

    def is_zero(self, value: complex) -> bool:
        return abs(value) <= self.tol

    def matrix(self, rows: Rows) -> np.ndarray:
        return np.array([[self.coerce(entry) for entry in row] for row in rows], dtype=complex)

    def matmul(self, a: Rows, b: Rows) -> np.ndarray:
        return np.asarray(a, dtype=complex) @ np.asarray(b, dtype=complex)

    def inverse(self, a: Rows) -> np.ndarray:
        try:
            return np.linalg.inv(np.asarray(a, dtype=complex))
        except np.linalg.LinAlgError as e:
            raise SingularMatrix(str(e)) from e

    def determinant(self, a: Rows) -> complex:
        return complex(np.linalg.det(np.asarray(a, dtype=complex)))


EXACT = ExactField()

_EXACT_TYPES = (int, Fraction, sympy.Basic, NormalForm, Expr)


def _leaves(values: Iterable[object]) -> Iterable[object]:
    for value in values:
        if isinstance(value, list | tuple | np.ndarray):
            yield from _leaves(value)
        else:
            yield value


def field_for(values: Iterable[object], tol: float | None = None) -> ScalarField:
    """Exact field when every value is exact, otherwise the numeric field."""
    if all(isinstance(v, _EXACT_TYPES) and not isinstance(v, bool) for v in _leaves(values)):
        return EXACT
    return NumericField(tol)
