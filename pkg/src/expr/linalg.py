"""Exact matrix algebra over normal forms, carried out on ``sympy.Matrix``."""

from __future__ import annotations

from collections.abc import Sequence

import sympy

from errors import DimensionMismatch, SingularMatrix

from .canonical import ONE, ZERO, NormalForm, as_normal, canonical

Matrix = list[list[NormalForm]]


def as_matrix(rows: Sequence[Sequence[object]]) -> Matrix:
    matrix = [[as_normal(entry) for entry in row] for row in rows]
    if any(len(row) != len(matrix) for row in matrix):
        raise DimensionMismatch("matrix must be square")
    return matrix


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def _to_sympy(m: Sequence[Sequence[NormalForm]]) -> sympy.Matrix:
    return sympy.Matrix([[entry.value for entry in row] for row in m])


def _from_sympy(m: sympy.Matrix) -> Matrix:
    return [[NormalForm.of(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def matmul(a: Sequence[Sequence[NormalForm]], b: Sequence[Sequence[NormalForm]]) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    return _from_sympy(_to_sympy(a) * _to_sympy(b))


def determinant(m: Sequence[Sequence[NormalForm]]) -> NormalForm:
    """Division-free Berkowitz determinant, so a zero determinant has a zero normal form."""
    if any(len(row) != len(m) for row in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    return NormalForm.of(_to_sympy(m).det(method="berkowitz"))


def _pivot(work: sympy.Matrix, column: int, n: int) -> int | None:
    """Row with the sparsest remaining row, then the fewest pivot terms."""
    best = None
    best_cost: tuple[int, int] = (0, 0)
    for r in range(column, n):
        entry = work[r, column]
        if entry == 0:
            continue
        fill = sum(1 for c in range(column, n) if work[r, c] != 0)
        cost = (fill, len(sympy.Add.make_args(entry)))
        if best is None or cost < best_cost:
            best, best_cost = r, cost
    return best


def invert(m: Sequence[Sequence[NormalForm]]) -> Matrix:
    """Gauss-Jordan inverse with every row operation brought to normal form.

    Raises:
        SingularMatrix: A column has no nonzero pivot.
    """
    n = len(m)
    work = _to_sympy(m).row_join(sympy.eye(n))
    for column in range(n):
        p = _pivot(work, column, n)
        if p is None:
            raise SingularMatrix(f"no pivot in column {column}")
        if p != column:
            work.row_swap(column, p)
        inverse_pivot = NormalForm(work[column, column]).inverse().value
        work[column, :] = (work[column, :] * inverse_pivot).applyfunc(canonical)
        for r in range(n):
            factor = work[r, column]
            if r == column or factor == 0:
                continue
            work[r, :] = (work[r, :] - factor * work[column, :]).applyfunc(canonical)
    return _from_sympy(work[:, n:])
