"""Square matrices of forms: matrix wedge, adjoint action, curvature."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

from errors import DimensionMismatch
from expr.canonical import NormalForm, as_normal
from expr.linalg import invert

from .coframe import Coframe
from .form import Form, wedge
from .models import Basis


@dataclass(frozen=True)
class MatrixForm:
    basis: Basis
    degree: int
    entries: tuple[tuple[Form, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise DimensionMismatch("matrix of forms must be square")
            for entry in row:
                if entry.basis != self.basis:
                    raise DimensionMismatch("all entries must share one basis")
                if entry.degree != self.degree and not entry.is_zero:
                    raise DimensionMismatch(
                        f"entry of degree {entry.degree} in a degree {self.degree} matrix"
                    )

    @classmethod
    def build(cls, basis: Basis, degree: int, rows: Sequence[Sequence[Form | None]]) -> MatrixForm:
        """Matrix from rows where ``None`` stands for the zero form."""
        entries = tuple(
            tuple(Form.zero(basis, degree) if entry is None else entry for entry in row)
            for row in rows
        )
        return cls(basis, degree, entries)

    @classmethod
    def zero(cls, basis: Basis, dim: int, degree: int = 1) -> MatrixForm:
        return cls.build(basis, degree, [[None] * dim for _ in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, position: tuple[int, int]) -> Form:
        i, j = position
        return self.entries[i][j]

    @property
    def is_zero(self) -> bool:
        return all(entry.is_zero for row in self.entries for entry in row)

    def _check(self, other: MatrixForm) -> None:
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other: MatrixForm) -> MatrixForm:
        self._check(other)
        degree = self.degree if not self.is_zero else other.degree
        return MatrixForm.build(
            self.basis,
            degree,
            [
                [a + b for a, b in zip(ra, rb, strict=True)]
                for ra, rb in zip(self.entries, other.entries, strict=True)
            ],
        )

    def __neg__(self) -> MatrixForm:
        return self.map(lambda entry: -entry)

    def __sub__(self, other: MatrixForm) -> MatrixForm:
        return self + (-other)

    def map(self, fn: Callable[[Form], Form]) -> MatrixForm:
        rows = [[fn(entry) for entry in row] for row in self.entries]
        degree = next((e.degree for row in rows for e in row if not e.is_zero), self.degree)
        return MatrixForm.build(self.basis, degree, rows)

    def trace(self) -> Form:
        total = Form.zero(self.basis, self.degree)
        for i in range(self.dim):
            total = total + self.entries[i][i]
        return total


def matrix_wedge(m: MatrixForm, n: MatrixForm) -> MatrixForm:
    """``(M ^ N)_ij = sum_k M_ik ^ N_kj``.

    Raises:
        DimensionMismatch: The matrices have different sizes.
    """
    m._check(n)
    degree = m.degree + n.degree
    rows = []
    for i in range(m.dim):
        row = []
        for j in range(n.dim):
            acc = Form.zero(m.basis, degree)
            for k in range(m.dim):
                if m.entries[i][k].is_zero or n.entries[k][j].is_zero:
                    continue
                acc = acc + wedge(m.entries[i][k], n.entries[k][j])
            row.append(acc)
        rows.append(row)
    return MatrixForm.build(m.basis, degree, rows)


def scalar_left(g: Sequence[Sequence[object]], m: MatrixForm) -> MatrixForm:
    """Product of a constant matrix with a matrix of forms."""
    g = [[as_normal(x) for x in row] for row in g]
    rows = []
    for i in range(m.dim):
        row = []
        for j in range(m.dim):
            acc = Form.zero(m.basis, m.degree)
            for k in range(m.dim):
                if not g[i][k].is_zero and not m.entries[k][j].is_zero:
                    acc = acc + m.entries[k][j] * g[i][k]
            row.append(acc)
        rows.append(row)
    return MatrixForm.build(m.basis, m.degree, rows)


def scalar_right(m: MatrixForm, g: Sequence[Sequence[object]]) -> MatrixForm:
    g = [[as_normal(x) for x in row] for row in g]
    rows = []
    for i in range(m.dim):
        row = []
        for j in range(m.dim):
            acc = Form.zero(m.basis, m.degree)
            for k in range(m.dim):
                if not m.entries[i][k].is_zero and not g[k][j].is_zero:
                    acc = acc + m.entries[i][k] * g[k][j]
            row.append(acc)
        rows.append(row)
    return MatrixForm.build(m.basis, m.degree, rows)


def adjoint(
    g: Sequence[Sequence[object]],
    x: MatrixForm,
    inverse: Sequence[Sequence[NormalForm]] | None = None,
) -> MatrixForm:
    """``g X g^-1`` with scalars commuting past forms.

    Raises:
        SingularMatrix: ``g`` is not invertible.
    """
    g_nf = [[as_normal(v) for v in row] for row in g]
    if len(g_nf) != x.dim:
        raise DimensionMismatch(f"{len(g_nf)}x{len(g_nf)} matrix on dimension {x.dim}")
    if inverse is None:
        inverse = invert(g_nf)
    return scalar_right(scalar_left(g_nf, x), inverse)


def exterior_derivative(m: MatrixForm, coframe: Coframe) -> MatrixForm:
    return MatrixForm.build(
        m.basis, m.degree + 1, [[coframe.d(entry) for entry in row] for row in m.entries]
    )


def curvature(omega: MatrixForm, coframe: Coframe) -> MatrixForm:
    """``C = d omega + omega ^ omega`` entry-wise."""
    return exterior_derivative(omega, coframe) + matrix_wedge(omega, omega)


def bianchi_residual(
    omega: MatrixForm, coframe: Coframe, curv: MatrixForm | None = None
) -> MatrixForm:
    """``dC - (C ^ omega - omega ^ C)``; zero for any connection matrix."""
    curv = curvature(omega, coframe) if curv is None else curv
    commutator = matrix_wedge(curv, omega) - matrix_wedge(omega, curv)
    return exterior_derivative(curv, coframe) - commutator
