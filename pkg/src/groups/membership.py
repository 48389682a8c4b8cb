"""Membership predicates for the tower, the Hermitian frames and the algebra."""

from __future__ import annotations

from collections.abc import Sequence

from forms import Form, MatrixForm

from .fields import field_for
from .interfaces import Rows, ScalarField
from .matrices import field_of, g1_defects, matrix_of
from .models import GroupElement, GroupTag, HermitianForm

_G0_ZEROS = ((0, 1), (0, 2), (0, 3), (1, 3), (2, 3))


def _resolve(g: GroupElement | Rows, field: ScalarField | None) -> tuple[list, ScalarField]:
    if isinstance(g, GroupElement):
        f = field_of(g, field)
        return matrix_of(g, f), f
    f = field or field_for(g)
    return f.matrix(g), f


def _all_zero(values: Sequence, f: ScalarField) -> bool:
    return all(f.is_zero(value) for value in values)


def in_g0(g: GroupElement | Rows, field: ScalarField | None = None) -> bool:
    """Block shape of G0 with nonzero t and b3 and an invertible a-block."""
    m, f = _resolve(g, field)
    if not _all_zero([m[i][j] for i, j in _G0_ZEROS], f):
        return False
    det_a = m[1][1] * m[2][2] - m[1][2] * m[2][1]
    return not (f.is_zero(m[0][0]) or f.is_zero(m[3][3]) or f.is_zero(det_a))


def in_g1(
    g: GroupElement | Rows, epsilon: int | None = None, field: ScalarField | None = None
) -> bool:
    """Whether the a-block satisfies the G1 conditions for the sign epsilon.

    The conditions are ``t = |a11|^2 + eps|a21|^2 = eps|a12|^2 + |a22|^2`` and
    ``a11 conj(a12) + eps a21 conj(a22) = 0``.
    A G1-tagged element violating the conditions is rejected by ``matrix_of``,
    so it is tested as a G0 element here.
    """
    if isinstance(g, GroupElement) and g.tag is GroupTag.G1:
        g = GroupElement(GroupTag.G0, g.params, g.epsilon)
    if epsilon is None:
        epsilon = g.epsilon if isinstance(g, GroupElement) else 1
    m, f = _resolve(g, field)
    if not in_g0(m, f):
        return False
    a = ((m[1][1], m[1][2]), (m[2][1], m[2][2]))
    return _all_zero(g1_defects(m[0][0], a, epsilon, f), f)


def in_g2(g: GroupElement | Rows, field: ScalarField | None = None) -> bool:
    """Diagonal a-block with ``|a11|^2 = |a22|^2 = t`` and ``b3 = a11 a22 / t``."""
    m, f = _resolve(g, field)
    if not in_g0(m, f):
        return False
    t, a11, a22 = m[0][0], m[1][1], m[2][2]
    cj = f.conjugate
    return _all_zero(
        [m[1][2], m[2][1], a11 * cj(a11) - t, a22 * cj(a22) - t, m[3][3] - a11 * a22 / t], f
    )


def in_g3(g: GroupElement | Rows, field: ScalarField | None = None) -> bool:
    """G2 with ``b1 = i a11 c2 / t`` and ``b2 = i a22 c1 / t``."""
    m, f = _resolve(g, field)
    if not in_g2(m, f):
        return False
    i, t = f.coerce(1j), m[0][0]
    b1 = m[3][1] - i * m[1][1] * m[2][0] / t
    b2 = m[3][2] - i * m[2][2] * m[1][0] / t
    return _all_zero([b1, b2], f)


def in_g4(g: GroupElement | Rows, field: ScalarField | None = None) -> bool:
    """G3 with ``c3 = i c1 c2 / t``."""
    m, f = _resolve(g, field)
    if not in_g3(m, f):
        return False
    return f.is_zero(m[3][0] - f.coerce(1j) * m[1][0] * m[2][0] / m[0][0])


def is_hermitian_frame(
    m: GroupElement | Rows, h: HermitianForm, field: ScalarField | None = None
) -> bool:
    """Whether ``conj(m)^T h m = h`` and ``det m = 1``."""
    matrix, f = _resolve(m, field)
    n = len(matrix)
    adjoint = [[f.conjugate(matrix[k][i]) for k in range(n)] for i in range(n)]
    product = f.matmul(f.matmul(adjoint, h.frame_matrix), matrix)
    hm = h.frame_matrix
    residuals = [product[i][j] - hm[i][j] for i in range(n) for j in range(n)]
    return _all_zero(residuals, f) and f.is_zero(f.determinant(matrix) - 1)


def pstar_decompose(g: GroupElement) -> tuple[GroupElement, GroupElement, GroupElement]:
    """Split a P* element into its translation, unipotent and diagonal factors.

    ``matrix_of`` of the three factors multiplies back to ``matrix_of(g)``.
    """
    eps = g.epsilon
    translation = GroupElement.pstar(y=g["y"], epsilon=eps)
    unipotent = GroupElement.pstar(c1=g["c1"], c2=g["c2"], epsilon=eps)
    diagonal = GroupElement.pstar(t=g["t"], r=g["r"], s=g["s"], epsilon=eps)
    return translation, unipotent, diagonal


def _h_adjoint_forms(m: MatrixForm, h: HermitianForm) -> list[Form]:
    hp = h.algebra_matrix
    n = m.dim
    residuals = []
    for i in range(n):
        for j in range(n):
            total = Form.zero(m.basis, m.degree)
            for k in range(n):
                if hp[k][j]:
                    total = total + m[k, i].conjugate() * hp[k][j]
                if hp[i][k]:
                    total = total + m[k, j] * hp[i][k]
            residuals.append(total)
    return residuals


def in_su_star(m: MatrixForm | Rows, h: HermitianForm) -> bool:
    """Whether ``m`` is traceless and ``conj(m)^T h' + h' m = 0`` for the algebra form h'.

    Matrices of forms are checked structurally: conjugation follows the
    basis pairing and reality declarations.
    """
    if isinstance(m, MatrixForm):
        if m.dim != 4:
            return False
        if not m.trace().is_zero:
            return False
        return all(form.is_zero for form in _h_adjoint_forms(m, h))
    f = field_for(m)
    matrix = f.matrix(m)
    n = len(matrix)
    if n != 4 or not f.is_zero(sum((matrix[i][i] for i in range(n)), f.coerce(0))):
        return False
    hp = h.algebra_matrix
    left = f.matmul([[f.conjugate(matrix[k][i]) for k in range(n)] for i in range(n)], hp)
    right = f.matmul(hp, matrix)
    return _all_zero([left[i][j] + right[i][j] for i in range(n) for j in range(n)], f)
