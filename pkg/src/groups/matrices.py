"""Matrix realizations of the group elements.

The 4x4 realizations act on the frame ``(eta0, eta1, eta2, eta3)``; the
prolongation element is 9x9 and acts on
``(eta0, eta1, eta2, eta3, rho, sigma, tau, gamma1, gamma2)``.
"""

from __future__ import annotations

from fractions import Fraction

from errors import ConstraintViolation
from expr.canonical import ZERO, NormalForm

from .fields import EXACT, field_for
from .interfaces import Rows, Scalar, ScalarField
from .models import GroupElement, GroupTag

PROLONGATION_SLOTS = ("eta0", "eta1", "eta2", "eta3", "rho", "sigma", "tau", "gamma1", "gamma2")

# (row, column) of the y entries: tau <- eta0, gamma1 <- eta1, gamma2 <- eta2
_PROLONGATION_ENTRIES = ((6, 0), (7, 1), (8, 2))


def _flatten(params: dict) -> list[object]:
    values = []
    for value in params.values():
        if isinstance(value, list | tuple):
            values.extend(v for row in value for v in row)
        else:
            values.append(value)
    return values


def field_of(g: GroupElement, field: ScalarField | None = None) -> ScalarField:
    return field or field_for(_flatten(dict(g.params)))


def g1_defects(t: Scalar, a: Rows, epsilon: int, field: ScalarField) -> list[Scalar]:
    """Residuals of the G1 conditions ``a* diag(1, eps) a = t diag(1, eps)``.

    Returns:
        ``[|a11|^2 + eps|a21|^2 - t, eps|a12|^2 + |a22|^2 - t, a11 conj(a12) + eps a21 conj(a22)]``
    """
    (a11, a12), (a21, a22) = a
    cj = field.conjugate
    return [
        a11 * cj(a11) + epsilon * (a21 * cj(a21)) - t,
        epsilon * (a12 * cj(a12)) + a22 * cj(a22) - t,
        a11 * cj(a12) + epsilon * (a21 * cj(a22)),
    ]


def _g0_rows(g: GroupElement, f: ScalarField) -> list[list[Scalar]]:
    p = {name: f.coerce(g[name]) for name in ("t", "c1", "c2", "c3", "b1", "b2", "b3")}
    (a11, a12), (a21, a22) = ((f.coerce(v) for v in row) for row in g["a"])
    if g.tag is GroupTag.G1:
        defects = g1_defects(p["t"], ((a11, a12), (a21, a22)), g.epsilon, f)
        if not all(f.is_zero(defect) for defect in defects):
            raise ConstraintViolation("parameters violate the G1 conditions")
    zero = f.coerce(0)
    return [
        [p["t"], zero, zero, zero],
        [p["c1"], a11, a12, zero],
        [p["c2"], a21, a22, zero],
        [p["c3"], p["b1"], p["b2"], p["b3"]],
    ]


def _tower_rows(g: GroupElement, f: ScalarField) -> list[list[Scalar]]:
    t = f.coerce(g["t"])
    c1, c2 = f.coerce(g["c1"]), f.coerce(g["c2"])
    e_r, e_s = f.exp_i(g["r"]), f.exp_i(g["s"])
    i = f.coerce(1j)
    if g.tag is GroupTag.G2:
        b1, b2 = f.coerce(g["b1"]), f.coerce(g["b2"])
    else:
        b1, b2 = i * e_r * c2 / t, i * e_s * c1 / t
    c3 = i * c1 * c2 / (t * t) if g.tag is GroupTag.G4 else f.coerce(g["c3"])
    zero = f.coerce(0)
    return [
        [t * t, zero, zero, zero],
        [c1, t * e_r, zero, zero],
        [c2, zero, t * e_s, zero],
        [c3, b1, b2, e_r * e_s],
    ]


def _pstar_rows(g: GroupElement, f: ScalarField) -> list[list[Scalar]]:
    t, y = f.coerce(g["t"]), f.coerce(g["y"])
    c1, c2 = f.coerce(g["c1"]), f.coerce(g["c2"])
    r, s = f.coerce(g["r"]), f.coerce(g["s"])
    quarter = Fraction(1, 4)
    e0 = f.exp_i((s - r) * quarter)
    e2 = f.exp_i(-(r + 3 * s) * quarter)
    e3 = f.exp_i((3 * r + s) * quarter)
    i = f.coerce(1j)
    cj = f.conjugate
    shift = (c1 * cj(c1) - g.epsilon * (c2 * cj(c2))) * Fraction(1, 2)
    zero = f.coerce(0)
    return [
        [e0 / t, c2 * e2, -cj(c1) * e3, t * e0 * (i * y - shift)],
        [zero, e2, zero, g.epsilon * cj(c2) * t * e0],
        [zero, zero, e3, c1 * t * e0],
        [zero, zero, zero, t * e0],
    ]


def _prolongation_rows(g: GroupElement, f: ScalarField) -> list[list[Scalar]]:
    y = f.coerce(g["y"])
    size = len(PROLONGATION_SLOTS)
    rows = [[f.coerce(1 if i == j else 0) for j in range(size)] for i in range(size)]
    for i, j in _PROLONGATION_ENTRIES:
        rows[i][j] = y
    return rows


_BUILDERS = {
    GroupTag.G0: _g0_rows,
    GroupTag.G1: _g0_rows,
    GroupTag.G2: _tower_rows,
    GroupTag.G3: _tower_rows,
    GroupTag.G4: _tower_rows,
    GroupTag.PSTAR: _pstar_rows,
    GroupTag.G4PROLONG: _prolongation_rows,
}


def matrix_of(g: GroupElement, field: ScalarField | None = None):
    """Matrix realization of a group element.

    Args:
        g: Group element
        field: Arithmetic to use; inferred from the parameter types when omitted
    Returns:
        4x4 matrix, or 9x9 for a prolongation element
    Raises:
        ConstraintViolation: A G1-tagged element violates the G1 conditions
    """
    f = field_of(g, field)
    return f.matrix(_BUILDERS[g.tag](g, f))


def compose(g: GroupElement, h: GroupElement, field: ScalarField | None = None):
    """Matrix of the product ``g h``."""
    f = field or field_for([*_flatten(dict(g.params)), *_flatten(dict(h.params))])
    return f.matmul(matrix_of(g, f), matrix_of(h, f))


def frame_action(g: GroupElement) -> list[list[NormalForm]]:
    """Exact 7x7 action of a tower element on ``(eta0, eta1..eta3, eta1b..eta3b)``.

    Rows for the conjugate forms are the conjugated rows of the 4x4 matrix.
    """
    if g.tag in (GroupTag.PSTAR, GroupTag.G4PROLONG):
        raise ValueError(f"{g.tag.value} does not act on the frame")
    m = matrix_of(g, EXACT)
    rows = [[ZERO] * 7 for _ in range(7)]
    for j in range(4):
        for k in range(4):
            rows[j][k] = m[j][k]
    for j in range(1, 4):
        rows[j + 3][0] = m[j][0].conjugate()
        for k in range(1, 4):
            rows[j + 3][k + 3] = m[j][k].conjugate()
    return rows
