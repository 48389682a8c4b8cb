"""Contact form, Levi matrix and Levi diagonalization of tube hypersurfaces.

On ``z4 + conj(z4) = f(x1, x2, x3)`` the coordinate ``z4`` is eliminated:
``dz4 = 1/2 f_j (dz_j + dzb_j) + i dv`` with ``v = Im z4``.
"""

from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction
from itertools import combinations

import numpy as np
import structlog

from errors import PreconditionError
from expr import Domain, Expr, is_zero, to_expr, wirtinger
from expr.canonical import I, NormalForm
from expr.identity import sample_values
from forms import ChartCoframe, Form, FrameCoframe, reduce_mod_ideal

from .models import DefiningFunction, LeviData

logger = structlog.getLogger(__name__)

HALF = Fraction(1, 2)
INDICES = (1, 2, 3)


def zero_test(domain: Domain) -> Callable[[NormalForm], bool]:
    """Coefficient zero test over ``domain`` for residual reports."""
    return lambda coeff: is_zero(to_expr(coeff), domain)


def vanishes(form: Form, domain: Domain) -> bool:
    test = zero_test(domain)
    return all(test(coeff) for _, coeff in form.terms)


def chart_coframe(df: DefiningFunction) -> ChartCoframe:
    return ChartCoframe(df.chart)


def first_derivatives(df: DefiningFunction) -> tuple[Expr, Expr, Expr]:
    """``f_j``, the holomorphic derivatives of f (equal to the real partials)."""
    return tuple(wirtinger(df.expr, f"z{j}", df.chart) for j in INDICES)


def levi_matrix(df: DefiningFunction) -> tuple[tuple[Expr, ...], ...]:
    """Second derivatives ``f_jk`` of the defining function."""
    first = first_derivatives(df)
    return tuple(tuple(wirtinger(fj, f"z{k}", df.chart) for k in INDICES) for fj in first)


def dz4_form(df: DefiningFunction, coframe: ChartCoframe | None = None) -> Form:
    """``dz4`` restricted to the hypersurface."""
    coframe = coframe or chart_coframe(df)
    form = coframe.one_form("dv", I)
    for j, fj in zip(INDICES, first_derivatives(df), strict=True):
        half = fj * HALF
        form = form + coframe.one_form(f"dz{j}", half) + coframe.one_form(f"dz{j}b", half)
    return form


def contact_form(df: DefiningFunction, coframe: ChartCoframe | None = None) -> Form:
    """``theta0 = -i f_j dz_j + i dz4``, a real one-form on the hypersurface.

    Args:
        df: Defining function
        coframe: Coordinate coframe; built from the chart of ``df`` when omitted
    Returns:
        The contact form in the coordinate coframe
    """
    coframe = coframe or chart_coframe(df)
    form = dz4_form(df, coframe) * I
    for j, fj in zip(INDICES, first_derivatives(df), strict=True):
        form = form - coframe.one_form(f"dz{j}", fj * I)
    return form


def levi_data(df: DefiningFunction) -> LeviData:
    return LeviData(levi_matrix(df), contact_form(df))


def _require_f12(df: DefiningFunction, matrix) -> None:
    if not is_zero(matrix[0][1], df.chart.domain):
        raise PreconditionError("f12 = 0", f"f12 = {matrix[0][1]} does not vanish")


def degeneracy_residual(df: DefiningFunction) -> Expr:
    """``f11 f22 f33 - f11 f23^2 - f22 f13^2``; identically zero iff the Levi form degenerates.

    Raises:
        PreconditionError: ``f12`` does not vanish.
    """
    m = levi_matrix(df)
    _require_f12(df, m)
    return m[0][0] * m[1][1] * m[2][2] - m[0][0] * m[1][2] ** 2 - m[1][1] * m[0][2] ** 2


def _minor(m, rows: tuple[int, ...], cols: tuple[int, ...]) -> Expr:
    if len(rows) == 1:
        return m[rows[0]][cols[0]]
    (r0, r1), (c0, c1) = rows, cols
    return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]


def levi_rank(df: DefiningFunction) -> int:
    """Generic rank of the Levi matrix, decided by zero tests of its minors."""
    m = levi_matrix(df)
    domain = df.chart.domain
    det = (
        m[0][0] * _minor(m, (1, 2), (1, 2))
        - m[0][1] * _minor(m, (1, 2), (0, 2))
        + m[0][2] * _minor(m, (1, 2), (0, 1))
    )
    if not is_zero(det, domain):
        return 3
    for size in (2, 1):
        for rows in combinations(range(3), size):
            for cols in combinations(range(3), size):
                if not is_zero(_minor(m, rows, cols), domain):
                    return size
    return 0


def _positive(e: Expr, domain: Domain) -> bool:
    if e.normal.is_zero:
        return False
    values = sample_values(e, domain)
    return bool(np.all(values.real > 0) and np.all(np.abs(values.imag) < 1e-12))


def levi_residual(frame: FrameCoframe) -> Form:
    """``d eta0 - i eta1^eta1b - i eta2^eta2b`` modulo ``eta0``."""
    basis = frame.basis
    eta = {s: Form.one_form(basis, s) for s in ("eta1", "eta1b", "eta2", "eta2b")}
    target = (eta["eta1"] ^ eta["eta1b"]) + (eta["eta2"] ^ eta["eta2b"])
    d_eta0 = frame.d(Form.one_form(basis, "eta0"))
    return reduce_mod_ideal(d_eta0 - target * I, ["eta0"])


def diagonalizing_coframe(
    df: DefiningFunction, signs: tuple[int, int] = (-1, -1)
) -> tuple[Form, Form, Form, Form]:
    """Coframe ``theta0..theta3`` in which the Levi form is ``diag(1, 1, 0)``.

    ``theta_j = sqrt(f_jj) dz_j + s_j sqrt(f33 / 2) dz3`` for j = 1, 2 and
    ``theta3 = dz3``; theta0 is the contact form.

    Args:
        df: Defining function with ``f12 = 0`` and positive diagonal
        signs: Signs ``s_1, s_2`` in front of the ``dz3`` terms
    Returns:
        The four forms in the coordinate coframe
    Raises:
        PreconditionError: A precondition fails; ``condition`` names it.
    """
    if any(s not in (1, -1) for s in signs):
        raise PreconditionError("signs", f"signs must be +1 or -1, got {signs}")
    m = levi_matrix(df)
    domain = df.chart.domain
    _require_f12(df, m)
    for j in range(3):
        if not _positive(m[j][j], domain):
            raise PreconditionError(f"f{j + 1}{j + 1} > 0", f"f{j + 1}{j + 1} = {m[j][j]}")
    for j in (0, 1):
        identity = m[j][2] ** 2 - m[j][j] * m[2][2] * HALF
        if not is_zero(identity, domain):
            raise PreconditionError(
                f"f{j + 1}3^2 = f{j + 1}{j + 1} f33 / 2", f"residual {identity} does not vanish"
            )
    coframe = chart_coframe(df)
    tail = (m[2][2] * HALF) ** HALF
    theta = [contact_form(df, coframe)]
    for j, sign in zip((1, 2), signs, strict=True):
        head = m[j - 1][j - 1] ** HALF
        theta.append(coframe.one_form(f"dz{j}", head) + coframe.one_form("dz3", tail * sign))
    theta.append(coframe.one_form("dz3"))
    frame = FrameCoframe.from_forms(coframe, theta, "levi")
    if not vanishes(levi_residual(frame), domain):
        logger.info("Levi form not diagonal", function=str(df), signs=signs)
        raise PreconditionError("levi-diagonal", f"signs {signs} do not diagonalize the Levi form")
    logger.debug("Diagonalized Levi form", function=str(df), signs=signs)
    return tuple(theta)
