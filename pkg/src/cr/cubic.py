"""Cubic form of a 0-adapted coframe, its isotropy class and its normalization.

A 0-adapted frame satisfies ``d eta0 = i l_jk eta_j ^ eta_kb mod eta0`` and
``d eta_j = u_jk eta3 ^ eta_kb mod {eta0, eta1, eta2}``.  With ``l = diag(1, eps)``
the matrix ``u`` reads ``[[U1, eps U], [U, U2]]``.  A G1 element with blocks
``a`` and ``b3`` moves it to ``u' = a u conj(a)^-1 / b3``.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence

import numpy as np
import structlog

from config import settings
from errors import (
    ConstraintViolation,
    DegenerateCubic,
    NormalizationError,
    ShapeViolation,
    UnsupportedIsotropy,
)
from expr import Domain, Expr, evaluate
from expr.canonical import I
from forms import FRAME_SYMBOLS, Form, FrameCoframe, coefficient_of, reduce_mod_ideal
from groups import GroupElement, NumericField, matrix_of

from .levi import vanishes
from .models import CubicData, IsotropyClass

logger = structlog.getLogger(__name__)

ExprMatrix = tuple[tuple[Expr, Expr], tuple[Expr, Expr]]

_PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))


def cubic_matrix(
    frame: FrameCoframe, domain: Domain | None = None
) -> tuple[ExprMatrix, ExprMatrix]:
    """Read the Levi matrix ``l`` and the cubic matrix ``u`` off a 0-adapted frame.

    Args:
        frame: Frame whose structure equations have the 0-adapted shape
        domain: Sampling domain for the shape checks; the chart domain by default
    Returns:
        ``(l, u)`` as 2x2 matrices of expressions
    Raises:
        ShapeViolation: A structure equation has terms outside the 0-adapted shape.
    """
    domain = domain or frame.chart.chart.domain
    basis = frame.basis
    eta = {symbol: Form.one_form(basis, symbol) for symbol in FRAME_SYMBOLS}

    d_eta0 = reduce_mod_ideal(frame.d(eta["eta0"]), ["eta0"])
    ell = [[None, None], [None, None]]
    expected = Form.zero(basis, 2)
    for j, k in _PAIRS:
        entry = coefficient_of(d_eta0, (f"eta{j}", f"eta{k}b")) * (-I)
        ell[j - 1][k - 1] = entry
        expected = expected + (eta[f"eta{j}"] ^ eta[f"eta{k}b"]) * (entry * I)
    if not vanishes(d_eta0 - expected, domain):
        raise ShapeViolation("d eta0 has terms outside the Levi span")

    u = [[None, None], [None, None]]
    for j in (1, 2):
        d_eta = reduce_mod_ideal(frame.d(eta[f"eta{j}"]), ["eta0", "eta1", "eta2"])
        expected = Form.zero(basis, 2)
        for k in (1, 2):
            entry = coefficient_of(d_eta, ("eta3", f"eta{k}b"))
            u[j - 1][k - 1] = entry
            expected = expected + (eta["eta3"] ^ eta[f"eta{k}b"]) * entry
        if not vanishes(d_eta - expected, domain):
            raise ShapeViolation(f"d eta{j} has terms outside the cubic span")
    logger.debug("Extracted cubic matrix", frame=basis.name)
    return tuple(map(tuple, ell)), tuple(map(tuple, u))


def _numeric(matrix: Sequence[Sequence[object]], point: Mapping[str, float] | None) -> np.ndarray:
    def value(entry: object) -> complex:
        if isinstance(entry, Expr):
            return evaluate(entry, point or {})
        return complex(entry)

    return np.array([[value(entry) for entry in row] for row in matrix], dtype=complex)


def _scale(*values: complex) -> float:
    return 1.0 + sum(abs(v) ** 2 for v in values)


def conformal_unitary_check(
    ell: Sequence[Sequence[object]],
    u: Sequence[Sequence[object]],
    point: Mapping[str, float] | None = None,
    tol: float | None = None,
) -> complex | None:
    """Factor ``lam`` with ``conj(u)^T l u = lam conj(l)``, or None when there is none.

    ``lam`` is solved from the off-diagonal entry when ``conj(l)`` has one, else from
    the first diagonal entry; the remaining entries are then checked.
    """
    tol = settings.TOL if tol is None else tol
    ell_v, u_v = _numeric(ell, point), _numeric(u, point)
    lhs = u_v.conj().T @ ell_v @ u_v
    target = ell_v.conj()
    if abs(target[0, 1]) > tol:
        lam = lhs[0, 1] / target[0, 1]
    elif abs(target[0, 0]) > tol:
        lam = lhs[0, 0] / target[0, 0]
    else:
        return None
    bound = tol * _scale(*lhs.ravel())
    if abs(lam) <= tol or np.max(np.abs(lhs - lam * target)) > bound:
        return None
    return complex(lam)


def cubic_data(
    ell: Sequence[Sequence[object]],
    u: Sequence[Sequence[object]],
    point: Mapping[str, float] | None = None,
    tol: float | None = None,
) -> CubicData:
    """Cubic triple at a point of a frame whose Levi matrix is ``diag(1, eps)``.

    Raises:
        ShapeViolation: ``l`` is not ``diag(1, +-1)`` or ``u`` lacks the ``[[U1, eps U], [U, U2]]``
            shape.
    """
    tol = settings.TOL if tol is None else tol
    ell_v, u_v = _numeric(ell, point), _numeric(u, point)
    epsilon = 1 if ell_v[1, 1].real > 0 else -1
    if np.max(np.abs(ell_v - np.diag([1, epsilon]))) > tol:
        raise ShapeViolation(f"Levi matrix is not normalized: {ell_v.tolist()}")
    if abs(u_v[0, 1] - epsilon * u_v[1, 0]) > tol * _scale(*u_v.ravel()):
        raise ShapeViolation(f"cubic matrix lacks the symmetric shape: {u_v.tolist()}")
    lam = conformal_unitary_check(ell_v, u_v, tol=tol)
    return CubicData(epsilon, u_v[0, 0], u_v[1, 0], u_v[1, 1], lam)


def isotropy_class(cd: CubicData, tol: float | None = None) -> IsotropyClass:
    """Isotropy class of a conformal-unitary cubic triple.

    Raises:
        ConstraintViolation: The triple violates ``|U1| = |U2|`` or ``U conj(U1) + conj(U) U2 = 0``.
    """
    tol = settings.TOL if tol is None else tol
    u1, u, u2 = cd.triple
    bound = tol * _scale(u1, u, u2)
    mixed = u * u1.conjugate() + u.conjugate() * u2
    if abs(abs(u1) ** 2 - abs(u2) ** 2) > bound or abs(mixed) > bound:
        raise ConstraintViolation(f"cubic triple {cd.triple} is not of conformal unitary type")
    if cd.epsilon == 1:
        if abs(u1) ** 2 + abs(u) ** 2 <= bound:
            return IsotropyClass.DEGENERATE
        return IsotropyClass.DEFINITE
    gap = abs(u) ** 2 - abs(u1) ** 2
    if abs(gap) <= bound:
        return IsotropyClass.DEGENERATE
    return IsotropyClass.SWITCHING if gap > 0 else IsotropyClass.PRESERVING


def _blocks(g: GroupElement) -> tuple[np.ndarray, complex]:
    m = matrix_of(g, NumericField())
    a = np.array([[m[1][1], m[1][2]], [m[2][1], m[2][2]]], dtype=complex)
    return a, complex(m[3][3])


def transport_cubic(cd: CubicData, g: GroupElement) -> CubicData:
    """Cubic triple of the frame moved by a G1 element."""
    a, b3 = _blocks(g)
    moved = a @ np.array(cd.matrix, dtype=complex) @ np.linalg.inv(a.conj()) / b3
    return CubicData(cd.epsilon, moved[0, 0], moved[1, 0], moved[1, 1])


def _isotropic_row(s: np.ndarray, epsilon: int, tol: float) -> np.ndarray:
    """Row r with ``r s r^T = 0`` and ``|r1|^2 + eps|r2|^2 = 1``."""
    a, b, c = s[0, 0], s[0, 1], s[1, 1]
    if abs(a) <= tol:
        return np.array([1, 0], dtype=complex)
    root = np.sqrt(complex(b * b - a * c))
    candidates = [np.array([(-b + sign * root) / a, 1], dtype=complex) for sign in (1, -1)]
    norms = [abs(r[0]) ** 2 + epsilon * abs(r[1]) ** 2 for r in candidates]
    best = int(np.argmax(norms))
    if norms[best] <= tol:
        raise NormalizationError("no isotropic row of positive length")
    return candidates[best] / np.sqrt(norms[best])


def normalize_cubic(cd: CubicData, tol: float | None = None) -> GroupElement:
    """G1 element moving the triple to ``(U1, U, U2) = (0, 1, 0)``.

    The first row of the a-block is an isotropic vector of the symmetric matrix
    ``u diag(1, eps)``, the second row its partner, and ``b3`` rescales ``U`` to 1.

    Args:
        cd: Definite or isotropy-switching triple
        tol: Tolerance of the recomputed triple; ``settings.TOL`` by default
    Returns:
        A G1 element
    Raises:
        UnsupportedIsotropy: The triple is isotropy-preserving.
        DegenerateCubic: The cubic form is degenerate.
        NormalizationError: The recomputed triple misses ``(0, 1, 0)``.
    """
    tol = settings.TOL if tol is None else tol
    kind = isotropy_class(cd, tol)
    if kind is IsotropyClass.PRESERVING:
        raise UnsupportedIsotropy("isotropy-preserving cubic forms are not normalized")
    if kind is IsotropyClass.DEGENERATE:
        raise DegenerateCubic(f"cubic triple {cd.triple} is degenerate")

    eps = cd.epsilon
    s = np.array(cd.matrix, dtype=complex) @ np.diag([1, eps])
    scale = _scale(*cd.triple)
    r1 = _isotropic_row(s, eps, tol * scale)
    r2 = np.array([-eps * r1[1].conjugate(), r1[0].conjugate()])
    if abs(r2 @ s @ r2) > tol * scale:
        raise NormalizationError("partner row is not isotropic")
    beta = complex(r1 @ s @ r2)
    a = ((complex(r1[0]), complex(r1[1])), (complex(r2[0]), complex(r2[1])))
    g = GroupElement.g1(1.0, a, (0, 0, 0), (0, 0, beta), eps)

    moved = transport_cubic(cd, g)
    if max(abs(moved.u1), abs(moved.u - 1), abs(moved.u2)) > tol * scale:
        raise NormalizationError(f"normalized triple is {moved.triple}")
    logger.debug("Normalized cubic form", triple=cd.triple, b3=beta)
    return g
