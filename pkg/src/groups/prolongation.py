"""Prolongation fibre action and the equivariance of the parallelism.

The prolongation element with parameter y shears ``tau`` and the gammas
by multiples of ``eta0`` and ``eta1, eta2``; its right action pulls the
tautological forms back by the inverse matrix.
"""

from __future__ import annotations

import structlog

from expr.canonical import as_normal
from forms import Basis, Form, MatrixForm, adjoint, substitute_coframe

from .fields import EXACT
from .matrices import PROLONGATION_SLOTS, matrix_of
from .models import GroupElement, GroupTag
from .parallelism import assemble_omega
from .structure import basis_coframing, se_basis

logger = structlog.getLogger(__name__)


def pstar_image(g: GroupElement) -> GroupElement:
    """The P* element formally matched with a prolongation element.

    Raises:
        ValueError: ``g`` is not a prolongation element.
    """
    if g.tag is not GroupTag.G4PROLONG:
        raise ValueError(f"expected a prolongation element, got {g.tag.value}")
    return GroupElement.pstar(y=-as_normal(g["y"]), epsilon=g.epsilon)


def prolong_pullback(y: object, basis: Basis | None = None) -> dict[str, Form]:
    """Substitution induced on the coframe by the prolongation element with parameter y.

    ``tau -> tau - y eta0``, ``gamma_j -> gamma_j - y eta_j`` (and conjugates),
    ``psi -> psi - 2 y tau + y^2 eta0``; every other form is fixed.
    """
    basis = basis or se_basis()
    forms = basis_coframing(basis)
    inverse = EXACT.inverse(matrix_of(GroupElement.prolongation(y), EXACT))
    images = dict(forms)
    for i, symbol in enumerate(PROLONGATION_SLOTS):
        image = Form.zero(basis, 1)
        for j, source in enumerate(PROLONGATION_SLOTS):
            if not inverse[i][j].is_zero:
                image = image + forms[source] * inverse[i][j]
        images[symbol] = image
    for symbol in ("gamma1", "gamma2"):
        images[f"{symbol}b"] = images[symbol].conjugate()
    value = as_normal(y)
    images["psi"] = forms["psi"] - forms["tau"] * (value * 2) + forms["eta0"] * (value * value)
    return images


def equivariance_residual(y: object, epsilon: int = 1, corrupt: bool = False) -> MatrixForm:
    """``R_g* omega - Ad(phi(g^-1)) omega`` for the prolongation element g with parameter y.

    Zero for every real y, numeric or symbolic.  ``corrupt`` translates by
    ``phi(g)`` instead, which leaves a residual for y != 0.
    """
    basis = se_basis()
    omega = assemble_omega(basis_coframing(basis), epsilon=epsilon)
    substitution = prolong_pullback(y, basis)
    pulled = omega.map(lambda entry: substitute_coframe(entry, substitution, target=basis))
    value = as_normal(y) if corrupt else -as_normal(y)
    translation = matrix_of(pstar_image(GroupElement.prolongation(value, epsilon)), EXACT)
    residual = pulled - adjoint(translation, omega)
    logger.debug("Computed equivariance residual", y=str(y), zero=residual.is_zero)
    return residual
