"""Pseudoconnection and psi read off the structure equations of an adapted frame.

On a fully adapted frame the semibasic equations are

    d eta0 = -2 tau ^ eta0 + i eta1 ^ eta1b + i eps eta2 ^ eta2b
    d eta1 = -gamma1 ^ eta0 - (tau + i rho) ^ eta1 + eps eta3 ^ eta2b + F1 eta1b ^ eta2
    d eta2 = -gamma2 ^ eta0 - (tau + i sigma) ^ eta2 + eta3 ^ eta1b + F2 eta2b ^ eta1
    d eta3 = -i gamma2 ^ eta1 - i gamma1 ^ eta2 - i (rho + sigma) ^ eta3 + torsion

and every pseudoconnection coefficient is a single coefficient of one of
them.  The eta0 components of ``tau``, ``rho`` and ``sigma`` are left at 0.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import replace
from fractions import Fraction

import structlog

from cr import vanishes
from errors import ExtractionError
from expr import Domain, Expr
from expr.canonical import I
from forms import Coframe, Form, coefficient_of

from .curvature import curvature_coefficients
from .models import AdaptationState, Level, Pseudoconnection

logger = structlog.getLogger(__name__)

HALF = Fraction(1, 2)
HALF_I = I * HALF
SEMIBASIC = ("eta0", "eta1", "eta2", "eta3", "eta1b", "eta2b", "eta3b")


def _combine(coframe: Coframe, coefficients: Mapping[str, object]) -> Form:
    form = Form.zero(coframe.basis, 1)
    for symbol, value in coefficients.items():
        form = form + coframe.one_form(symbol, value)
    return form


def _rotation(coframe: Coframe, residual: Form, target: str) -> Form:
    """Imaginary form ``A`` with ``residual = -A ^ target`` on the ``X ^ target`` monomials."""
    partner = f"{target}b"
    coefficients: dict[str, Expr] = {
        symbol: -coefficient_of(residual, (symbol, target))
        for symbol in SEMIBASIC
        if symbol not in ("eta0", target)
    }
    coefficients[target] = -coefficients[partner].conjugate()
    return _combine(coframe, coefficients)


def _gamma(coframe: Coframe, residual: Form, d_eta3: Form, other: str) -> Form:
    coefficients: dict[str, Expr] = {
        symbol: -coefficient_of(residual, (symbol, "eta0")) for symbol in SEMIBASIC[1:]
    }
    coefficients["eta0"] = coefficient_of(d_eta3, ("eta0", other)) * I
    return _combine(coframe, coefficients)


def extract(coframe: Coframe, epsilon: int = 1) -> Pseudoconnection:
    """Read the pseudoconnection off the structure equations of a seven-form frame.

    No consistency check is made; ``pseudoconnection`` checks the result.
    """
    eta = {symbol: coframe.one_form(symbol) for symbol in SEMIBASIC}
    d_eta0, d_eta1, d_eta2, d_eta3 = (coframe.d(eta[f"eta{j}"]) for j in range(4))
    tau = _combine(
        coframe,
        {symbol: coefficient_of(d_eta0, ("eta0", symbol)) * HALF for symbol in SEMIBASIC[1:]},
    )
    r1 = d_eta1 + (tau ^ eta["eta1"]) - (eta["eta3"] ^ eta["eta2b"]) * epsilon
    r2 = d_eta2 + (tau ^ eta["eta2"]) - (eta["eta3"] ^ eta["eta1b"])
    a = _rotation(coframe, r1, "eta1")
    b = _rotation(coframe, r2, "eta2")
    return Pseudoconnection(
        tau=tau,
        rho=a * -I,
        sigma=b * -I,
        gamma1=_gamma(coframe, r1, d_eta3, "eta2"),
        gamma2=_gamma(coframe, r2, d_eta3, "eta1"),
    )


def _is_flat_model(state: AdaptationState) -> bool:
    return "tau" in state.basis.symbols


def _basis_pseudoconnection(state: AdaptationState) -> Pseudoconnection:
    return Pseudoconnection(*(state.eta(s) for s in ("tau", "rho", "sigma", "gamma1", "gamma2")))


def _require_real(form: Form, label: str, domain: Domain | None) -> None:
    if not vanishes(form - form.conjugate(), domain):
        raise ExtractionError(f"{label} is not real-valued")


def pseudoconnection(state: AdaptationState) -> Pseudoconnection:
    """The forms ``tau, rho, sigma, gamma1, gamma2`` of a fully adapted state.

    On the abstract flat model these are its own basis forms.

    Raises:
        ExtractionError: The state is not fully adapted, or a form that must be
            real is not.
    """
    if _is_flat_model(state):
        return _basis_pseudoconnection(state)
    if state.level < Level.ADAPTED:
        raise ExtractionError(f"pseudoconnection needs level 4, got level {int(state.level)}")
    pc = extract(state.coframe, state.epsilon)
    domain = state.domain
    for label in ("tau", "rho", "sigma"):
        _require_real(getattr(pc, label), label, domain)
    logger.debug("Extracted pseudoconnection", frame=state.basis.name)
    return pc


def with_pseudoconnection(state: AdaptationState) -> AdaptationState:
    if state.pseudoconnection is not None:
        return state
    return replace(state, pseudoconnection=pseudoconnection(state))


def solve_psi(state: AdaptationState) -> Form:
    """``psi`` from the ``d tau`` equation and the ``eta0 ^ eta1`` coefficient of ``d gamma1``.

    The ``d tau`` equation leaves ``eta0 ^ psi``; its ``eta0`` component is minus the
    real part of the ``eta0 ^ eta1`` coefficient of the ``d gamma1`` remainder.

    Raises:
        ExtractionError: The ``d tau`` remainder is not a multiple of ``eta0``.
    """
    if _is_flat_model(state):
        return state.eta("psi")
    state = with_pseudoconnection(state)
    pc = state.pseudoconnection
    coframe, eps = state.coframe, state.epsilon
    eta = {symbol: state.eta(symbol) for symbol in SEMIBASIC}
    g1, g2 = pc.gamma1, pc.gamma2
    g1b, g2b = g1.conjugate(), g2.conjugate()

    pairing = (g1 ^ eta["eta1b"]) - (g1b ^ eta["eta1"])
    pairing = pairing + ((g2 ^ eta["eta2b"]) - (g2b ^ eta["eta2"])) * eps
    r_tau = coframe.d(pc.tau) - pairing * HALF_I
    semibasic = _combine(
        coframe, {symbol: coefficient_of(r_tau, ("eta0", symbol)) for symbol in SEMIBASIC[1:]}
    )
    if not vanishes(r_tau - (eta["eta0"] ^ semibasic), state.domain):
        raise ExtractionError("d tau remainder is not divisible by eta0")

    cc = curvature_coefficients(state)
    a = pc.rho * I
    remainder = (
        coframe.d(g1)
        - ((pc.tau - a) ^ g1)
        + (g2b ^ eta["eta3"]) * eps
        - (g1b ^ eta["eta0"]) * (cc.F32 * I)
        - (g1b ^ eta["eta2"]) * cc.F1
        + (g2 ^ eta["eta1b"]) * cc.F1
    )
    e = coefficient_of(remainder, ("eta0", "eta1"))
    psi0 = -(e + e.conjugate()) * HALF
    logger.debug("Solved psi", frame=state.basis.name)
    return semibasic + eta["eta0"] * psi0


def prolong(state: AdaptationState) -> AdaptationState:
    """Attach the pseudoconnection and psi to a fully adapted state."""
    state = with_pseudoconnection(state)
    if state.psi is not None:
        return state
    return replace(state, psi=solve_psi(state))
