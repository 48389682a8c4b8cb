"""Curvature of the assembled parallelism and the structure-equation checks on a section."""

from __future__ import annotations

import structlog

from cr import vanishes, zero_test
from errors import ExtractionError, InconsistentCurvature, ResidualOutsideSpan
from expr import Domain, is_zero
from forms import Form, MatrixForm, coefficient_of, curvature
from groups import (
    OMEGA_SYMBOLS,
    assemble_omega,
    expected_curvature,
    maurer_cartan_terms,
    mc_coframe,
    torsion_terms,
)
from reports import ResidualReport

from .models import (
    UNDETERMINED_NAMES,
    AdaptationState,
    CurvatureCoefficients,
    Level,
    Pseudoconnection,
)

logger = structlog.getLogger(__name__)

# slots of omega holding eta0, eta1, eta2, eta3 and the conjugates; psi never reaches them
SEMIBASIC_SLOTS = {
    "eta0": (3, 0),
    "eta1": (2, 0),
    "eta2": (3, 1),
    "eta3": (2, 1),
    "eta1b": (3, 2),
    "eta2b": (1, 0),
    "eta3b": (1, 2),
}

# equations whose residual on a section must vanish outright
EXACT_EQUATIONS = ("eta0", "eta1", "eta2", "eta3", "tau")


def flat_model_state(epsilon: int = 1) -> AdaptationState:
    """The abstract Maurer-Cartan coframe as a fully adapted, prolonged state."""
    coframe = mc_coframe(epsilon)
    forms = {symbol: Form.one_form(coframe.basis, symbol) for symbol in OMEGA_SYMBOLS}
    pc = Pseudoconnection(*(forms[s] for s in ("tau", "rho", "sigma", "gamma1", "gamma2")))
    return AdaptationState(
        coframe, Level.ADAPTED, epsilon, pseudoconnection=pc, psi=forms["psi"]
    )


def curvature_matrix(state: AdaptationState) -> MatrixForm:
    """``C = d omega + omega ^ omega`` of the state's parallelism."""
    omega = assemble_omega(state.coframing(), epsilon=state.epsilon)
    return curvature(omega, state.coframe)


def _read(matrix: MatrixForm) -> CurvatureCoefficients:
    c_eta1, c_eta2, c_eta3 = (matrix[SEMIBASIC_SLOTS[s]] for s in ("eta1", "eta2", "eta3"))
    return CurvatureCoefficients(
        F1=coefficient_of(c_eta1, ("eta1b", "eta2")),
        F2=coefficient_of(c_eta2, ("eta2b", "eta1")),
        T31b=coefficient_of(c_eta3, ("eta1b", "eta0")),
        T32b=coefficient_of(c_eta3, ("eta2b", "eta0")),
        F31=coefficient_of(c_eta3, ("eta2b", "eta1")),
        F32=coefficient_of(c_eta3, ("eta1b", "eta2")),
    )


def curvature_residuals(
    state: AdaptationState, cc: CurvatureCoefficients, matrix: MatrixForm | None = None
) -> dict[str, Form]:
    """Recomputed curvature minus the curvature built from ``cc``, on the semibasic slots."""
    matrix = matrix if matrix is not None else curvature_matrix(state)
    expected = expected_curvature(cc.determined, state.coframing(), state.epsilon)
    return {
        f"C[{i}][{j}] ({symbol})": matrix[i, j] - expected[i, j]
        for symbol, (i, j) in SEMIBASIC_SLOTS.items()
    }


def curvature_coefficients(state: AdaptationState) -> CurvatureCoefficients:
    """Determined curvature coefficients read off ``C = d omega + omega ^ omega``.

    The undetermined torsion functions are left unset.

    Raises:
        ExtractionError: The pseudoconnection has not been computed.
        InconsistentCurvature: The ``eta0`` slot does not vanish, or a semibasic slot
            carries terms outside the expected layout.
    """
    matrix = curvature_matrix(state)
    domain = state.domain
    if not vanishes(matrix[SEMIBASIC_SLOTS["eta0"]], domain):
        raise InconsistentCurvature("the eta0 slot of the curvature does not vanish")
    cc = _read(matrix)
    for label, residual in curvature_residuals(state, cc, matrix).items():
        if not vanishes(residual, domain):
            raise InconsistentCurvature(f"{label} has terms outside the curvature layout")
    logger.debug("Read curvature coefficients", frame=state.basis.name)
    return cc


def is_flat(cc: CurvatureCoefficients, domain: Domain | None = None) -> bool:
    """Whether both fundamental coefficients vanish identically.

    Raises:
        InconsistentCurvature: Exactly one of F1, F2 vanishes.
    """
    f1_zero, f2_zero = is_zero(cc.F1, domain), is_zero(cc.F2, domain)
    if f1_zero != f2_zero:
        raise InconsistentCurvature(
            f"F1 and F2 must vanish together: F1 = {cc.F1}, F2 = {cc.F2}"
        )
    return f1_zero


def fundamental_invariants(cc: CurvatureCoefficients, state: AdaptationState) -> tuple[Form, Form]:
    """``|F1|^2 eta0`` and ``|F2|^2 eta0``."""
    eta0 = state.eta("eta0")
    return eta0 * (cc.F1 * cc.F1.conjugate()), eta0 * (cc.F2 * cc.F2.conjugate())


def _outside(form: Form, span: set) -> Form:
    return Form(form.basis, form.degree, tuple((k, v) for k, v in form.terms if k not in span))


def se_residuals(state: AdaptationState, cc: CurvatureCoefficients) -> dict[str, Form]:
    """Residuals of the final structure equations on the section.

    Each residual is ``dX`` minus the flat and torsion terms with the unsolved torsion
    functions set to 0.  Outside ``EXACT_EQUATIONS`` the monomials those functions
    could fill are dropped.
    """
    forms = state.coframing()
    flat = maurer_cartan_terms(forms, state.epsilon)
    values = cc.values()
    zeroed = torsion_terms(
        forms, {**{name: 0 for name in UNDETERMINED_NAMES}, **values}, state.epsilon
    )
    open_terms = torsion_terms(forms, values, state.epsilon)
    residuals = {}
    for symbol in OMEGA_SYMBOLS:
        residual = state.coframe.d(forms[symbol]) - flat[symbol] - zeroed[symbol]
        if symbol not in EXACT_EQUATIONS:
            span = {indices for indices, _ in (open_terms[symbol] - zeroed[symbol]).terms}
            residual = _outside(residual, span)
        residuals[symbol] = residual
    return residuals


def verify_se_pullback(
    state: AdaptationState,
    cc: CurvatureCoefficients,
    strict: bool = False,
    residuals: dict[str, Form] | None = None,
) -> ResidualReport:
    """Check the final structure equations on a prolonged state.

    Args:
        state: State with pseudoconnection and psi
        cc: Curvature coefficients of the state
        strict: Raise instead of reporting a residual outside its allowed span
        residuals: Output of ``se_residuals`` when already computed
    Returns:
        Report whose entries are the surviving residual terms
    Raises:
        ExtractionError: psi has not been solved.
        ResidualOutsideSpan: ``strict`` and an equation outside ``EXACT_EQUATIONS`` fails.
    """
    if not state.prolonged:
        raise ExtractionError("psi has not been solved")
    residuals = residuals if residuals is not None else se_residuals(state, cc)
    labelled = {f"d {symbol}": form for symbol, form in residuals.items()}
    report = ResidualReport.from_forms(
        "structure-equations", labelled, state.epsilon, vanishes=zero_test(state.domain)
    )
    outside = [e.name for e in report.entries if e.name.split()[1] not in EXACT_EQUATIONS]
    if strict and outside:
        raise ResidualOutsideSpan(f"residuals outside the torsion span: {', '.join(outside)}")
    logger.info(
        "Verified structure equations",
        frame=state.basis.name,
        passed=report.passed,
        failures=len(report.entries),
    )
    return report
