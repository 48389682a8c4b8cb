"""Structure equations of the prolonged bundle.

The coframe has fifteen one-forms: the semibasic ``eta0..eta3`` with the
conjugates of ``eta1..eta3``, the pseudoconnection forms ``tau, rho,
sigma, gamma1, gamma2`` with the conjugates of the gammas, and ``psi``.
``eta0, tau, rho, sigma, psi`` are real.

The Maurer-Cartan table is the flat model.  The final table adds the
torsion and curvature terms, whose coefficients are placeholder functions
(``p0`` is real).  ``d rho`` and ``d sigma`` are stored directly, so the
``i d rho`` and ``i d sigma`` expressions below are multiplied by ``-i``.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction

import structlog

import sympy

from expr.canonical import NormalForm, as_normal
from expr.models import Expr, Function
from forms import (
    AbstractCoframe,
    Basis,
    BasisOneForm,
    Form,
    MatrixForm,
    complex_pair,
    curvature,
    d_squared_residuals,
    reduce_mod_ideal,
    substitute_coframe,
)
from reports import ResidualReport

from .parallelism import OMEGA_SYMBOLS, assemble_omega, complete_coframing

logger = structlog.getLogger(__name__)

SE_SYMBOLS = (
    "eta0",
    "eta1",
    "eta2",
    "eta3",
    "eta1b",
    "eta2b",
    "eta3b",
    "tau",
    "rho",
    "sigma",
    "gamma1",
    "gamma2",
    "gamma1b",
    "gamma2b",
    "psi",
)
SEMIBASIC_SYMBOLS = SE_SYMBOLS[:7]
CONNECTION_SYMBOLS = SE_SYMBOLS[7:]

TORSION_NAMES = (
    "F1",
    "F2",
    "T31b",
    "T32b",
    "F31",
    "F32",
    "Q1_1b",
    "Q1_2b",
    "Q2_1b",
    "Q2_2b",
    "R",
    "S",
    "p0",
    "P1_01b",
    "P1_02b",
    "P1_20",
    "P1_21b",
    "P2_01b",
    "P2_02b",
    "P2_10",
    "P2_12b",
    "O1",
    "O2",
    "O3",
)
REAL_TORSION = ("p0",)
F_DERIVATIVE_NAMES = ("f1_1b", "f1_2", "f2_1", "f2_2b")

# constant coordinate of the prolongation fibre
FIBRE_COORDINATE = "y"

I = sympy.I
HALF_I = sympy.I / 2
THREE_HALVES_I = 3 * sympy.I / 2
HALF = Fraction(1, 2)
MINUS_TWO_I = -2 * sympy.I


def se_basis(name: str = "prolonged") -> Basis:
    """The fifteen-form coframe basis, ordered as ``SE_SYMBOLS``."""
    eta = [complex_pair(f"eta{j}", f"eta{j}b") for j in (1, 2, 3)]
    gamma = [complex_pair(f"gamma{j}", f"gamma{j}b") for j in (1, 2)]
    forms = (
        BasisOneForm.real("eta0"),
        *(pair[0] for pair in eta),
        *(pair[1] for pair in eta),
        BasisOneForm.real("tau"),
        BasisOneForm.real("rho"),
        BasisOneForm.real("sigma"),
        *(pair[0] for pair in gamma),
        *(pair[1] for pair in gamma),
        BasisOneForm.real("psi"),
    )
    return Basis(name, forms)


def basis_coframing(basis: Basis) -> dict[str, Form]:
    return {symbol: Form.one_form(basis, symbol) for symbol in basis.symbols}


def torsion_placeholders() -> dict[str, Expr]:
    return {name: Function(name, real=name in REAL_TORSION) for name in TORSION_NAMES}


def maurer_cartan_terms(
    coframing: Mapping[str, Form], epsilon: int = 1, corrupt: bool = False
) -> dict[str, Form]:
    """Right-hand sides of the flat structure equations for the ten coframing symbols.

    Args:
        coframing: One-forms for the ten symbols; conjugates are derived
        epsilon: Sign of the structure
        corrupt: Flip the sign of the ``(rho + sigma) ^ eta3`` term of ``d eta3``
    Returns:
        Two-forms keyed by symbol
    """
    w = complete_coframing(coframing)
    eta0, eta1, eta2, eta3 = w["eta0"], w["eta1"], w["eta2"], w["eta3"]
    eta1b, eta2b, eta3b = w["eta1b"], w["eta2b"], w["eta3b"]
    tau, rho, sigma, psi = w["tau"], w["rho"], w["sigma"], w["psi"]
    g1, g2, g1b, g2b = w["gamma1"], w["gamma2"], w["gamma1b"], w["gamma2b"]
    e = epsilon

    rotation = ((rho + sigma) ^ eta3) * I
    i_d_rho = (
        -((g1 ^ eta1b) * THREE_HALVES_I)
        - ((g1b ^ eta1) * THREE_HALVES_I)
        + (g2 ^ eta2b) * HALF_I * e
        + (g2b ^ eta2) * HALF_I * e
        + (eta3b ^ eta3) * e
    )
    i_d_sigma = (
        (g1 ^ eta1b) * HALF_I
        + (g1b ^ eta1) * HALF_I
        - (g2 ^ eta2b) * THREE_HALVES_I * e
        - (g2b ^ eta2) * THREE_HALVES_I * e
        + (eta3b ^ eta3) * e
    )
    return {
        "eta0": (tau ^ eta0) * -2 + (eta1 ^ eta1b) * I + (eta2 ^ eta2b) * I * e,
        "eta1": -(g1 ^ eta0) - ((tau + rho * I) ^ eta1) + (eta3 ^ eta2b) * e,
        "eta2": -(g2 ^ eta0) - ((tau + sigma * I) ^ eta2) + (eta3 ^ eta1b),
        "eta3": -((g2 ^ eta1) * I) - ((g1 ^ eta2) * I) + (rotation if corrupt else -rotation),
        "tau": (
            -(psi ^ eta0)
            + (g1 ^ eta1b) * HALF_I
            - (g1b ^ eta1) * HALF_I
            + (g2 ^ eta2b) * HALF_I * e
            - (g2b ^ eta2) * HALF_I * e
        ),
        "rho": i_d_rho * -I,
        "sigma": i_d_sigma * -I,
        "gamma1": -(psi ^ eta1) + ((tau - rho * I) ^ g1) - (g2b ^ eta3) * e,
        "gamma2": -(psi ^ eta2) + ((tau - sigma * I) ^ g2) - (g1b ^ eta3),
        "psi": (psi ^ tau) * -2 + (g1 ^ g1b) * I + (g2 ^ g2b) * I * e,
    }


def torsion_terms(
    coframing: Mapping[str, Form],
    coefficients: Mapping[str, object] | None = None,
    epsilon: int = 1,
) -> dict[str, Form]:
    """Torsion and curvature terms of the final structure equations.

    Args:
        coframing: One-forms for the ten symbols; conjugates are derived
        coefficients: Values of the torsion coefficients; missing ones stay placeholders
        epsilon: Sign of the structure
    Returns:
        Two-forms keyed by symbol; added to ``maurer_cartan_terms`` they give
        the final structure equations
    """
    k: dict[str, NormalForm] = {
        name: as_normal(value) for name, value in torsion_placeholders().items()
    }
    k.update({name: as_normal(value) for name, value in (coefficients or {}).items()})
    kb = {name: value.conjugate() for name, value in k.items()}
    w = complete_coframing(coframing)
    eta0, eta1, eta2, eta3 = w["eta0"], w["eta1"], w["eta2"], w["eta3"]
    eta1b, eta2b, eta3b = w["eta1b"], w["eta2b"], w["eta3b"]
    g1, g2, g1b, g2b = w["gamma1"], w["gamma2"], w["gamma1b"], w["gamma2b"]
    e = epsilon
    i = as_normal(I)
    f1, f2, f31, f32 = k["F1"], k["F2"], k["F31"], k["F32"]
    t31, t32 = k["T31b"], k["T32b"]
    q11, q12, q21, q22 = k["Q1_1b"], k["Q1_2b"], k["Q2_1b"], k["Q2_2b"]
    q11b, q12b, q21b, q22b = kb["Q1_1b"], kb["Q1_2b"], kb["Q2_1b"], kb["Q2_2b"]
    f1f2 = f1 * f2
    f1f2_bar = kb["F1"] * kb["F2"]
    f1_sq = f1 * kb["F1"]
    f2_sq = f2 * kb["F2"]

    i_d_rho = (
        (eta2b ^ eta1b) * f1f2
        + (eta1 ^ eta2) * f1f2_bar
        + (eta2b ^ eta2) * f1_sq
        - (eta1b ^ eta1) * f2_sq
        + ((eta1b * q11 - eta1 * q11b + eta2b * q12 - eta2 * q12b) ^ eta0)
        + (eta2b ^ eta1) * k["R"]
        + (eta1b ^ eta2) * kb["R"]
    )
    i_d_sigma = (
        (eta1b ^ eta2b) * f1f2
        + (eta2 ^ eta1) * f1f2_bar
        + (eta1b ^ eta1) * f2_sq
        - (eta2b ^ eta2) * f1_sq
        + ((eta1b * q21 - eta1 * q21b + eta2b * q22 - eta2 * q22b) ^ eta0)
        + (eta2b ^ eta1) * k["S"]
        + (eta1b ^ eta2) * kb["S"]
    )
    d_gamma1 = (
        (g1b ^ eta0) * (i * f32)
        + (g1b ^ eta2) * f1
        - (g2 ^ eta1b) * f1
        - (eta1b ^ eta2b) * t31 * e
        + (eta3b ^ eta0) * (i * t31) * e
        + (
            (
                eta1 * (i * k["p0"])
                + eta1b * k["P1_01b"]
                + eta2b * k["P1_02b"]
                + eta3 * (i * (q12b + q22b))
            )
            ^ eta0
        )
        + ((eta1b * q11 + eta2b * q12 - eta2 * q12b) ^ eta1)
        + ((eta0 * k["P1_20"] + eta1b * k["P1_21b"]) ^ eta2)
    )
    d_gamma2 = (
        (g2b ^ eta0) * (i * f31)
        - (g1 ^ eta2b) * f2
        + (g2b ^ eta1) * f2
        - (eta2b ^ eta1b) * t32
        + (eta3b ^ eta0) * (i * t32)
        + (
            (
                eta1b * k["P2_01b"]
                + eta2 * (i * k["p0"])
                + eta2b * k["P2_02b"]
                + eta3 * (i * (q11b + q21b))
            )
            ^ eta0
        )
        + ((eta1b * q21 - eta1 * q21b + eta2b * q22) ^ eta2)
        + ((eta0 * k["P2_10"] + eta2b * k["P2_12b"]) ^ eta1)
    )
    half_i = as_normal(HALF_I)
    o_part = (
        eta1 * k["O1"]
        + eta1b * kb["O1"]
        + eta2 * k["O2"]
        + eta2b * kb["O2"]
        + eta3 * k["O3"]
        + eta3b * kb["O3"]
    )
    d_psi = (
        (o_part ^ eta0)
        - (g1 ^ eta0) * ((q11b + q21b + i * kb["F31"] * f2) * HALF)
        - (g2 ^ eta0) * ((q22b + q12b + i * f1 * kb["F32"]) * HALF)
        - (g1b ^ eta0) * ((q11 + q21 - i * f31 * kb["F2"]) * HALF)
        - (g2b ^ eta0) * ((q22 + q12 - i * kb["F1"] * f32) * HALF)
        + (eta1b ^ eta2b) * (half_i * (k["P1_02b"] - e * k["P2_01b"]))
        + (eta2 ^ eta1) * (half_i * (kb["P1_02b"] - e * kb["P2_01b"]))
        + (eta2 ^ eta1b) * (half_i * (k["P1_20"] + e * kb["P2_10"]))
        + (eta1 ^ eta2b) * (half_i * (e * k["P2_10"] + kb["P1_20"]))
        + (eta3b ^ eta2) * ((q11 + q21) * HALF * e)
        + (eta3 ^ eta2b) * ((q11b + q21b) * HALF * e)
        + (eta3 ^ eta1b) * ((q12b + q22b) * HALF)
        + (eta3b ^ eta1) * ((q12 + q22) * HALF)
        + (g1 ^ eta1) * (kb["F32"] * HALF)
        + (g1b ^ eta1b) * (f32 * HALF)
        + (g2 ^ eta2) * (kb["F31"] * HALF * e)
        + (g2b ^ eta2b) * (f31 * HALF * e)
        + (eta3 ^ eta1) * (kb["T31b"] * HALF * e)
        + (eta3b ^ eta1b) * (t31 * HALF * e)
        + (eta3 ^ eta2) * (kb["T32b"] * HALF * e)
        + (eta3b ^ eta2b) * (t32 * HALF * e)
    )
    zero = Form.zero(eta0.basis, 2)
    return {
        "eta0": zero,
        "eta1": (eta1b ^ eta2) * f1,
        "eta2": (eta2b ^ eta1) * f2,
        "eta3": (
            (eta1b ^ eta0) * t31
            + (eta2b ^ eta0) * t32
            + (eta2b ^ eta1) * f31
            + (eta1b ^ eta2) * f32
        ),
        "tau": zero,
        "rho": i_d_rho * -I,
        "sigma": i_d_sigma * -I,
        "gamma1": d_gamma1,
        "gamma2": d_gamma2,
        "psi": d_psi,
    }


def _function_differentials(basis: Basis, epsilon: int) -> dict[Function, Form]:
    w = basis_coframing(basis)
    k = torsion_placeholders()
    f = {name: Function(name) for name in F_DERIVATIVE_NAMES}
    e = epsilon
    f1, f2 = k["F1"], k["F2"]
    d_f1 = (
        (w["tau"] + w["rho"] * MINUS_TWO_I + w["sigma"] * I) * f1
        - w["eta3"] * (f2.conjugate() * e)
        - w["eta2b"] * (k["F32"] * e)
        + w["eta1"] * k["R"].conjugate()
        + w["eta0"] * k["P1_21b"]
        + w["eta1b"] * f["f1_1b"]
        + w["eta2"] * f["f1_2"]
    )
    d_f2 = (
        (w["tau"] + w["rho"] * I + w["sigma"] * MINUS_TWO_I) * f2
        - w["eta3"] * f1.conjugate()
        - w["eta1b"] * k["F31"]
        + w["eta2"] * k["S"]
        + w["eta0"] * k["P2_12b"]
        + w["eta1"] * f["f2_1"]
        + w["eta2b"] * f["f2_2b"]
    )
    return {Function("F1"): d_f1, Function("F2"): d_f2}


def mc_coframe(epsilon: int = 1, corrupt: bool = False) -> AbstractCoframe:
    """Abstract coframe of the flat model."""
    basis = se_basis("maurer-cartan")
    equations = maurer_cartan_terms(basis_coframing(basis), epsilon, corrupt)
    return AbstractCoframe(basis, equations, constants=(FIBRE_COORDINATE,))


def se_coframe(epsilon: int = 1) -> AbstractCoframe:
    """Abstract coframe of the final structure equations, with d of F1 and F2 declared."""
    basis = se_basis()
    w = basis_coframing(basis)
    flat = maurer_cartan_terms(w, epsilon)
    extra = torsion_terms(w, epsilon=epsilon)
    equations = {symbol: flat[symbol] + extra[symbol] for symbol in OMEGA_SYMBOLS}
    return AbstractCoframe(
        basis,
        equations,
        functions=_function_differentials(basis, epsilon),
        constants=(FIBRE_COORDINATE,),
    )


def verify_maurer_cartan(epsilon: int = 1, corrupt: bool = False) -> ResidualReport:
    """Check ``d^2 = 0`` on the flat table and ``d omega + omega ^ omega = 0``.

    Args:
        epsilon: Sign of the structure
        corrupt: Verify a table with one flipped sign instead
    Returns:
        Report whose entries are the nonzero residuals
    """
    coframe = mc_coframe(epsilon, corrupt)
    residuals = {f"d2 {symbol}": form for symbol, form in d_squared_residuals(coframe).items()}
    omega = assemble_omega(basis_coframing(coframe.basis), epsilon=epsilon)
    curv = curvature(omega, coframe)
    for i in range(curv.dim):
        for j in range(curv.dim):
            residuals[f"curvature[{i}][{j}]"] = curv[i, j]
    report = ResidualReport.from_forms("maurer-cartan", residuals, epsilon)
    logger.info(
        "Verified Maurer-Cartan table",
        epsilon=epsilon,
        passed=report.passed,
        failures=len(report.entries),
    )
    return report


def expected_curvature(
    coefficients: Mapping[str, object] | None,
    coframing: Mapping[str, Form],
    epsilon: int = 1,
) -> MatrixForm:
    """Curvature matrix predicted by the final structure equations.

    The flat terms cancel against ``omega ^ omega``, so the curvature is the
    layout of the torsion terms.
    """
    return assemble_omega(torsion_terms(coframing, coefficients, epsilon), epsilon=epsilon)


def frobenius_residuals(epsilon: int = 1) -> dict[str, Form]:
    """Differentials of the Pfaffian system ``psi - 2 tau + eta0, gamma_j - eta_j`` mod itself.

    On the flat model every residual vanishes, so the system is Frobenius.
    """
    coframe = mc_coframe(epsilon)
    w = basis_coframing(coframe.basis)
    generators = {
        "psi-2tau+eta0": w["psi"] - w["tau"] * 2 + w["eta0"],
        "gamma1-eta1": w["gamma1"] - w["eta1"],
        "gamma2-eta2": w["gamma2"] - w["eta2"],
        "gamma1b-eta1b": w["gamma1b"] - w["eta1b"],
        "gamma2b-eta2b": w["gamma2b"] - w["eta2b"],
    }
    quotient = dict(
        w,
        psi=w["tau"] * 2 - w["eta0"],
        gamma1=w["eta1"],
        gamma2=w["eta2"],
        gamma1b=w["eta1b"],
        gamma2b=w["eta2b"],
    )
    return {
        name: substitute_coframe(coframe.d(form), quotient) for name, form in generators.items()
    }


def semibasic_defect(form: Form) -> Form:
    """Terms of ``form`` containing a pseudoconnection form."""
    return form - reduce_mod_ideal(form, CONNECTION_SYMBOLS)


def invariant_differentials(epsilon: int = 1) -> dict[str, Form]:
    """``d(|F1|^2 eta0)`` and ``d(|F2|^2 eta0)`` on the final structure equations."""
    coframe = se_coframe(epsilon)
    eta0 = Form.one_form(coframe.basis, "eta0")
    result = {}
    for name in ("F1", "F2"):
        f = Function(name)
        result[name] = coframe.d(eta0 * (f * f.conjugate()))
    return result
