"""Adaptation chain for tube hypersurfaces with a definite cubic form.

Each stage moves the frame by one group element and checks the new
normal form.  The Levi and cubic stages use fixed moves; the constants of
the shift stages are solved from coefficient-killing equations.  Those
equations are affine in ``c`` and ``conj(c)``, so probing at ``c = 0, 1, i``
determines them exactly.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import replace
from fractions import Fraction

import structlog

from cr import (
    DefiningFunction,
    cubic_matrix,
    degeneracy_residual,
    levi_frame,
    zero_test,
)
from errors import ChainError, PreconditionError
from expr import Domain, Expr, is_zero
from expr.canonical import I
from forms import Coframe, Form, coefficient_of, reduce_mod_ideal
from groups import GroupElement, frame_action, maurer_cartan_terms
from reports import ResidualReport

from .connection import extract
from .models import AdaptationState, Level

logger = structlog.getLogger(__name__)

HALF = Fraction(1, 2)
CUBIC_MOVE = ((1, I), (1, -I))

# torsion monomials the fully adapted equations may carry
ALLOWED_TORSION = {
    "eta0": (),
    "eta1": (("eta1b", "eta2"),),
    "eta2": (("eta2b", "eta1"),),
    "eta3": (
        ("eta3", "eta0"),
        ("eta1", "eta2"),
        ("eta1b", "eta0"),
        ("eta2b", "eta0"),
        ("eta2b", "eta1"),
        ("eta1b", "eta2"),
    ),
}


def _moved(state: AdaptationState, g: GroupElement, level: Level) -> AdaptationState:
    frame = state.coframe.transform(frame_action(g), f"level{int(level)}")
    return replace(
        state,
        coframe=frame,
        level=level,
        applied=(*state.applied, g),
        pseudoconnection=None,
        psi=None,
    )


def _coefficient(coframe: Coframe, symbol: str, key: tuple[str, str], ideal=("eta0",)) -> Expr:
    d_eta = reduce_mod_ideal(coframe.d(coframe.one_form(symbol)), ideal)
    return coefficient_of(d_eta, key)


def _solve_affine(
    names: Sequence[str],
    measure: Callable[[object], Sequence[Expr]],
    domain: Domain | None,
) -> tuple[Expr, ...]:
    """Constants ``c`` with ``q(c) = q0 + alpha c + beta conj(c) = 0`` for each measured ``q``.

    Raises:
        ChainError: ``|alpha| = |beta|`` for one of the equations.
    """
    base, one, imaginary = measure(0), measure(1), measure(I)
    solved = []
    for name, q0, q1, qi in zip(names, base, one, imaginary, strict=True):
        alpha = ((q1 - q0) - (qi - q0) * I) * HALF
        beta = ((q1 - q0) + (qi - q0) * I) * HALF
        det = alpha * alpha.conjugate() - beta * beta.conjugate()
        if is_zero(det, domain):
            raise ChainError(name, "the coefficient equation does not determine the constant")
        value = (beta * q0.conjugate() - alpha.conjugate() * q0) / det
        logger.info("Solved chain constant", name=name, value=str(value))
        solved.append(value)
    return tuple(solved)


def _require_killed(name: str, coefficients: dict[str, Expr], domain: Domain | None) -> None:
    survivors = [label for label, value in coefficients.items() if not is_zero(value, domain)]
    if survivors:
        raise ChainError(name, f"coefficients survive the move: {', '.join(survivors)}")


def adapt_levi(df: DefiningFunction) -> AdaptationState:
    """Level-1 frame: contact form plus the Levi-diagonalizing forms.

    Raises:
        PreconditionError: The Levi form does not degenerate, or the frame cannot be built.
    """
    if not is_zero(degeneracy_residual(df), df.chart.domain):
        raise PreconditionError("det = 0", f"the Levi form of {df} is nondegenerate")
    frame = levi_frame(df)
    logger.info("Built Levi frame", function=str(df))
    return AdaptationState(frame, Level.LEVI, 1, df)


def adapt_cubic(state: AdaptationState) -> AdaptationState:
    """Level-2 frame: the G1 move taking ``u = phi I`` to ``[[0, 1], [1, 0]]``.

    Raises:
        ChainError: ``u`` is not a nonzero multiple of the identity, or eps is -1.
    """
    if state.epsilon != 1:
        raise ChainError("epsilon", "the cubic move is defined for eps = +1")
    domain = state.domain
    _, u = cubic_matrix(state.coframe, domain)
    if not (is_zero(u[0][1], domain) and is_zero(u[1][0], domain)):
        raise ChainError("b3", "cubic matrix is not diagonal")
    if not is_zero(u[0][0] - u[1][1], domain):
        raise ChainError("b3", "cubic matrix is not a multiple of the identity")
    phi = u[0][0]
    if is_zero(phi, domain):
        raise ChainError("b3", "cubic form vanishes")
    g = GroupElement.g1(2, CUBIC_MOVE, (0, 0, 0), (0, 0, phi), state.epsilon)
    moved = replace(_moved(state, g, Level.CUBIC), constants={**state.constants, "b3": phi})
    logger.info("Normalized cubic form", b3=str(phi))
    return moved


def _shift_coefficients(coframe: Coframe) -> tuple[Expr, Expr]:
    return (
        _coefficient(coframe, "eta1", ("eta1", "eta1b")),
        _coefficient(coframe, "eta2", ("eta2", "eta2b")),
    )


def adapt_shift(state: AdaptationState) -> AdaptationState:
    """Level-3 frame: the G2 move whose ``c1, c2`` kill ``eta_j ^ eta_jb`` in ``d eta_j``.

    Raises:
        ChainError: A constant cannot be solved or a killed coefficient survives.
    """
    domain = state.domain

    def measure(c: object) -> tuple[Expr, Expr]:
        g = GroupElement.g2(c=(c, c, 0), epsilon=state.epsilon)
        return _shift_coefficients(_moved(state, g, Level.SHIFTED).coframe)

    c1, c2 = _solve_affine(("c1", "c2"), measure, domain)
    g = GroupElement.g2(c=(c1, c2, 0), epsilon=state.epsilon)
    moved = replace(
        _moved(state, g, Level.SHIFTED), constants={**state.constants, "c1": c1, "c2": c2}
    )
    q1, q2 = _shift_coefficients(moved.coframe)
    cross = _coefficient(moved.coframe, "eta1", ("eta2", "eta2b"))
    _require_killed("c1", {"eta1^eta1b in d eta1": q1, "eta2^eta2b in d eta1": cross}, domain)
    _require_killed("c2", {"eta2^eta2b in d eta2": q2}, domain)
    return moved


def _eta3_remainder(coframe: Coframe, epsilon: int) -> Form:
    """``d eta3 + i gamma2 ^ eta1 + i gamma1 ^ eta2 + i (rho + sigma) ^ eta3`` modulo eta0."""
    pc = extract(coframe, epsilon)
    eta1, eta2, eta3 = (coframe.one_form(f"eta{j}") for j in (1, 2, 3))
    remainder = (
        coframe.d(eta3)
        + (pc.gamma2 ^ eta1) * I
        + (pc.gamma1 ^ eta2) * I
        + ((pc.rho + pc.sigma) ^ eta3) * I
    )
    return reduce_mod_ideal(remainder, ["eta0"])


def adapt_eta3(state: AdaptationState) -> AdaptationState:
    """Level-4 frame: the G3 move whose ``c3`` kills ``eta1 ^ eta1b`` in the ``d eta3`` remainder.

    Raises:
        ChainError: ``c3`` cannot be solved or a killed coefficient survives.
    """
    domain = state.domain

    def measure(c: object) -> tuple[Expr]:
        g = GroupElement.g3(c=(0, 0, c), epsilon=state.epsilon)
        remainder = _eta3_remainder(_moved(state, g, Level.ADAPTED).coframe, state.epsilon)
        return (coefficient_of(remainder, ("eta1", "eta1b")),)

    (c3,) = _solve_affine(("c3",), measure, domain)
    g = GroupElement.g3(c=(0, 0, c3), epsilon=state.epsilon)
    moved = replace(_moved(state, g, Level.ADAPTED), constants={**state.constants, "c3": c3})
    remainder = _eta3_remainder(moved.coframe, moved.epsilon)
    killed = {
        f"{a}^{b} in d eta3": coefficient_of(remainder, (a, b))
        for a, b in (("eta1", "eta1b"), ("eta2", "eta2b"))
    }
    _require_killed("c3", killed, domain)
    return moved


def run_example_chain(df: DefiningFunction) -> AdaptationState:
    """Run the Levi, cubic, G2 and G3 stages on ``df``.

    Args:
        df: Tube defining function with a degenerate Levi form and diagonal cubic form
    Returns:
        The fully adapted state, with the applied group elements and solved constants
    Raises:
        PreconditionError: ``df`` fails a Levi precondition.
        ChainError: A stage cannot be completed; ``coefficient`` names the failing constant.
    """
    state = adapt_levi(df)
    for stage in (adapt_cubic, adapt_shift, adapt_eta3):
        state = stage(state)
        logger.debug("Completed adaptation stage", level=int(state.level))
    logger.info("Adapted coframe", function=str(df), moves=len(state.applied))
    return state


def _outside(form: Form, monomials: Sequence[tuple[str, str]]) -> Form:
    allowed = {tuple(sorted(form.basis.index(s) for s in pair)) for pair in monomials}
    return Form(form.basis, form.degree, tuple((k, v) for k, v in form.terms if k not in allowed))


def _levi_pairs() -> list[tuple[str, str]]:
    return [(f"eta{j}", f"eta{k}b") for j in (1, 2) for k in (1, 2)]


def _shape_residuals(state: AdaptationState, level: int) -> dict[str, Form]:
    coframe, eps = state.coframe, state.epsilon
    eta = {s: state.eta(s) for s in ("eta0", "eta1", "eta2", "eta3", "eta1b", "eta2b")}
    d = {j: coframe.d(eta[f"eta{j}"]) for j in range(4)}
    residuals: dict[str, Form] = {}

    d_eta0 = reduce_mod_ideal(d[0], ["eta0"])
    if level >= Level.LEVI:
        target = (eta["eta1"] ^ eta["eta1b"]) + (eta["eta2"] ^ eta["eta2b"]) * eps
        residuals["d eta0"] = d_eta0 - target * I
    else:
        residuals["d eta0"] = _outside(d_eta0, _levi_pairs())

    cubic_targets = {1: (eta["eta3"] ^ eta["eta2b"]) * eps, 2: eta["eta3"] ^ eta["eta1b"]}
    for j in (1, 2):
        d_eta = reduce_mod_ideal(d[j], ["eta0", "eta1", "eta2"])
        if level >= Level.CUBIC:
            residuals[f"d eta{j}"] = d_eta - cubic_targets[j]
        else:
            residuals[f"d eta{j}"] = _outside(d_eta, [("eta3", "eta1b"), ("eta3", "eta2b")])
    residuals["d eta3"] = reduce_mod_ideal(d[3], ["eta0", "eta1", "eta2", "eta3"])
    return residuals


def _structure_residuals(state: AdaptationState) -> dict[str, Form]:
    if state.pseudoconnection is None:
        state = replace(state, pseudoconnection=extract(state.coframe, state.epsilon))
    forms = state.coframing()
    flat = maurer_cartan_terms(forms, state.epsilon)
    return {
        f"d {symbol}": _outside(
            state.coframe.d(forms[symbol]) - flat[symbol], ALLOWED_TORSION[symbol]
        )
        for symbol in ("eta0", "eta1", "eta2", "eta3")
    }


def verify_adapted(state: AdaptationState, k: int) -> ResidualReport:
    """Check the level-``k`` normal form of the structure equations.

    ``k = 0`` checks the shape of the equations, ``k = 1`` adds ``l = diag(1, eps)``,
    ``k = 2`` adds the normalized cubic form, and ``k = 4`` compares with the flat
    equations up to the allowed torsion monomials.

    A state below level ``k`` is checked all the same.

    Raises:
        PreconditionError: ``k`` is not 0, 1, 2 or 4.
    """
    if k not in (0, 1, 2, 4):
        raise PreconditionError("level", f"no normal form for level {k}")
    if k == 4:
        residuals = _structure_residuals(state)
    else:
        residuals = _shape_residuals(state, k)
    report = ResidualReport.from_forms(
        f"adapted-{k}", residuals, state.epsilon, vanishes=zero_test(state.domain)
    )
    logger.debug("Verified adapted coframe", level=k, passed=report.passed)
    return report

