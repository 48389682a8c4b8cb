"""Assemble the JSON report of an adaptation run."""

from __future__ import annotations

import structlog

from errors import ExtractionError
from expr import max_residual, to_expr
from expr.canonical import NormalForm
from forms import Form, FrameCoframe, form_to_model

from .adapt import verify_adapted
from .curvature import (
    EXACT_EQUATIONS,
    fundamental_invariants,
    is_flat,
    se_residuals,
    verify_se_pullback,
)
from .golden import golden_checks, is_example
from .models import AdaptationState, CurvatureCoefficients, PipelineReport, StageModel

logger = structlog.getLogger(__name__)


def _render(value: object) -> str:
    if isinstance(value, NormalForm):
        return str(to_expr(value))
    if isinstance(value, tuple | list):
        return "(" + ", ".join(_render(item) for item in value) + ")"
    return str(value)


def _form_maximum(
    form: Form, state: AdaptationState, samples: int | None, seed: int | None
) -> float:
    return max(
        (max_residual(to_expr(coeff), state.domain, samples, seed) for _, coeff in form.terms),
        default=0.0,
    )


def build_report(
    state: AdaptationState,
    cc: CurvatureCoefficients,
    tol: float,
    samples: int | None = None,
    seed: int | None = None,
    golden: bool = True,
) -> PipelineReport:
    """Collect stages, forms, curvature and checks of a prolonged state.

    Args:
        state: Prolonged, fully adapted state
        cc: Curvature coefficients of the state
        tol: Bound on the sampled residual maxima
        samples: Sample count for the numeric zero tests
        seed: Seed for the numeric zero tests
        golden: Compare with the closed-form results when ``state`` is the example
    Returns:
        The report; ``passed`` combines the maxima, the checks and the golden comparisons
    Raises:
        ExtractionError: ``state`` has not been prolonged.
    """
    if not state.prolonged:
        raise ExtractionError("psi has not been solved")
    residuals = se_residuals(state, cc)
    pc = state.pseudoconnection
    stages = [
        StageModel(
            level=2 + index,
            tag=g.tag.value,
            params={name: _render(value) for name, value in g.params.items()},
        )
        for index, g in enumerate(state.applied)
    ]
    coframe = {}
    if isinstance(state.coframe, FrameCoframe):
        names = ("eta0", "eta1", "eta2", "eta3")
        coframe = {name: form_to_model(form) for name, form in zip(names, state.coframe.forms)}
    inv1, inv2 = fundamental_invariants(cc, state)

    report = PipelineReport(
        defining_function=str(state.df) if state.df is not None else "flat model",
        epsilon=state.epsilon,
        tol=tol,
        stages=stages,
        constants={name: _render(value) for name, value in state.constants.items()},
        coframe=coframe,
        pseudoconnection={name: form_to_model(form) for name, form in pc.as_dict().items()},
        psi=form_to_model(state.psi),
        curvature={name: str(value) for name, value in cc.determined.items()},
        flat=is_flat(cc, state.domain),
        invariants={"|F1|^2 eta0": form_to_model(inv1), "|F2|^2 eta0": form_to_model(inv2)},
        residual_maxima={
            f"d {symbol}": _form_maximum(residuals[symbol], state, samples, seed)
            for symbol in EXACT_EQUATIONS
        },
        checks=[verify_adapted(state, 4), verify_se_pullback(state, cc, residuals=residuals)],
    )
    if golden and state.df is not None and is_example(state.df):
        report.golden = golden_checks(state, cc, samples, tol, seed)
    logger.info("Built pipeline report", passed=report.passed, stages=len(stages))
    return report
