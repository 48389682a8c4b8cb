"""Command handlers.  Each takes a ``RunConfig`` and returns an exit code and a report."""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import structlog
from pydantic import BaseModel

from config import settings
from cr import AnalysisRecord, DefiningFunction, analyze
from errors import PreconditionError
from expr import parse
from forms import MatrixForm, matrix_to_model
from groups import FIBRE_COORDINATE, equivariance_residual, verify_maurer_cartan
from pipeline import (
    PipelineReport,
    build_report,
    curvature_coefficients,
    prolong,
    run_example_chain,
)
from reports import ResidualReport

from .models import EquivarianceReport, ErrorReport, ExitCode, RunConfig, SchemaReport

logger = structlog.getLogger(__name__)

# smallest tolerance a sampled float residual can meet
TOL_FLOOR = float(np.finfo(float).eps)


@contextmanager
def sampling_overrides(cfg: RunConfig) -> Iterator[None]:
    """Make the command's sampling options the library defaults for the duration."""
    saved = settings.SAMPLES, settings.TOL, settings.SEED
    settings.SAMPLES, settings.TOL, settings.SEED = cfg.samples, cfg.tol, cfg.seed
    try:
        yield
    finally:
        settings.SAMPLES, settings.TOL, settings.SEED = saved


def _verdict(passed: bool) -> ExitCode:
    return ExitCode.OK if passed else ExitCode.FAILED


def verify_mc(cfg: RunConfig) -> tuple[ExitCode, ResidualReport]:
    report = verify_maurer_cartan(cfg.epsilon, corrupt=cfg.corrupt)
    return _verdict(report.passed), report


def analyze_function(cfg: RunConfig) -> tuple[ExitCode, AnalysisRecord]:
    """Levi, cubic and isotropy analysis; succeeds whatever the verdicts."""
    df = DefiningFunction.from_text(cfg.defining_function)
    return ExitCode.OK, analyze(df)


def check_example(cfg: RunConfig) -> tuple[ExitCode, PipelineReport]:
    """Run the adaptation chain, prolong it and compare with the closed-form results.

    Raises:
        PreconditionError: ``tol`` is below float resolution, eps is not +1, or the
            defining function fails a Levi precondition.
    """
    if cfg.tol < TOL_FLOOR:
        raise PreconditionError("tol", f"tol {cfg.tol:g} is below float resolution {TOL_FLOOR:g}")
    if cfg.epsilon != 1:
        raise PreconditionError("epsilon", "the adaptation chain is defined for eps = +1")
    df = DefiningFunction.from_text(cfg.defining_function)
    state = prolong(run_example_chain(df))
    cc = curvature_coefficients(state)
    report = build_report(state, cc, cfg.tol, cfg.samples, cfg.seed)
    logger.info("Checked adaptation chain", function=str(df), passed=report.passed)
    return _verdict(report.passed), report


def _matrix_report(check: str, residual: MatrixForm, epsilon: int) -> ResidualReport:
    entries = {
        f"[{i}][{j}]": residual[i, j] for i in range(residual.dim) for j in range(residual.dim)
    }
    return ResidualReport.from_forms(check, entries, epsilon)


def equivariance(cfg: RunConfig) -> tuple[ExitCode, EquivarianceReport]:
    """Equivariance for a symbolic fibre parameter, then at the numeric spot checks."""
    y = parse(FIBRE_COORDINATE, [FIBRE_COORDINATE])
    symbolic = equivariance_residual(y, cfg.epsilon, corrupt=cfg.corrupt)
    report = EquivarianceReport(
        epsilon=cfg.epsilon,
        corrupt=cfg.corrupt,
        symbolic=_matrix_report("equivariance", symbolic, cfg.epsilon),
        residual=matrix_to_model(symbolic),
    )
    for value in cfg.spot_checks:
        residual = equivariance_residual(Fraction(value), cfg.epsilon, corrupt=cfg.corrupt)
        report.spot_checks[f"y = {value:g}"] = _matrix_report(
            "equivariance", residual, cfg.epsilon
        )
    return _verdict(report.passed), report


def schema(cfg: RunConfig) -> tuple[ExitCode, SchemaReport]:
    models: tuple[type[BaseModel], ...] = (
        ResidualReport,
        AnalysisRecord,
        PipelineReport,
        EquivarianceReport,
        ErrorReport,
    )
    schemas = {model.__name__: model.model_json_schema(by_alias=True) for model in models}
    return ExitCode.OK, SchemaReport(schemas=schemas)


COMMANDS = {
    "verify-mc": verify_mc,
    "analyze": analyze_function,
    "check-example": check_example,
    "equivariance": equivariance,
    "schema": schema,
}
