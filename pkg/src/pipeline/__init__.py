"""Adaptation chain, pseudoconnection, curvature and reports for tube hypersurfaces."""

from .adapt import (
    adapt_cubic,
    adapt_eta3,
    adapt_levi,
    adapt_shift,
    run_example_chain,
    verify_adapted,
)
from .connection import extract, prolong, pseudoconnection, solve_psi, with_pseudoconnection
from .curvature import (
    EXACT_EQUATIONS,
    curvature_coefficients,
    curvature_matrix,
    curvature_residuals,
    flat_model_state,
    fundamental_invariants,
    is_flat,
    se_residuals,
    verify_se_pullback,
)
from .golden import EXAMPLE_FUNCTION, example_function, golden_checks, is_example
from .models import (
    DETERMINED_NAMES,
    UNDETERMINED_NAMES,
    AdaptationState,
    CurvatureCoefficients,
    GoldenCheck,
    Level,
    PipelineReport,
    Pseudoconnection,
    StageModel,
)
from .report import build_report

__all__ = [
    "DETERMINED_NAMES",
    "EXACT_EQUATIONS",
    "EXAMPLE_FUNCTION",
    "UNDETERMINED_NAMES",
    "AdaptationState",
    "CurvatureCoefficients",
    "GoldenCheck",
    "Level",
    "PipelineReport",
    "Pseudoconnection",
    "StageModel",
    "adapt_cubic",
    "adapt_eta3",
    "adapt_levi",
    "adapt_shift",
    "build_report",
    "curvature_coefficients",
    "curvature_matrix",
    "curvature_residuals",
    "example_function",
    "extract",
    "flat_model_state",
    "fundamental_invariants",
    "golden_checks",
    "is_example",
    "is_flat",
    "prolong",
    "pseudoconnection",
    "run_example_chain",
    "se_residuals",
    "solve_psi",
    "verify_adapted",
    "verify_se_pullback",
    "with_pseudoconnection",
]
