"""Batch command-line front end over the library packages."""

from .app import attach_expression_values, create_parser, render_text, run, to_config, write_report
from .commands import (
    COMMANDS,
    TOL_FLOOR,
    analyze_function,
    check_example,
    equivariance,
    sampling_overrides,
    schema,
    verify_mc,
)
from .models import EquivarianceReport, ErrorReport, ExitCode, RunConfig, SchemaReport

__all__ = [
    "COMMANDS",
    "TOL_FLOOR",
    "EquivarianceReport",
    "ErrorReport",
    "ExitCode",
    "RunConfig",
    "SchemaReport",
    "analyze_function",
    "attach_expression_values",
    "check_example",
    "create_parser",
    "equivariance",
    "render_text",
    "run",
    "sampling_overrides",
    "schema",
    "to_config",
    "verify_mc",
    "write_report",
]
