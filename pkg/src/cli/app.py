"""Argument parsing, dispatch and report writing for the ``cartan-cr`` command."""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

import structlog
from pydantic import BaseModel, ValidationError

from config import settings
from errors import (
    CartanError,
    ConstraintViolation,
    DomainViolation,
    ParseError,
    PreconditionError,
)
from pipeline import EXAMPLE_FUNCTION

from .commands import COMMANDS, sampling_overrides
from .models import ErrorReport, ExitCode, RunConfig

logger = structlog.getLogger(__name__)

# failures caused by the input rather than by a verification
USAGE_ERRORS = (ParseError, DomainViolation, ConstraintViolation, PreconditionError)

# options whose value is an expression and may start with a minus sign
EXPRESSION_OPTIONS = ("--f",)

DESCRIPTIONS = {
    "verify-mc": "check the Maurer-Cartan table of the flat model",
    "analyze": "Levi form, cubic form and isotropy class of a tube hypersurface",
    "check-example": "adapt, prolong and compare the example with its closed form",
    "equivariance": "check equivariance of the parallelism under the prolongation fibre",
    "schema": "print the JSON schema of every report",
}


def create_parser() -> argparse.ArgumentParser:
    """Create the parser with one subcommand per handler in ``COMMANDS``."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--epsilon", type=int, choices=(1, -1), default=1)
    common.add_argument("--samples", type=int, default=settings.SAMPLES)
    common.add_argument("--tol", type=float, default=settings.TOL)
    common.add_argument("--seed", type=int, default=settings.SEED)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", default=None, help="report path; stdout by default")

    parser = argparse.ArgumentParser(
        prog="cartan-cr", description="Cartan equivalence toolkit for tube CR hypersurfaces."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, description in DESCRIPTIONS.items():
        sub = subparsers.add_parser(name, parents=[common], help=description)
        if name in ("analyze", "check-example"):
            sub.add_argument(
                "--f",
                dest="defining_function",
                default=EXAMPLE_FUNCTION,
                help="defining function of x1, x2, x3; may start with a minus sign",
            )
        if name in ("verify-mc", "equivariance"):
            sub.add_argument(
                "--corrupt", action="store_true", help="verify a deliberately broken variant"
            )
        if name == "equivariance":
            sub.add_argument(
                "--y", dest="spot_checks", type=float, nargs="*", default=[-1.0, 0.5, 3.0]
            )
    return parser


def attach_expression_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--f EXPR`` as ``--f=EXPR`` so argparse never reads ``-x3*...`` as an option."""
    attached: list[str] = []
    pending = False
    for arg in argv:
        if pending:
            attached[-1] = f"{attached[-1]}={arg}"
            pending = False
            continue
        attached.append(arg)
        pending = arg in EXPRESSION_OPTIONS
    return attached


def to_config(args: argparse.Namespace) -> RunConfig:
    """Validate parsed arguments; a ``CARTAN_CR_SEED`` environment value wins over ``--seed``."""
    values = {key: value for key, value in vars(args).items() if value is not None}
    if settings.seed_from_environment:
        values["seed"] = settings.SEED
    return RunConfig(**values)


def render_text(command: str, code: ExitCode, payload: BaseModel) -> str:
    """Short human-readable summary of a report."""
    lines = [f"{command}: {code.name.lower()}"]
    for key, value in payload.model_dump(mode="json", by_alias=True).items():
        if isinstance(value, dict) and all(isinstance(v, str) for v in value.values()):
            lines.append(f"  {key}:")
            lines.extend(f"    {k} = {v}" for k, v in value.items())
        elif isinstance(value, dict | list):
            lines.append(f"  {key}: {len(value)} entries")
        else:
            lines.append(f"  {key}: {value}")
    return "\n".join(lines) + "\n"


def write_report(cfg: RunConfig, code: ExitCode, payload: BaseModel) -> None:
    if cfg.format == "json":
        text = payload.model_dump_json(indent=2, by_alias=True) + "\n"
    else:
        text = render_text(cfg.command, code, payload)
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        cfg.output.write_text(text, encoding="utf-8")
        logger.info("Wrote report", path=str(cfg.output))


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run the command and write its report.

    Returns:
        0 on success, 1 when a verification fails, 2 on an input or usage error
    """
    argv = sys.argv[1:] if argv is None else argv
    args = create_parser().parse_args(attach_expression_values(argv))
    try:
        cfg = to_config(args)
    except ValidationError as e:
        logger.error("Invalid options", command=args.command, error=str(e))
        return ExitCode.USAGE

    try:
        with sampling_overrides(cfg):
            code, payload = COMMANDS[cfg.command](cfg)
    except CartanError as e:
        code = ExitCode.USAGE if isinstance(e, USAGE_ERRORS) else ExitCode.FAILED
        logger.error("Command failed", command=cfg.command, error=str(e), exit_code=int(code))
        payload = ErrorReport(command=cfg.command, error=str(e), kind=type(e).__name__)

    write_report(cfg, code, payload)
    logger.info("Finished command", command=cfg.command, exit_code=int(code))
    return int(code)
