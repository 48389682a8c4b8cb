"""Run configuration and result envelopes of the command-line interface."""

from __future__ import annotations

from enum import IntEnum
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, computed_field, field_validator

from config import settings
from forms import MatrixFormModel
from pipeline import EXAMPLE_FUNCTION
from reports import REPORT_SCHEMA_VERSION, ResidualReport

Command = Literal["verify-mc", "analyze", "check-example", "equivariance", "schema"]


class ExitCode(IntEnum):
    OK = 0
    FAILED = 1
    USAGE = 2


class RunConfig(BaseModel):
    """Validated options of one command."""

    command: Command
    epsilon: int = 1
    defining_function: str = EXAMPLE_FUNCTION
    samples: int = Field(default=settings.SAMPLES, ge=1)
    tol: float = Field(default=settings.TOL, gt=0)
    seed: int = settings.SEED
    output: Path | None = None
    format: Literal["json", "text"] = "json"
    corrupt: bool = False
    spot_checks: list[float] = Field(default_factory=lambda: [-1.0, 0.5, 3.0])

    @field_validator("epsilon")
    @classmethod
    def check_epsilon(cls, value: int) -> int:
        if value not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        return value


class EquivarianceReport(BaseModel):
    """Symbolic and numeric equivariance residuals of the parallelism.

    ``residual`` is the symbolic residual matrix itself; a passing run has no terms in it.
    """

    schema_version: str = REPORT_SCHEMA_VERSION
    epsilon: int
    corrupt: bool = False
    symbolic: ResidualReport
    residual: MatrixFormModel
    spot_checks: dict[str, ResidualReport] = Field(default_factory=dict)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.symbolic.passed and all(r.passed for r in self.spot_checks.values())


class ErrorReport(BaseModel):
    """Body written when a command stops on an input or usage error."""

    schema_version: str = REPORT_SCHEMA_VERSION
    command: str
    error: str
    kind: str


class SchemaReport(BaseModel):
    """JSON schemas of every report the commands write."""

    schema_version: str = REPORT_SCHEMA_VERSION
    schemas: dict[str, dict]
