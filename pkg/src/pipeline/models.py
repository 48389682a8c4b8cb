"""Data types of the adaptation pipeline."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import IntEnum

from pydantic import BaseModel, Field, computed_field

from cr import DefiningFunction
from errors import ConstraintViolation, ExtractionError
from expr import Domain, Expr
from forms import Basis, Coframe, Form, FormModel
from groups import TORSION_NAMES, GroupElement
from reports import REPORT_SCHEMA_VERSION, ResidualReport

DETERMINED_NAMES = ("F1", "F2", "T31b", "T32b", "F31", "F32")
UNDETERMINED_NAMES = tuple(name for name in TORSION_NAMES if name not in DETERMINED_NAMES)


class Level(IntEnum):
    """Adaptation level of a coframe."""

    ZERO = 0
    LEVI = 1
    CUBIC = 2
    SHIFTED = 3
    ADAPTED = 4


@dataclass(frozen=True)
class Pseudoconnection:
    """The forms ``tau, rho, sigma, gamma1, gamma2`` on the coframe basis."""

    tau: Form
    rho: Form
    sigma: Form
    gamma1: Form
    gamma2: Form

    def as_dict(self) -> dict[str, Form]:
        return {
            "tau": self.tau,
            "rho": self.rho,
            "sigma": self.sigma,
            "gamma1": self.gamma1,
            "gamma2": self.gamma2,
        }


@dataclass(frozen=True)
class AdaptationState:
    """One stage of the adaptation chain.

    ``coframe`` is a frame over the hypersurface chart, or the abstract flat
    model when ``df`` is None.  ``applied`` lists the group elements in the
    order they acted on the level-1 frame.
    """

    coframe: Coframe
    level: Level
    epsilon: int = 1
    df: DefiningFunction | None = None
    applied: tuple[GroupElement, ...] = ()
    constants: Mapping[str, Expr] = field(default_factory=dict)
    pseudoconnection: Pseudoconnection | None = None
    psi: Form | None = None

    def __post_init__(self) -> None:
        """Validate the state after initialization."""
        if self.epsilon not in (1, -1):
            raise ConstraintViolation(f"epsilon must be +1 or -1, got {self.epsilon}")
        object.__setattr__(self, "level", Level(self.level))
        if self.psi is not None and self.pseudoconnection is None:
            raise ConstraintViolation("psi requires the pseudoconnection")

    @property
    def basis(self) -> Basis:
        return self.coframe.basis

    @property
    def domain(self) -> Domain | None:
        """Sampling domain of the chart; None on the abstract flat model."""
        return self.df.chart.domain if self.df is not None else None

    @property
    def prolonged(self) -> bool:
        return self.psi is not None

    def eta(self, symbol: str) -> Form:
        return Form.one_form(self.coframe.basis, symbol)

    def coframing(self) -> dict[str, Form]:
        """The ten forms of the parallelism; psi is 0 until solved.

        Raises:
            ExtractionError: The pseudoconnection has not been computed.
        """
        if self.pseudoconnection is None:
            raise ExtractionError("pseudoconnection has not been computed")
        forms = {symbol: self.eta(symbol) for symbol in ("eta0", "eta1", "eta2", "eta3")}
        forms.update(self.pseudoconnection.as_dict())
        forms["psi"] = self.psi if self.psi is not None else Form.zero(self.basis, 1)
        return forms


@dataclass(frozen=True)
class CurvatureCoefficients:
    """Determined curvature coefficients of a section, plus any solved torsion functions."""

    F1: Expr
    F2: Expr
    T31b: Expr
    T32b: Expr
    F31: Expr
    F32: Expr
    undetermined: Mapping[str, Expr] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Validate the torsion names after initialization."""
        unknown = sorted(set(self.undetermined) - set(UNDETERMINED_NAMES))
        if unknown:
            raise ConstraintViolation(f"not undetermined torsion functions: {', '.join(unknown)}")

    @property
    def determined(self) -> dict[str, Expr]:
        return {name: getattr(self, name) for name in DETERMINED_NAMES}

    def values(self) -> dict[str, Expr]:
        return {**self.determined, **self.undetermined}


class StageModel(BaseModel):
    """Group element applied by one stage of the chain."""

    level: int = Field(..., ge=0)
    tag: str
    params: dict[str, str]


class GoldenCheck(BaseModel):
    name: str
    expected: str
    passed: bool


class PipelineReport(BaseModel):
    """Full record of an adaptation run."""

    schema_version: str = REPORT_SCHEMA_VERSION
    defining_function: str
    epsilon: int
    tol: float = Field(..., gt=0)
    stages: list[StageModel] = Field(default_factory=list)
    constants: dict[str, str] = Field(default_factory=dict)
    coframe: dict[str, FormModel] = Field(default_factory=dict)
    pseudoconnection: dict[str, FormModel] = Field(default_factory=dict)
    psi: FormModel | None = None
    curvature: dict[str, str] = Field(default_factory=dict)
    flat: bool
    invariants: dict[str, FormModel] = Field(default_factory=dict)
    residual_maxima: dict[str, float] = Field(default_factory=dict)
    checks: list[ResidualReport] = Field(default_factory=list)
    golden: list[GoldenCheck] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        bounded = all(value <= self.tol for value in self.residual_maxima.values())
        checks = all(check.passed for check in self.checks)
        return bounded and checks and all(g.passed for g in self.golden)
