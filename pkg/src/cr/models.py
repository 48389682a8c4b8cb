"""Data types of the tube hypersurface analysis."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from pydantic import BaseModel, Field

from errors import ConstraintViolation
from expr import Chart, Expr, is_zero, parse, tube_chart
from forms import Form
from reports import REPORT_SCHEMA_VERSION


class IsotropyClass(str, Enum):
    DEFINITE = "definite"
    SWITCHING = "isotropy-switching"
    PRESERVING = "isotropy-preserving"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class DefiningFunction:
    """Real function ``f(x1, x2, x3)`` of a tube hypersurface ``z4 + conj(z4) = f``."""

    expr: Expr
    chart: Chart = field(default_factory=tube_chart)
    source: str = ""

    def __post_init__(self) -> None:
        """Validate the function after initialization."""
        if not is_zero(self.expr - self.expr.conjugate(), self.chart.domain):
            raise ConstraintViolation(f"defining function {self.source or self.expr} is not real")

    @classmethod
    def from_text(cls, text: str) -> DefiningFunction:
        chart = tube_chart()
        return cls(parse(text, chart), chart, text)

    def __str__(self) -> str:
        return self.source or str(self.expr)


@dataclass(frozen=True)
class LeviData:
    """Levi matrix ``f_jk`` in the coordinate coframe together with the contact form."""

    matrix: tuple[tuple[Expr, ...], ...]
    contact: Form

    def __post_init__(self) -> None:
        """Validate symmetry after initialization."""
        for j in range(3):
            for k in range(j + 1, 3):
                if not (self.matrix[j][k] - self.matrix[k][j]).is_literal_zero:
                    raise ConstraintViolation(f"Levi matrix is not symmetric at ({j}, {k})")


@dataclass(frozen=True)
class CubicData:
    """Entries of the cubic form ``u = [[U1, eps U], [U, U2]]`` at a point.

    ``lam`` is the conformal factor of ``conj(u)^T l u = lam conj(l)`` when known.
    """

    epsilon: int
    u1: complex
    u: complex
    u2: complex
    lam: complex | None = None

    def __post_init__(self) -> None:
        """Validate the sign after initialization."""
        if self.epsilon not in (1, -1):
            raise ConstraintViolation(f"epsilon must be +1 or -1, got {self.epsilon}")
        for name in ("u1", "u", "u2"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @property
    def matrix(self) -> list[list[complex]]:
        return [[self.u1, self.epsilon * self.u], [self.u, self.u2]]

    @property
    def triple(self) -> tuple[complex, complex, complex]:
        return self.u1, self.u, self.u2


class ComplexValue(BaseModel):
    re: float
    im: float

    @classmethod
    def of(cls, value: complex) -> ComplexValue:
        return cls(re=value.real, im=value.imag)


class CubicModel(BaseModel):
    """Cubic form entries at the base point."""

    U1: ComplexValue
    U: ComplexValue
    U2: ComplexValue
    lam: ComplexValue | None = Field(default=None, alias="lambda")

    model_config = {"populate_by_name": True}

    @classmethod
    def of(cls, cd: CubicData) -> CubicModel:
        lam = ComplexValue.of(cd.lam) if cd.lam is not None else None
        return cls(
            U1=ComplexValue.of(cd.u1), U=ComplexValue.of(cd.u), U2=ComplexValue.of(cd.u2), lam=lam
        )


class AnalysisRecord(BaseModel):
    """Levi, cubic and isotropy analysis of a tube hypersurface."""

    schema_version: str = REPORT_SCHEMA_VERSION
    defining_function: str
    levi_rank: int = Field(..., ge=0, le=3)
    degenerate: bool
    levi_matrix: list[list[str]]
    cubic_matrix: list[list[str]] | None = None
    point: dict[str, float] = Field(default_factory=dict)
    cubic: CubicModel | None = None
    normalized: CubicModel | None = None
    isotropy: IsotropyClass | None = Field(default=None, alias="class")
    notes: list[str] = Field(default_factory=list)

    model_config = {"populate_by_name": True}
