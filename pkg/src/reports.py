"""Residual reports shared by the group and pipeline checks."""

from __future__ import annotations

from collections.abc import Callable, Mapping

from pydantic import BaseModel, Field, computed_field

from expr.canonical import NormalForm
from forms import Form, FormModel, form_to_model

REPORT_SCHEMA_VERSION = "1"


class ResidualEntry(BaseModel):
    """Nonzero part of one residual form."""

    name: str
    terms: int = Field(..., ge=1)
    residual: FormModel


class ResidualReport(BaseModel):
    schema_version: str = REPORT_SCHEMA_VERSION
    check: str
    epsilon: int | None = None
    checked: int = Field(..., ge=0)
    entries: list[ResidualEntry] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.entries

    @classmethod
    def from_forms(
        cls,
        check: str,
        residuals: Mapping[str, Form],
        epsilon: int | None = None,
        vanishes: Callable[[NormalForm], bool] | None = None,
    ) -> ResidualReport:
        """Collect the surviving terms of every residual form.

        Args:
            check: Name of the verification
            residuals: Residual forms by label
            epsilon: Sign of the structure, when the check depends on it
            vanishes: Zero test for a coefficient; structural by default
        Returns:
            Report listing only the residuals with surviving terms
        """
        entries = []
        for name, form in residuals.items():
            kept = [
                (indices, coeff)
                for indices, coeff in form.terms
                if not (vanishes(coeff) if vanishes else coeff.is_zero)
            ]
            if not kept:
                continue
            survivor = Form(form.basis, form.degree, tuple(kept))
            entries.append(
                ResidualEntry(name=name, terms=len(kept), residual=form_to_model(survivor))
            )
        return cls(check=check, epsilon=epsilon, checked=len(residuals), entries=entries)
