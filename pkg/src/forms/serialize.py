"""JSON documents for forms and matrices of forms."""

from __future__ import annotations

from collections.abc import Iterable

from pydantic import BaseModel, Field

from expr.calculus import substitute
from expr.chart import Chart
from expr.models import Function, to_expr
from expr.parser import parse

from .form import Form
from .matrix import MatrixForm
from .models import Basis


class TermModel(BaseModel):
    """One wedge monomial with its coefficient in the expression grammar."""

    indices: list[int]
    symbols: list[str]
    coeff: str


class FormModel(BaseModel):
    basis: str
    degree: int = Field(..., ge=0)
    terms: list[TermModel] = Field(default_factory=list)


class MatrixFormModel(BaseModel):
    basis: str
    degree: int = Field(..., ge=0)
    entries: list[list[FormModel]]


def form_to_model(form: Form) -> FormModel:
    return FormModel(
        basis=form.basis.name,
        degree=form.degree,
        terms=[
            TermModel(
                indices=list(indices),
                symbols=list(form.symbols_of(indices)),
                coeff=str(to_expr(coeff)),
            )
            for indices, coeff in form.terms
        ],
    )


def matrix_to_model(matrix: MatrixForm) -> MatrixFormModel:
    return MatrixFormModel(
        basis=matrix.basis.name,
        degree=matrix.degree,
        entries=[[form_to_model(entry) for entry in row] for row in matrix.entries],
    )


def form_from_model(
    model: FormModel,
    basis: Basis,
    chart: Chart | Iterable[str],
    functions: Iterable[str] = (),
    real_functions: Iterable[str] = (),
) -> Form:
    """Rebuild a form by parsing its coefficient strings.

    Real placeholder functions print like complex ones, so their names are
    passed separately to restore the flag.

    Raises:
        UnknownSymbol: A term names a symbol outside ``basis``.
        ParseError: A coefficient does not parse.
    """
    real = tuple(real_functions)
    names = (*functions, *real)
    coordinates = chart if isinstance(chart, Chart) else tuple(chart)
    restore = {Function(name): Function(name, real=True) for name in real}
    terms = []
    for term in model.terms:
        coeff = parse(term.coeff, coordinates, names)
        if restore:
            coeff = substitute(coeff, restore)
        terms.append(([basis.index(symbol) for symbol in term.symbols], coeff))
    return Form.build(basis, model.degree, terms)
