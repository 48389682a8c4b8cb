"""Exterior derivative backends.

``Coframe.d`` applies the Leibniz rule; subclasses supply the differential
of a coefficient and of each basis one-form:

- ``ChartCoframe``: coordinate differentials of a chart, d(basis) = 0.
- ``AbstractCoframe``: declared structure equations and function differentials.
- ``FrameCoframe``: a frame of one-forms written in a chart coframe; d is
  computed in the chart and rewritten in the frame.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterable, Mapping, Sequence

import structlog

from errors import (
    ConstraintViolation,
    DegreeMismatch,
    MixedCoframes,
    UndeclaredDifferential,
)
import sympy

from expr.canonical import I, NormalForm, Placeholder, coordinate_symbol, placeholder_symbol
from expr.chart import Chart
from expr.identity import is_zero
from expr.linalg import Matrix, invert, matmul
from expr.models import Function, to_expr

from .form import Form, substitute_coframe, wedge
from .models import Basis, BasisOneForm, complex_pair

logger = structlog.getLogger(__name__)


class Coframe(ABC):
    """A basis of one-forms together with a rule for exterior differentiation."""

    basis: Basis

    def __init__(self) -> None:
        self._d_basis_cache: dict[int, Form] = {}

    @abstractmethod
    def d_coefficient(self, coefficient: NormalForm) -> Form:
        """Differential of a scalar coefficient as a one-form."""

    @abstractmethod
    def _compute_d_basis(self, index: int) -> Form:
        """Differential of the basis one-form at ``index``."""

    def d_basis(self, index: int) -> Form:
        if index not in self._d_basis_cache:
            self._d_basis_cache[index] = self._compute_d_basis(index)
        return self._d_basis_cache[index]

    def one_form(self, symbol: str, coefficient: object = 1) -> Form:
        return Form.one_form(self.basis, symbol, coefficient)

    def d(self, form: Form) -> Form:
        """Exterior derivative.

        Raises:
            MixedCoframes: ``form`` is not written over this coframe's basis.
        """
        if form.basis is not self.basis and form.basis != self.basis:
            raise MixedCoframes(
                f"form over {form.basis.name} differentiated in {self.basis.name}"
            )
        basis = self.basis
        result = Form.zero(basis, form.degree + 1)
        for indices, coeff in form.terms:
            dc = self.d_coefficient(coeff)
            if not dc.is_zero:
                result = result + wedge(dc, Form.build(basis, len(indices), [(indices, 1)]))
            for position, index in enumerate(indices):
                db = self.d_basis(index)
                if db.is_zero:
                    continue
                left = Form.build(basis, position, [(indices[:position], coeff)])
                tail = indices[position + 1 :]
                right = Form.build(basis, len(tail), [(tail, 1)])
                piece = wedge(wedge(left, db), right)
                result = result + (piece if position % 2 == 0 else -piece)
        return result


class ChartCoframe(Coframe):
    """Coordinate coframe ``dz_j, dzb_j`` plus ``d`` of every real coordinate outside a pair."""

    def __init__(self, chart: Chart) -> None:
        super().__init__()
        self.chart = chart
        holomorphic = [
            BasisOneForm(f"d{p.holomorphic}", f"d{p.holomorphic}b") for p in chart.pairs
        ]
        antiholomorphic = [
            BasisOneForm(f"d{p.holomorphic}b", f"d{p.holomorphic}") for p in chart.pairs
        ]
        paired = {c for p in chart.pairs for c in (p.real, p.imaginary)}
        self.real_coordinates = tuple(c for c in chart.coordinates if c not in paired)
        extra = [BasisOneForm.real(f"d{c}") for c in self.real_coordinates]
        self.basis = Basis(chart.name, tuple(holomorphic + antiholomorphic + extra))

    def d_coefficient(self, coefficient: NormalForm) -> Form:
        terms: list[tuple[tuple[int, ...], NormalForm]] = []
        free = coefficient.free_variables
        n = len(self.chart.pairs)
        for j, pair in enumerate(self.chart.pairs):
            x, y = coordinate_symbol(pair.real), coordinate_symbol(pair.imaginary)
            along_x = coefficient.derivative(x).scale(pair.scale / 2) if x in free else None
            along_y = coefficient.derivative(y) * I.scale(-1) / 2 if y in free else None
            if along_x is None and along_y is None:
                continue
            zero = NormalForm()
            ax = along_x if along_x is not None else zero
            ay = along_y if along_y is not None else zero
            terms.append(((j,), ax + ay))
            terms.append(((n + j,), ax - ay))
        for k, name in enumerate(self.real_coordinates):
            key = coordinate_symbol(name)
            if key in free:
                terms.append(((2 * n + k,), coefficient.derivative(key)))
        return Form.build(self.basis, 1, terms)

    def _compute_d_basis(self, index: int) -> Form:
        return Form.zero(self.basis, 2)

    def coordinate_differential(self, name: str) -> Form:
        """``d`` of a real coordinate, written in the coordinate coframe."""
        return self.d_coefficient(NormalForm.coordinate(name))


def _function_key(function: str | Function) -> Placeholder:
    if isinstance(function, Function):
        return placeholder_symbol(function.name, function.conjugated, function.real)
    return placeholder_symbol(function)


class AbstractCoframe(Coframe):
    """Coframe given by declared structure equations.

    Conjugate basis forms and conjugate functions receive the conjugated
    declarations automatically.  Coordinates listed in ``constants`` have
    zero differential; every other variable must be declared.
    """

    def __init__(
        self,
        basis: Basis,
        equations: Mapping[str, Form],
        functions: Mapping[str | Function, Form] | None = None,
        constants: Iterable[str] = (),
    ) -> None:
        super().__init__()
        self.basis = basis
        self.constants = frozenset(constants)
        table: dict[str, Form] = {}
        for symbol, form in equations.items():
            basis.index(symbol)
            self._validate(symbol, form, 2)
            table[symbol] = form
        for symbol, form in list(table.items()):
            partner = basis.forms[basis.index(symbol)].conjugate
            if partner is not None and partner != symbol and partner not in table:
                table[partner] = form.conjugate()
        self.equations = table
        differentials: dict[sympy.Symbol, Form] = {}
        for function, form in (functions or {}).items():
            self._validate(str(function), form, 1)
            differentials[_function_key(function)] = form
        for key, form in list(differentials.items()):
            if not key.is_real:
                differentials.setdefault(key.partner, form.conjugate())
        self.differentials = differentials

    def _validate(self, label: str, form: Form, degree: int) -> None:
        if form.basis != self.basis:
            raise MixedCoframes(f"declaration for {label} is not over {self.basis.name}")
        if form.degree != degree and not form.is_zero:
            raise DegreeMismatch(f"declaration for {label} must have degree {degree}")

    def equation(self, symbol: str) -> Form:
        self.basis.index(symbol)
        if symbol not in self.equations:
            raise UndeclaredDifferential(f"no structure equation for {symbol}")
        return self.equations[symbol]

    def d_coefficient(self, coefficient: NormalForm) -> Form:
        result = Form.zero(self.basis, 1)
        for variable in sorted(coefficient.free_variables, key=str):
            if variable.name in self.constants and not isinstance(variable, Placeholder):
                continue
            differential = self.differentials.get(variable)
            if differential is None:
                raise UndeclaredDifferential(f"no declared differential for {variable.name}")
            result = result + differential * coefficient.derivative(variable)
        return result

    def _compute_d_basis(self, index: int) -> Form:
        return self.equation(self.basis.symbol(index))


FRAME_SYMBOLS = ("eta0", "eta1", "eta2", "eta3", "eta1b", "eta2b", "eta3b")


def frame_basis(name: str) -> Basis:
    """Basis ``eta0`` (real), ``eta1..eta3`` and their conjugates."""
    pairs = [complex_pair(f"eta{j}", f"eta{j}b") for j in (1, 2, 3)]
    return Basis(
        name,
        (BasisOneForm.real("eta0"), *(p[0] for p in pairs), *(p[1] for p in pairs)),
    )


class FrameCoframe(Coframe):
    """Frame ``(eta0, eta_j, conj(eta_j))`` expressed in a chart coframe.

    ``rows[a][k]`` is the coefficient of chart basis form ``k`` in frame
    form ``a``; the inverse matrix rewrites chart forms in the frame.
    """

    def __init__(
        self,
        chart: ChartCoframe,
        rows: Matrix,
        name: str,
        inverse: Matrix | None = None,
    ) -> None:
        super().__init__()
        if len(rows) != len(chart.basis) or len(FRAME_SYMBOLS) != len(rows):
            raise DegreeMismatch("frame and chart coframe must have the same rank")
        self.chart = chart
        self.basis = frame_basis(name)
        self.rows = rows
        self.inverse = inverse if inverse is not None else invert(rows)
        size = len(rows)
        self._to_frame = {
            chart.basis.symbol(m): Form.build(
                self.basis, 1, [((a,), self.inverse[m][a]) for a in range(size)]
            )
            for m in range(size)
        }
        self._to_chart = {
            FRAME_SYMBOLS[a]: Form.build(chart.basis, 1, [((k,), rows[a][k]) for k in range(size)])
            for a in range(size)
        }
        logger.debug("Built frame", name=name)

    @classmethod
    def from_forms(cls, chart: ChartCoframe, forms: Sequence[Form], name: str) -> FrameCoframe:
        """Build the frame from ``eta0..eta3`` given as chart one-forms.

        Raises:
            ConstraintViolation: ``eta0`` is not real-valued.
        """
        eta0 = forms[0]
        difference = eta0.conjugate() - eta0
        domain = chart.chart.domain
        for _, coeff in difference.terms:
            if not is_zero(to_expr(coeff), domain):
                raise ConstraintViolation("eta0 must be a real-valued one-form")
        full = [*forms, *(form.conjugate() for form in forms[1:])]
        rows = [[form.coefficient((k,)) for k in range(len(chart.basis))] for form in full]
        return cls(chart, rows, name)

    def transform(self, g7: Matrix, name: str) -> FrameCoframe:
        """New frame ``g7 . eta`` for a 7x7 matrix acting on ``(eta0, eta_j, conj(eta_j))``."""
        inverse = matmul(self.inverse, invert(g7))
        return FrameCoframe(self.chart, matmul(g7, self.rows), name, inverse)

    @property
    def forms(self) -> tuple[Form, ...]:
        """``eta0..eta3`` as chart one-forms."""
        return tuple(self._to_chart[symbol] for symbol in FRAME_SYMBOLS[:4])

    def to_chart(self, form: Form) -> Form:
        return substitute_coframe(form, self._to_chart, target=self.chart.basis)

    def from_chart(self, form: Form) -> Form:
        return substitute_coframe(form, self._to_frame, target=self.basis)

    def d_coefficient(self, coefficient: NormalForm) -> Form:
        return self.from_chart(self.chart.d_coefficient(coefficient))

    def _compute_d_basis(self, index: int) -> Form:
        return self.from_chart(self.chart.d(self._to_chart[FRAME_SYMBOLS[index]]))


def d_coordinate(form: Form, chart: ChartCoframe) -> Form:
    return chart.d(form)


def d_abstract(form: Form, coframe: AbstractCoframe) -> Form:
    return coframe.d(form)


def d_squared_residuals(coframe: AbstractCoframe) -> dict[str, Form]:
    """``d`` of every declared structure equation; all zero for an integrable table."""
    return {symbol: coframe.d(coframe.equation(symbol)) for symbol in coframe.basis.symbols}
