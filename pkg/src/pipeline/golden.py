"""Closed-form results of the adaptation chain for ``f = -x3 ln(x1 x2 / x3^2)``."""

from __future__ import annotations

from collections.abc import Mapping

from cr import DefiningFunction, dz4_form
from expr import Expr, is_zero, parse
from expr.canonical import I
from forms import Form, FrameCoframe

from .models import AdaptationState, CurvatureCoefficients, GoldenCheck

EXAMPLE_FUNCTION = "-x3*ln(x1*x2/x3^2)"

LOG = "ln(x1*x2/x3^2)"

CONSTANTS = {
    "b3": "1/x3",
    "c1": "(-1+i)/(4*sqrt(x3))",
    "c2": "(1+i)/(4*sqrt(x3))",
    "c3": "-i/(16*x3)",
}

# final eta0..eta3 as combinations of dz1, dz2, dz3 and dz4 on the hypersurface
CHART_FORMS = {
    "eta0": {
        "dz1": "2*i*x3/x1",
        "dz2": "2*i*x3/x2",
        "dz3": f"2*i*({LOG} - 2)",
        "dz4": "2*i",
    },
    "eta1": {
        "dz1": "(1-i)*sqrt(x3)/(2*x1)",
        "dz2": "-(1-i)*sqrt(x3)/(2*x2)",
        "dz3": f"-(1+i)*{LOG}/(2*sqrt(x3))",
        "dz4": "-(1+i)/(2*sqrt(x3))",
    },
    "eta2": {
        "dz1": "(1+i)*sqrt(x3)/(2*x1)",
        "dz2": "-(1+i)*sqrt(x3)/(2*x2)",
        "dz3": f"-(1-i)*{LOG}/(2*sqrt(x3))",
        "dz4": "-(1-i)/(2*sqrt(x3))",
    },
    "eta3": {
        "dz1": "1/(8*x1)",
        "dz2": "1/(8*x2)",
        "dz3": f"(6 + {LOG})/(8*x3)",
        "dz4": "1/(8*x3)",
    },
}

# pseudoconnection and psi in the final frame; rho and sigma are given as i rho and i sigma
FRAME_FORMS = {
    "tau": {
        "eta1": "(1-i)/(8*sqrt(x3))",
        "eta1b": "(1+i)/(8*sqrt(x3))",
        "eta2": "(1+i)/(8*sqrt(x3))",
        "eta2b": "(1-i)/(8*sqrt(x3))",
    },
    "i rho": {
        "eta3": "-1/2",
        "eta3b": "1/2",
        "eta1": "(1-i)/(8*sqrt(x3))",
        "eta1b": "-(1+i)/(8*sqrt(x3))",
        "eta2": "-(1+i)/(8*sqrt(x3))",
        "eta2b": "(1-i)/(8*sqrt(x3))",
    },
    "i sigma": {
        "eta3": "-1/2",
        "eta3b": "1/2",
        "eta1": "-(1-i)/(8*sqrt(x3))",
        "eta1b": "(1+i)/(8*sqrt(x3))",
        "eta2": "(1+i)/(8*sqrt(x3))",
        "eta2b": "-(1-i)/(8*sqrt(x3))",
    },
    "gamma1": {
        "eta0": "(1+i)/(64*x3*sqrt(x3))",
        "eta1": "-i/(16*x3)",
        "eta1b": "-1/(8*x3)",
        "eta2": "-1/(8*x3)",
        "eta2b": "-i/(16*x3)",
    },
    "gamma2": {
        "eta0": "(1-i)/(64*x3*sqrt(x3))",
        "eta1": "1/(8*x3)",
        "eta1b": "-i/(16*x3)",
        "eta2": "-i/(16*x3)",
        "eta2b": "1/(8*x3)",
    },
    "psi": {
        "eta0": "1/(128*x3^2)",
        "eta1": "(1+i)/(128*x3*sqrt(x3))",
        "eta1b": "(1-i)/(128*x3*sqrt(x3))",
        "eta2": "-(1-i)/(128*x3*sqrt(x3))",
        "eta2b": "-(1+i)/(128*x3*sqrt(x3))",
    },
}

COEFFICIENTS = {
    "F1": "-(1-i)/(4*sqrt(x3))",
    "F2": "-(1+i)/(4*sqrt(x3))",
    "T31b": "-(1-i)/(64*x3*sqrt(x3))",
    "T32b": "(1+i)/(64*x3*sqrt(x3))",
    "F31": "i/(8*x3)",
    "F32": "-i/(8*x3)",
}

# coefficient of eta0 in |F1|^2 eta0 and in |F2|^2 eta0
INVARIANT = "1/(8*x3)"


def example_function() -> DefiningFunction:
    return DefiningFunction.from_text(EXAMPLE_FUNCTION)


def is_example(df: DefiningFunction) -> bool:
    return is_zero(df.expr - example_function().expr, df.chart.domain)


def expected_chart_form(df: DefiningFunction, frame: FrameCoframe, symbol: str) -> Form:
    chart = frame.chart
    form = dz4_form(df, chart) * parse(CHART_FORMS[symbol]["dz4"], df.chart)
    for j in (1, 2, 3):
        form = form + chart.one_form(f"dz{j}", parse(CHART_FORMS[symbol][f"dz{j}"], df.chart))
    return form


def expected_frame_form(state: AdaptationState, name: str) -> Form:
    form = Form.zero(state.basis, 1)
    for symbol, text in FRAME_FORMS[name].items():
        form = form + state.eta(symbol) * parse(text, state.df.chart)
    return form


def golden_checks(
    state: AdaptationState,
    cc: CurvatureCoefficients,
    samples: int | None = None,
    tol: float | None = None,
    seed: int | None = None,
) -> list[GoldenCheck]:
    """Compare a prolonged state of the example with the closed-form results.

    Every comparison is a zero test of a difference.
    """
    chart = state.df.chart
    results = []

    def vanishes(e: Expr) -> bool:
        return is_zero(e, state.domain, samples, tol, seed)

    def form_vanishes(form: Form) -> bool:
        return all(vanishes(coeff) for _, coeff in form.items())

    def record(name: str, expected: str | Mapping[str, str], passed: bool) -> None:
        if not isinstance(expected, str):
            expected = " + ".join(f"({coeff}) {symbol}" for symbol, coeff in expected.items())
        results.append(GoldenCheck(name=name, expected=expected, passed=passed))

    for name, text in CONSTANTS.items():
        actual = state.constants.get(name)
        passed = actual is not None and vanishes(actual - parse(text, chart))
        record(f"constant {name}", text, passed)
    for symbol, actual in zip(CHART_FORMS, state.coframe.forms, strict=True):
        expected = expected_chart_form(state.df, state.coframe, symbol)
        record(f"coframe {symbol}", CHART_FORMS[symbol], form_vanishes(actual - expected))

    pc = state.pseudoconnection
    actual_forms = {
        "tau": pc.tau,
        "i rho": pc.rho * I,
        "i sigma": pc.sigma * I,
        "gamma1": pc.gamma1,
        "gamma2": pc.gamma2,
        "psi": state.psi,
    }
    for name, actual in actual_forms.items():
        expected = expected_frame_form(state, name)
        record(name, FRAME_FORMS[name], form_vanishes(actual - expected))

    for name, text in COEFFICIENTS.items():
        record(name, text, vanishes(getattr(cc, name) - parse(text, chart)))
    invariant = parse(INVARIANT, chart)
    for name in ("F1", "F2"):
        value = getattr(cc, name)
        record(f"|{name}|^2", INVARIANT, vanishes(value * value.conjugate() - invariant))
    return results
