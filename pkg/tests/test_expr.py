"""Unit tests for the scalar expression engine."""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from errors import (
    DomainViolation,
    ParseError,
    SamplerError,
    SingularMatrix,
    UnknownCoordinate,
    UnknownSymbol,
)
from expr import (
    Domain,
    Function,
    Quotient,
    RationalConstant,
    RealCoordinate,
    Sqrt,
    canonicalize,
    conjugate,
    constant,
    diff,
    evaluate,
    is_zero,
    max_residual,
    parse,
    substitute,
    to_string,
    tube_chart,
    wirtinger,
    wirtinger_bar,
)
from expr.canonical import NormalForm
from expr.linalg import as_matrix, determinant, identity, invert, matmul
from pipeline.golden import (
    CHART_FORMS,
    COEFFICIENTS,
    CONSTANTS,
    EXAMPLE_FUNCTION,
    FRAME_FORMS,
    INVARIANT,
)

ROUND_TRIP_CORPUS = [
    "-x3*ln(x1*x2/x3^2)",
    "sqrt(x3)/x1",
    "(1-i)/(4*sqrt(x3))",
    "x1^-3/2 + exp(2*x2)",
    "x1/2/3",
    "(x1 + x2)^1/3 - 2*i*x3",
    "1/(x1*x2 + 1)",
    "-(1+i)/(64*x3^3/2)",
    "ln(x1*x2/x3^2)/(8*x3) + 3/4",
]

COORDINATE_PAIRS = list(combinations(("x1", "x2", "x3"), 2))


def _levi_entries(f):
    """Second partials of a tube defining function."""
    return {
        (j, k): diff(diff(f, f"x{j}"), f"x{k}") for j in (1, 2, 3) for k in (1, 2, 3)
    }


def _golden_texts() -> list[str]:
    """Every closed-form coefficient of the example, its partials and its Levi entries."""
    f = parse(EXAMPLE_FUNCTION, tube_chart())
    texts = {EXAMPLE_FUNCTION, INVARIANT, *CONSTANTS.values(), *COEFFICIENTS.values()}
    for table in (CHART_FORMS, FRAME_FORMS):
        texts.update(text for row in table.values() for text in row.values())
    texts.update(to_string(diff(f, f"x{j}")) for j in (1, 2, 3))
    texts.update(to_string(entry) for entry in _levi_entries(f).values())
    return sorted(texts)


DERIVATIVE_CORPUS = sorted({*_golden_texts(), *ROUND_TRIP_CORPUS})


def test_parse_zero_gives_rational_constant(chart):
    """Test that the literal 0 parses to a zero constant."""
    assert parse("0", chart) == RationalConstant(Fraction(0))


def test_parse_quotient_of_sqrt_keeps_tree_shape(chart):
    """Test that sqrt(x3)/x1 parses to Quotient(Sqrt(x3), x1) and round-trips."""
    e = parse("sqrt(x3)/x1", chart)

    assert e == Quotient(Sqrt(RealCoordinate("x3")), RealCoordinate("x1"))
    assert canonicalize(e) == e
    assert canonicalize(parse(to_string(e), chart)) == canonicalize(e)


@pytest.mark.parametrize("text", ROUND_TRIP_CORPUS)
def test_print_then_parse_is_canonically_stable(chart, text):
    """Test that printing a canonical tree and parsing it back is the identity."""
    e = canonicalize(parse(text, chart))

    again = canonicalize(parse(to_string(e), chart))

    assert again == e


def test_rational_literal_binds_following_denominator(chart):
    """Test that x1/2/3 reads the literal 2/3 as one rational."""
    e = parse("x1/2/3", chart)

    assert e.normal == parse("3*x1/2", chart).normal


def test_parse_reports_byte_offset_of_syntax_error(chart):
    """Test that syntax errors carry the offset of the offending token."""
    with pytest.raises(ParseError) as excinfo:
        parse("x1 + $", chart)

    assert excinfo.value.offset == 5


def test_parse_reports_missing_operand_at_end(chart):
    """Test that a dangling operator fails at end of input."""
    with pytest.raises(ParseError) as excinfo:
        parse("x1 +", chart)

    assert excinfo.value.offset == 4


def test_parse_rejects_unknown_coordinate(chart):
    """Test that identifiers outside the chart are rejected with their offset."""
    with pytest.raises(UnknownCoordinate) as excinfo:
        parse("x1*q7", chart)

    assert excinfo.value.offset == 3


def test_parse_accepts_declared_functions_and_conjugates(chart):
    """Test that declared placeholder functions and their _bar forms parse."""
    e = parse("F1 + F1_bar", chart, functions=["F1"])

    assert e.normal == (Function("F1") + Function("F1", conjugated=True)).normal


def test_diff_of_example_function(example_f):
    """Test the first and second x1 partials of the example defining function."""
    first = diff(example_f, "x1")
    second = diff(first, "x1")

    assert first.normal == parse("-x3/x1", ["x1", "x3"]).normal
    assert second.normal == parse("x3/x1^2", ["x1", "x3"]).normal


def test_diff_of_constant_is_zero(chart):
    """Test that constants differentiate to zero."""
    assert diff(parse("7/3 + 2*i", chart), "x1") == RationalConstant(Fraction(0))


def test_diff_is_linear(chart):
    """Test linearity of diff over rational combinations."""
    e1 = parse("x1^2*ln(x2)", chart)
    e2 = parse("sqrt(x1*x3) + exp(x1)", chart)

    combined = diff(Fraction(2, 3) * e1 - 5 * e2, "x1")
    separate = Fraction(2, 3) * diff(e1, "x1") - 5 * diff(e2, "x1")

    assert combined == separate


def test_mixed_partials_commute_on_example(example_f):
    """Test that the x1, x3 mixed partials of the example agree under is_zero."""
    d13 = diff(diff(example_f, "x1"), "x3")
    d31 = diff(diff(example_f, "x3"), "x1")

    assert is_zero(d13 - d31)


@pytest.mark.parametrize("first, second", COORDINATE_PAIRS)
@pytest.mark.parametrize("text", DERIVATIVE_CORPUS)
def test_mixed_partials_commute(tube, text, first, second):
    """Test that mixed partials agree for every golden expression and coordinate pair."""
    e = parse(text, tube)

    residual = diff(diff(e, first), second) - diff(diff(e, second), first)

    assert is_zero(residual)


@pytest.mark.parametrize("name", ("x1", "x2", "x3"))
@pytest.mark.parametrize("text", DERIVATIVE_CORPUS)
def test_diff_agrees_with_central_differences(tube, text, name):
    """Test symbolic partials of every golden expression against finite differences."""
    e = parse(text, tube)
    symbolic = diff(e, name)
    rng = np.random.default_rng(3)
    step = 1e-6
    for _ in range(10):
        point = {f"x{j}": rng.uniform(0.5, 5.0) for j in (1, 2, 3)}
        plus = dict(point, **{name: point[name] + step})
        minus = dict(point, **{name: point[name] - step})
        numeric = (evaluate(e, plus) - evaluate(e, minus)) / (2 * step)
        exact = evaluate(symbolic, point)
        assert abs(numeric - exact) <= 1e-5 * max(1.0, abs(exact)), point


def test_wirtinger_on_standard_chart(chart):
    """Test that d/dz3 of x3^2 is x3 when z3 = x3 + i*y3."""
    e = parse("x3*x3", chart)

    assert wirtinger(e, "z3", chart).normal == parse("x3", chart).normal


def test_wirtinger_on_tube_chart_is_real_partial(tube, example_f):
    """Test that d/dz_j equals d/dx_j for functions of x_j = z_j + conj(z_j)."""
    for j in (1, 2, 3):
        assert wirtinger(example_f, f"z{j}", tube) == diff(example_f, f"x{j}")
        assert wirtinger_bar(example_f, f"z{j}", tube) == diff(example_f, f"x{j}")


def test_wirtinger_of_imaginary_part(chart):
    """Test d/dz and d/dconj(z) of y1 on the standard chart."""
    e = parse("y1", chart)

    assert wirtinger(e, "z1", chart).normal == parse("-i/2", chart).normal
    assert wirtinger_bar(e, "z1", chart).normal == parse("i/2", chart).normal


def test_wirtinger_of_constant_is_zero(chart):
    """Test that constants have vanishing Wirtinger derivatives."""
    assert wirtinger(parse("3", chart), "z1", chart) == RationalConstant(Fraction(0))


def test_wirtinger_rejects_unknown_complex_coordinate(chart):
    """Test that undeclared complex coordinates raise."""
    with pytest.raises(UnknownSymbol):
        wirtinger(parse("x1", chart), "z9", chart)


def test_evaluate_fundamental_coefficient_at_unit_point(chart):
    """Test evaluation of -(1-i)/(4*sqrt(x3)) at x3 = 1."""
    e = parse("-(1-i)/(4*sqrt(x3))", chart)

    assert evaluate(e, {"x3": 1.0}) == pytest.approx(-0.25 + 0.25j)


def test_evaluate_zero_and_log_of_one(chart):
    """Test trivial evaluations."""
    assert evaluate(parse("0", chart), {}) == 0
    assert evaluate(parse("ln(x1*x2/x3^2)", chart), {"x1": 1.0, "x2": 1.0, "x3": 1.0}) == 0


def test_evaluate_rejects_domain_violations(chart):
    """Test that log of a negative number and division by zero raise."""
    with pytest.raises(DomainViolation):
        evaluate(parse("ln(x1)", chart), {"x1": -1.0})
    with pytest.raises(DomainViolation):
        evaluate(parse("sqrt(x1 - 2)", chart), {"x1": 1.0})
    with pytest.raises(DomainViolation):
        evaluate(parse("1/(x1 - 1)", chart), {"x1": 1.0})


def test_division_by_literal_zero_raises(chart):
    """Test that building a quotient by the zero constant fails."""
    with pytest.raises(DomainViolation):
        parse("x1/0", chart).normal


def test_conjugation_is_an_involution(chart):
    """Test that conj(conj(e)) equals canonicalize(e) structurally."""
    e = parse("(1+2*i)*x1 + i*ln(x2) + F_bar*exp(i*x3)", chart, functions=["F"])

    assert conjugate(conjugate(e)) == canonicalize(e)


def test_conjugation_commutes_with_evaluation(chart):
    """Test eval(conj(e)) = conj(eval(e)) at sampled points."""
    e = parse("(3-i)*sqrt(x1)/(x2 + i*x3) + exp(i*x1)", chart)
    rng = np.random.default_rng(11)

    for _ in range(10):
        point = {name: rng.uniform(0.5, 3.0) for name in ("x1", "x2", "x3")}
        assert evaluate(conjugate(e), point) == pytest.approx(evaluate(e, point).conjugate())


def test_is_zero_on_degeneracy_identity(example_f):
    """Test that the Levi determinant identity of the example vanishes."""
    f = _levi_entries(example_f)
    residual = f[1, 1] * f[2, 2] * f[3, 3] - f[1, 1] * f[2, 3] ** 2 - f[2, 2] * f[1, 3] ** 2

    assert is_zero(residual, samples=100, tol=1e-12)


def test_is_zero_on_second_identity(example_f):
    """Test f13^2 - f11*f33/2 = 0 for the example."""
    f = _levi_entries(example_f)

    assert is_zero(f[1, 3] ** 2 - Fraction(1, 2) * f[1, 1] * f[3, 3])


def test_is_zero_rejects_nonzero_constant(chart):
    """Test that 1 is not zero."""
    assert not is_zero(parse("1", chart))


def test_is_zero_uses_sampling_for_logarithms(chart):
    """Test that log identities are certified numerically."""
    e = parse("ln(x1*x2) - ln(x1) - ln(x2)", chart)

    # normal forms do not expand logarithms
    assert not e.normal.is_zero
    assert is_zero(e)
    assert not is_zero(parse("ln(x1) - ln(x2)", chart))
    assert max_residual(e) < 1e-12


def test_is_zero_is_reproducible_for_fixed_seed(chart):
    """Test that the verdict does not depend on anything but the seed."""
    e = parse("ln(x1) - 1/1000000000000", chart)

    assert is_zero(e, seed=5) == is_zero(e, seed=5)


def test_is_zero_fails_on_unsatisfiable_domain(chart):
    """Test that an always-false domain predicate exhausts the sampler."""
    domain = Domain({"x1": (0.1, 10.0)}, predicate=lambda points: points["x1"] < 0)

    with pytest.raises(SamplerError):
        is_zero(parse("ln(x1)", chart), domain=domain)


def test_empty_interval_is_rejected():
    """Test that a domain with lo >= hi cannot be built."""
    with pytest.raises(SamplerError):
        Domain({"x1": (1.0, 1.0)})


def test_substitute_replaces_coordinates_and_functions(chart):
    """Test substitution of a coordinate and of a placeholder function."""
    e = parse("x1*F + F_bar", chart, functions=["F"])

    result = substitute(e, {"x1": 2, Function("F"): constant(1j)})

    assert result.normal == NormalForm.constant(1j)


def test_canonical_arithmetic_folds_radicals(chart):
    """Test exact folding of constant radicals and coordinate powers."""
    root = parse("sqrt(2)", chart)
    x3 = parse("x3", chart)

    assert (root * root).normal == NormalForm.constant(2)
    assert (x3 ** Fraction(1, 2) * x3 ** Fraction(-3, 2)).normal == (1 / x3).normal
    assert parse("sqrt(8)", chart).normal == (2 * root).normal


def test_square_root_of_square_folds_only_on_positive_coordinates(chart, tube):
    """Test that sqrt(x1^2) folds to x1 while sqrt(y1^2) and sqrt(v^2) keep their sign."""
    assert parse("sqrt(x1^2) - x1", chart).normal.is_zero
    assert not is_zero(parse("sqrt(y1^2) - y1", chart))
    assert not is_zero(parse("sqrt(v^2) - v", tube))
    assert is_zero(parse("sqrt(y1^2)*sqrt(y1^2) - y1^2", chart))


def test_square_root_of_square_evaluates_to_modulus(chart):
    """Test that the canonical form of sqrt(y1^2) is |y1| at negative points."""
    e = canonicalize(parse("sqrt(y1^2)", chart))

    assert evaluate(e, {"y1": -0.5}) == pytest.approx(0.5)
    assert diff(e, "y1").normal == parse("y1/sqrt(y1^2)", chart).normal


def test_linalg_inverse_and_determinant(chart):
    """Test exact inversion of a matrix with coordinate entries."""
    x1 = parse("x1", chart).normal
    m = as_matrix([[x1, 1, 0], [0, 2, 1j], [0, 0, 1]])

    product = matmul(m, invert(m))

    assert product == identity(3)
    assert determinant(m) == x1 * 2


def test_linalg_rejects_singular_matrix(chart):
    """Test that dependent rows give a zero determinant and no inverse."""
    x1 = parse("x1", chart).normal
    m = as_matrix([[x1, 2 * x1], [1, 2]])

    assert determinant(m).is_zero
    with pytest.raises(SingularMatrix):
        invert(m)
