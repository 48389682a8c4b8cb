"""Unit tests for the Levi form, the cubic form and its normalization."""

import cmath

import numpy as np
import pytest

from cr import (
    CubicData,
    DefiningFunction,
    IsotropyClass,
    analyze,
    chart_coframe,
    conformal_unitary_check,
    contact_form,
    cubic_data,
    cubic_matrix,
    degeneracy_residual,
    diagonalizing_coframe,
    dz4_form,
    isotropy_class,
    levi_frame,
    levi_matrix,
    levi_rank,
    normalize_cubic,
    transport_cubic,
)
from errors import (
    ConstraintViolation,
    DegenerateCubic,
    PreconditionError,
    UnsupportedIsotropy,
)
from expr import evaluate, is_zero, parse
from expr.canonical import I
from forms import FrameCoframe, coefficient_of
from groups import GroupElement, GroupTag, NumericField, frame_action, matrix_of, random_element

POINT = {"x1": 1.0, "x2": 1.0, "x3": 1.0, "y1": 0.0, "y2": 0.0, "y3": 0.0, "v": 0.0}


@pytest.fixture
def rng():
    """Create a seeded numpy generator."""
    return np.random.default_rng(7)


def _same(a, b, domain):
    return all(is_zero(coefficient_of(a - b, key), domain) for key, _ in (a - b).items())


def _second_approximation(df):
    frame = levi_frame(df)
    move = GroupElement.g1(
        2, ((1, I), (1, -I)), b=(0, 0, parse("1/x3", df.chart)), epsilon=1
    )
    return frame.transform(frame_action(move), "second")


def test_defining_function_must_be_real():
    """Test that a complex-valued defining function is rejected."""
    with pytest.raises(ConstraintViolation):
        DefiningFunction.from_text("i*x1")


def test_contact_form_of_flat_hyperplane():
    """Test that f = 0 gives theta0 = i dz4."""
    df = DefiningFunction.from_text("0")
    theta0 = contact_form(df)
    assert (theta0 - dz4_form(df) * I).is_zero
    assert (theta0 + chart_coframe(df).one_form("dv")).is_zero


def test_contact_form_of_square():
    """Test that f = x1^2 gives theta0 = -2i x1 dz1 + i dz4."""
    df = DefiningFunction.from_text("x1^2")
    coframe = chart_coframe(df)
    expected = dz4_form(df, coframe) * I - coframe.one_form("dz1", parse("2*i*x1", df.chart))
    assert (contact_form(df, coframe) - expected).is_zero


def test_contact_form_is_real(example_df):
    """Test that the contact form of the example equals its conjugate."""
    theta0 = contact_form(example_df)
    assert _same(theta0, theta0.conjugate(), example_df.chart.domain)


def test_contact_form_of_example(example_df):
    """Test the dz1 and dz3 coefficients of the example contact form after eliminating dz4."""
    theta0 = contact_form(example_df)
    domain = example_df.chart.domain
    dz1 = coefficient_of(theta0, ["dz1"]) - parse("i*x3/(2*x1)", example_df.chart)
    dz3 = coefficient_of(theta0, ["dz3"]) - parse("i*(ln(x1*x2/x3^2) - 2)/2", example_df.chart)
    assert is_zero(dz1, domain)
    assert is_zero(dz3, domain)


def test_levi_matrix_of_example(example_df):
    """Test the second derivatives of the example defining function."""
    m = levi_matrix(example_df)
    domain = example_df.chart.domain
    expected = {
        (0, 0): "x3/x1^2",
        (0, 1): "0",
        (0, 2): "-1/x1",
        (1, 2): "-1/x2",
        (2, 2): "2/x3",
    }
    for (j, k), text in expected.items():
        assert is_zero(m[j][k] - parse(text, example_df.chart), domain)
        assert is_zero(m[j][k] - m[k][j], domain)


def test_levi_matrix_at_unit_point(example_df):
    """Test the Levi matrix at (1, 1, 1) and its vanishing determinant."""
    values = np.array([[evaluate(e, POINT) for e in row] for row in levi_matrix(example_df)])
    expected = np.array([[1, 0, -1], [0, 1, -1], [-1, -1, 2]])
    assert np.allclose(values, expected)
    assert abs(np.linalg.det(values)) < 1e-12


def test_levi_matrix_is_symmetric_for_polynomial():
    """Test symmetry of the Levi matrix of a mixed polynomial."""
    df = DefiningFunction.from_text("x1^3*x2 + x2*x3^2 - 4*x1*x3")
    m = levi_matrix(df)
    for j in range(3):
        for k in range(3):
            assert is_zero(m[j][k] - m[k][j], df.chart.domain)


def test_flat_levi_matrix_is_zero():
    """Test that f = 0 has a vanishing Levi matrix and rank 0."""
    df = DefiningFunction.from_text("0")
    assert all(entry.is_literal_zero for row in levi_matrix(df) for entry in row)
    assert levi_rank(df) == 0


def test_degeneracy_residual(example_df):
    """Test the degeneracy residual of the example, a sum of squares and the flat case."""
    assert is_zero(degeneracy_residual(example_df), example_df.chart.domain, tol=1e-12)
    squares = DefiningFunction.from_text("x1^2 + x2^2 + x3^2")
    assert is_zero(degeneracy_residual(squares) - 8)
    assert degeneracy_residual(DefiningFunction.from_text("0")).is_literal_zero


def test_degeneracy_residual_requires_f12():
    """Test that a mixed x1 x2 term is rejected with the failing condition."""
    with pytest.raises(PreconditionError) as e:
        degeneracy_residual(DefiningFunction.from_text("x1*x2 + x3^2"))
    assert e.value.condition == "f12 = 0"


def test_levi_rank(example_df):
    """Test the Levi rank of the example and of a nondegenerate hypersurface."""
    assert levi_rank(example_df) == 2
    assert levi_rank(DefiningFunction.from_text("x1^2 + x2^2 + x3^2")) == 3


def test_diagonalizing_coframe_matches_first_approximation(example_df):
    """Test the coefficients of theta1, theta2, theta3 for signs (-, -)."""
    _, theta1, theta2, theta3 = diagonalizing_coframe(example_df)
    domain = example_df.chart.domain
    chart = example_df.chart
    checks = [
        (theta1, "dz1", "sqrt(x3)/x1"),
        (theta1, "dz3", "-1/sqrt(x3)"),
        (theta2, "dz2", "sqrt(x3)/x2"),
        (theta2, "dz3", "-1/sqrt(x3)"),
        (theta3, "dz3", "1"),
    ]
    for form, symbol, text in checks:
        assert is_zero(coefficient_of(form, [symbol]) - parse(text, chart), domain)
    assert coefficient_of(theta1, ["dz2"]).is_literal_zero


def test_wrong_signs_fail_levi_diagonality(example_df):
    """Test that the sign choice (+, -) is rejected by the Levi check."""
    with pytest.raises(PreconditionError) as e:
        diagonalizing_coframe(example_df, (1, -1))
    assert e.value.condition == "levi-diagonal"


def test_non_positive_diagonal_is_rejected():
    """Test that f33 <= 0 violates a precondition."""
    with pytest.raises(PreconditionError) as e:
        diagonalizing_coframe(DefiningFunction.from_text("x1^2 + x2^2 - x3^2"))
    assert e.value.condition == "f33 > 0"


def test_cubic_matrix_of_first_approximation(example_df):
    """Test that the Levi matrix is the identity and u = diag(1/x3, 1/x3)."""
    ell, u = cubic_matrix(levi_frame(example_df))
    domain = example_df.chart.domain
    inverse = parse("1/x3", example_df.chart)
    for j in range(2):
        for k in range(2):
            assert is_zero(ell[j][k] - (1 if j == k else 0), domain)
            assert is_zero(u[j][k] - (inverse if j == k else 0), domain)


def test_cubic_matrix_of_second_approximation(example_df):
    """Test that the fixed G1 move makes u antidiagonal."""
    ell, u = cubic_matrix(_second_approximation(example_df))
    domain = example_df.chart.domain
    for j in range(2):
        for k in range(2):
            assert is_zero(ell[j][k] - (1 if j == k else 0), domain)
            assert is_zero(u[j][k] - (0 if j == k else 1), domain)
    cd = cubic_data(ell, u, POINT)
    assert cd.triple == pytest.approx((0, 1, 0))
    assert isotropy_class(cd) is IsotropyClass.DEFINITE


def test_frame_transform_agrees_with_from_forms(example_df):
    """Test that transforming the frame reproduces a frame built from the moved forms."""
    moved = _second_approximation(example_df)
    rebuilt = FrameCoframe.from_forms(moved.chart, moved.forms, "rebuilt")
    assert all(
        _same(a, b, example_df.chart.domain)
        for a, b in zip(moved.forms, rebuilt.forms, strict=True)
    )


@pytest.mark.parametrize("epsilon", [1, -1])
def test_conformal_unitary_antidiagonal(epsilon):
    """Test that the antidiagonal cubic matrix has factor eps."""
    ell = [[1, 0], [0, epsilon]]
    lam = conformal_unitary_check(ell, [[0, epsilon], [1, 0]])
    assert lam == pytest.approx(epsilon)
    assert conformal_unitary_check(ell, [[1, 0], [0, 1]]) == pytest.approx(1)


def test_conformal_unitary_rank_deficient():
    """Test that a rank-one cubic matrix has no conformal factor."""
    assert conformal_unitary_check([[1, 0], [0, 1]], [[1, 0], [0, 0]]) is None


@pytest.mark.parametrize(
    "triple, epsilon, expected",
    [
        ((0, 1, 0), -1, IsotropyClass.SWITCHING),
        ((1, 0, 1), -1, IsotropyClass.PRESERVING),
        ((1, 1, -1), -1, IsotropyClass.DEGENERATE),
        ((1, 0, 1), 1, IsotropyClass.DEFINITE),
        ((0, 1, 0), 1, IsotropyClass.DEFINITE),
        ((0, 0, 0), 1, IsotropyClass.DEGENERATE),
    ],
)
def test_isotropy_class(triple, epsilon, expected):
    """Test the isotropy class of representative triples."""
    assert isotropy_class(CubicData(epsilon, *triple)) is expected


def test_isotropy_class_requires_conformal_unitary():
    """Test that |U1| != |U2| is a constraint violation."""
    with pytest.raises(ConstraintViolation):
        isotropy_class(CubicData(-1, 1, 0, 2))


def test_normalize_identity():
    """Test that the normalized triple is fixed by the identity."""
    g = normalize_cubic(CubicData(-1, 0, 1, 0))
    assert np.allclose(matrix_of(g, NumericField()), np.eye(4))


def test_normalize_phase_is_a_rotation():
    """Test that a unimodular U is removed by b3 alone."""
    phase = cmath.exp(0.7j)
    g = normalize_cubic(CubicData(1, 0, phase, 0))
    m = np.array(matrix_of(g, NumericField()))
    assert np.allclose(m[1:3, 1:3], np.eye(2))
    assert m[3, 3] == pytest.approx(phase)


def test_normalize_rejects_unsupported_classes():
    """Test the isotropy-preserving and degenerate failures."""
    with pytest.raises(UnsupportedIsotropy):
        normalize_cubic(CubicData(-1, 1, 0, 1))
    with pytest.raises(DegenerateCubic):
        normalize_cubic(CubicData(-1, 1, 1, -1))


def test_normalize_definite_diagonal():
    """Test normalization of a diagonal definite triple."""
    cd = CubicData(1, 0.5, 0, 0.5)
    moved = transport_cubic(cd, normalize_cubic(cd))
    assert moved.triple == pytest.approx((0, 1, 0), abs=1e-9)


@pytest.mark.parametrize("epsilon", [1, -1])
def test_normalize_random_transports(epsilon, rng):
    """Test that normalization inverts random G1 transports of the normal form."""
    base = CubicData(epsilon, 0, 1, 0)
    for _ in range(1000):
        g = random_element(GroupTag.G1, epsilon, rng)
        cd = transport_cubic(base, g)
        moved = transport_cubic(cd, normalize_cubic(cd))
        assert abs(moved.u1) < 1e-9
        assert abs(moved.u - 1) < 1e-9
        assert abs(moved.u2) < 1e-9


@pytest.mark.parametrize(
    "triple, epsilon",
    [((0, 1, 0), -1), ((1, 0, 1), -1), ((1, 0, 1), 1), ((0, 1, 0), 1)],
)
def test_isotropy_class_is_invariant(triple, epsilon, rng):
    """Test that random G1 transports keep the isotropy class and conformal factor."""
    cd = CubicData(epsilon, *triple)
    kind = isotropy_class(cd)
    ell = [[1, 0], [0, epsilon]]
    for _ in range(1000):
        moved = transport_cubic(cd, random_element(GroupTag.G1, epsilon, rng))
        assert isotropy_class(moved) is kind
        assert conformal_unitary_check(ell, moved.matrix) is not None


def test_analyze_example(example_df):
    """Test the analysis record of the example."""
    record = analyze(example_df)
    assert record.levi_rank == 2
    assert record.degenerate
    assert record.isotropy is IsotropyClass.DEFINITE
    assert record.cubic.U1.re == pytest.approx(1)
    assert record.normalized.U.re == pytest.approx(1)
    assert record.normalized.U1.re == pytest.approx(0, abs=1e-9)
    document = record.model_dump(by_alias=True)
    assert document["class"] == "definite"
    assert not record.notes


def test_analyze_flat_and_nondegenerate():
    """Test the records of the hyperplane and of a strictly pseudoconvex tube."""
    flat = analyze(DefiningFunction.from_text("0"))
    assert flat.levi_rank == 0
    assert flat.degenerate
    squares = analyze(DefiningFunction.from_text("x1^2 + x2^2 + x3^2"))
    assert not squares.degenerate
    assert squares.isotropy is None
