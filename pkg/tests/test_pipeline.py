"""Unit tests for the adaptation chain, the pseudoconnection and the curvature."""

from dataclasses import replace

import pytest

from cr import DefiningFunction
from errors import (
    ChainError,
    ConstraintViolation,
    ExtractionError,
    InconsistentCurvature,
    PreconditionError,
)
from expr import evaluate, is_zero, parse, to_expr, tube_chart
from expr.linalg import matmul
from groups import GroupTag, frame_action
from pipeline import (
    AdaptationState,
    CurvatureCoefficients,
    Level,
    adapt_cubic,
    adapt_levi,
    adapt_shift,
    build_report,
    curvature_coefficients,
    curvature_residuals,
    flat_model_state,
    golden_checks,
    is_flat,
    prolong,
    pseudoconnection,
    run_example_chain,
    solve_psi,
    verify_adapted,
    verify_se_pullback,
)
from pipeline.golden import CONSTANTS

POINT = {"x1": 1.0, "x2": 1.0, "x3": 1.0, "y1": 0.0, "y2": 0.0, "y3": 0.0, "v": 0.0}


@pytest.fixture(scope="module")
def adapted():
    """Run the adaptation chain on the non-flat example."""
    return run_example_chain(DefiningFunction.from_text("-x3*ln(x1*x2/x3^2)"))


@pytest.fixture(scope="module")
def prolonged(adapted):
    """Attach the pseudoconnection and psi to the adapted example."""
    return prolong(adapted)


@pytest.fixture(scope="module")
def coefficients(prolonged):
    """Read the curvature coefficients of the prolonged example."""
    return curvature_coefficients(prolonged)


def _zero_cc(chart):
    zero = parse("0", chart)
    return {name: zero for name in ("F1", "F2", "T31b", "T32b", "F31", "F32")}


def test_state_rejects_bad_epsilon(example_df):
    """Test that epsilon must be +1 or -1."""
    state = adapt_levi(example_df)
    with pytest.raises(ConstraintViolation):
        replace(state, epsilon=0)


def test_state_rejects_psi_without_pseudoconnection():
    """Test that psi cannot be attached before the pseudoconnection."""
    flat = flat_model_state()
    with pytest.raises(ConstraintViolation):
        AdaptationState(flat.coframe, Level.ADAPTED, psi=flat.psi)


def test_curvature_coefficients_reject_unknown_names():
    """Test that only undetermined torsion names may be supplied."""
    values = _zero_cc(tube_chart())
    with pytest.raises(ConstraintViolation):
        CurvatureCoefficients(**values, undetermined={"F1": values["F1"]})


def test_levi_stage_requires_degenerate_levi_form():
    """Test that a nondegenerate hypersurface fails the Levi precondition."""
    df = DefiningFunction.from_text("x1^2 + x2^2 + x3^2")
    with pytest.raises(PreconditionError) as info:
        adapt_levi(df)
    assert info.value.condition == "det = 0"


def test_first_approximation_is_levi_normalized(example_df):
    """Test that the level-1 frame passes the level-1 check and fails the level-2 check."""
    state = adapt_levi(example_df)
    assert state.level == Level.LEVI
    assert verify_adapted(state, 0).passed
    assert verify_adapted(state, 1).passed
    assert not verify_adapted(state, 2).passed


def test_verify_adapted_rejects_unknown_level(example_df):
    """Test that there is no level-3 normal form."""
    with pytest.raises(PreconditionError):
        verify_adapted(adapt_levi(example_df), 3)


def test_cubic_stage_requires_positive_epsilon(example_df):
    """Test that the cubic move is refused for eps = -1."""
    state = replace(adapt_levi(example_df), epsilon=-1)
    with pytest.raises(ChainError) as info:
        adapt_cubic(state)
    assert info.value.coefficient == "epsilon"


def test_cubic_stage_normalizes_cubic_form(example_df):
    """Test that the G1 move gives b3 = 1/x3 and the level-2 normal form."""
    state = adapt_cubic(adapt_levi(example_df))
    assert state.level == Level.CUBIC
    assert is_zero(state.constants["b3"] - parse(CONSTANTS["b3"], example_df.chart))
    assert verify_adapted(state, 2).passed


def test_pseudoconnection_requires_full_adaptation(example_df):
    """Test that the pseudoconnection is not read off a partially adapted frame."""
    with pytest.raises(ExtractionError):
        pseudoconnection(adapt_levi(example_df))


def test_flat_model_is_flat():
    """Test that the Maurer-Cartan coframe has vanishing curvature coefficients."""
    flat = flat_model_state()
    cc = curvature_coefficients(flat)
    assert all(value.normal.is_zero for value in cc.determined.values())
    assert is_flat(cc)
    assert verify_adapted(flat, 4).passed
    assert verify_se_pullback(flat, cc, strict=True).passed


def test_flat_model_psi_is_its_basis_form():
    """Test that psi of the flat model is the psi basis form."""
    flat = flat_model_state()
    assert (solve_psi(flat) - flat.eta("psi")).is_zero


def test_flat_model_report():
    """Test that the flat model report passes without golden comparisons."""
    flat = flat_model_state()
    report = build_report(flat, curvature_coefficients(flat), tol=1e-9)
    assert report.flat
    assert report.passed
    assert report.golden == []
    assert report.coframe == {}


def test_se_check_requires_psi():
    """Test that the structure-equation check needs a prolonged state."""
    flat = flat_model_state()
    unprolonged = replace(flat, psi=None)
    with pytest.raises(ExtractionError):
        verify_se_pullback(unprolonged, curvature_coefficients(flat))


def test_is_flat_requires_both_coefficients():
    """Test that exactly one vanishing fundamental coefficient is inconsistent."""
    chart = tube_chart()
    values = {**_zero_cc(chart), "F1": parse("1/sqrt(x3)", chart)}
    with pytest.raises(InconsistentCurvature):
        is_flat(CurvatureCoefficients(**values), chart.domain)


@pytest.mark.slow
def test_chain_constants(adapted):
    """Test the solved constants of the example chain."""
    chart = adapted.df.chart
    assert adapted.level == Level.ADAPTED
    for name, text in CONSTANTS.items():
        assert is_zero(adapted.constants[name] - parse(text, chart), chart.domain), name


@pytest.mark.slow
def test_chain_records_group_elements(adapted):
    """Test that the applied elements are one G1, one G2 and one G3 move."""
    assert [g.tag for g in adapted.applied] == [GroupTag.G1, GroupTag.G2, GroupTag.G3]


@pytest.mark.slow
def test_chain_group_product_gives_final_frame(adapted):
    """Test that the product of the applied matrices maps the level-1 frame to the final one."""
    rows = adapt_levi(adapted.df).coframe.rows
    for g in adapted.applied:
        rows = matmul(frame_action(g), rows)
    for expected, actual in zip(rows, adapted.coframe.rows, strict=True):
        for a, b in zip(expected, actual, strict=True):
            assert is_zero(to_expr(a - b), adapted.domain)


@pytest.mark.slow
def test_chain_passes_level_checks(adapted):
    """Test that the adapted frame passes the level-2 and level-4 checks."""
    assert verify_adapted(adapted, 2).passed
    assert verify_adapted(adapted, 4).passed


@pytest.mark.slow
def test_chain_is_deterministic(example_df, adapted):
    """Test that a second run solves the same shift constants."""
    state = adapt_shift(adapt_cubic(adapt_levi(example_df)))
    for name in ("c1", "c2"):
        assert str(state.constants[name]) == str(adapted.constants[name])


@pytest.mark.slow
def test_golden_results(prolonged, coefficients):
    """Test the example against its closed-form frame, pseudoconnection and curvature."""
    failures = [check.name for check in golden_checks(prolonged, coefficients) if not check.passed]
    assert failures == []


@pytest.mark.slow
def test_curvature_residuals_vanish(prolonged, coefficients):
    """Test that the curvature built from the coefficients matches the recomputed one."""
    domain = prolonged.domain
    for label, residual in curvature_residuals(prolonged, coefficients).items():
        assert all(is_zero(to_expr(c), domain) for _, c in residual.terms), label


@pytest.mark.slow
def test_example_is_not_flat(coefficients, prolonged):
    """Test that |F1|^2 = 1/8 at x3 = 1."""
    assert not is_flat(coefficients, prolonged.domain)
    f1 = coefficients.F1
    assert evaluate(f1 * f1.conjugate(), POINT) == pytest.approx(0.125)


@pytest.mark.slow
def test_structure_equations_hold(prolonged, coefficients):
    """Test the final structure equations on the example section."""
    assert verify_se_pullback(prolonged, coefficients, strict=True).passed


@pytest.mark.slow
def test_example_report(prolonged, coefficients):
    """Test that the example report records three stages and passes."""
    report = build_report(prolonged, coefficients, tol=1e-8)
    assert [stage.level for stage in report.stages] == [2, 3, 4]
    assert [stage.tag for stage in report.stages] == ["G1", "G2", "G3"]
    assert not report.flat
    assert report.golden
    assert report.passed
    assert set(report.coframe) == {"eta0", "eta1", "eta2", "eta3"}
