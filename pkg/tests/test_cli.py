"""Unit tests for the command-line interface."""

import json
from unittest.mock import PropertyMock, patch

import pytest

from cli import (
    TOL_FLOOR,
    RunConfig,
    attach_expression_values,
    create_parser,
    run,
    sampling_overrides,
    to_config,
)
from config import Settings, settings


def _run_json(capsys, *argv):
    code = run(list(argv))
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("epsilon", ["1", "-1"])
def test_verify_mc_passes(capsys, epsilon):
    """Test that the Maurer-Cartan table verifies for both signs."""
    code, document = _run_json(capsys, "verify-mc", "--epsilon", epsilon)
    assert code == 0
    assert document["passed"]
    assert document["epsilon"] == int(epsilon)


def test_verify_mc_detects_corruption(capsys):
    """Test that a table with a flipped sign exits with a verification failure."""
    code, document = _run_json(capsys, "verify-mc", "--corrupt")
    assert code == 1
    assert not document["passed"]
    assert document["entries"]


def test_analyze_example(capsys):
    """Test the analysis record of the default defining function."""
    code, document = _run_json(capsys, "analyze")
    assert code == 0
    assert document["degenerate"]
    assert document["class"] == "definite"


@pytest.mark.parametrize(
    ("f", "rank", "degenerate"),
    [("0", 0, True), ("x1^2 + x2^2 + x3^2", 3, False)],
)
def test_analyze_other_functions(capsys, f, rank, degenerate):
    """Test that analysis succeeds whatever the verdict."""
    code, document = _run_json(capsys, "analyze", "--f", f)
    assert code == 0
    assert document["levi_rank"] == rank
    assert document["degenerate"] is degenerate


def test_analyze_accepts_function_with_leading_minus(capsys):
    """Test that a defining function starting with a minus sign is the value of --f."""
    code, document = _run_json(capsys, "analyze", "--f", "-x3*ln(x1*x2/x3^2)")
    assert code == 0
    assert document["degenerate"]
    assert document["class"] == "definite"


def test_attach_expression_values_only_joins_function_option():
    """Test that --f absorbs the next argument and other options are left alone."""
    argv = ["analyze", "--f", "-x1^2", "--seed", "3", "--f=-x2"]

    assert attach_expression_values(argv) == ["analyze", "--f=-x1^2", "--seed", "3", "--f=-x2"]


def test_analyze_parse_error(capsys):
    """Test that malformed input is a usage error."""
    code, document = _run_json(capsys, "analyze", "--f", "x1 +")
    assert code == 2
    assert document["kind"] == "ParseError"


def test_check_example_rejects_unreachable_tolerance(capsys):
    """Test that a tolerance below float resolution is refused before any work."""
    code, document = _run_json(capsys, "check-example", "--tol", "1e-30")
    assert code == 2
    assert document["kind"] == "PreconditionError"
    assert 1e-30 < TOL_FLOOR


def test_check_example_rejects_nondegenerate_function(capsys):
    """Test that a strictly pseudoconvex tube is an input error."""
    code, document = _run_json(capsys, "check-example", "--f", "x1^2 + x2^2 + x3^2")
    assert code == 2
    assert "nondegenerate" in document["error"]


def test_check_example_rejects_negative_epsilon(capsys):
    """Test that the example chain is only run for eps = +1."""
    code, _ = _run_json(capsys, "check-example", "--epsilon", "-1")
    assert code == 2


@pytest.mark.slow
def test_check_example_default(capsys):
    """Test the headline reproduction with default arguments."""
    code, document = _run_json(capsys, "check-example")
    assert code == 0
    assert document["passed"]
    assert not document["flat"]
    assert set(document["curvature"]) == {"F1", "F2", "T31b", "T32b", "F31", "F32"}
    assert all(check["passed"] for check in document["golden"])


def test_equivariance_passes(capsys):
    """Test symbolic and spot-check equivariance."""
    code, document = _run_json(capsys, "equivariance")
    assert code == 0
    assert document["symbolic"]["passed"]
    entries = document["residual"]["entries"]
    assert len(entries) == 4 and all(len(row) == 4 for row in entries)
    assert all(not entry["terms"] for row in entries for entry in row)
    assert set(document["spot_checks"]) == {"y = -1", "y = 0.5", "y = 3"}


def test_equivariance_detects_wrong_translation(capsys):
    """Test that the mutated translation exits with a verification failure."""
    code, document = _run_json(capsys, "equivariance", "--corrupt", "--y", "2")
    assert code == 1
    assert not document["passed"]
    assert any(entry["terms"] for row in document["residual"]["entries"] for entry in row)


def test_schema_lists_reports(capsys):
    """Test that the schema command covers every report."""
    code, document = _run_json(capsys, "schema")
    assert code == 0
    assert {"PipelineReport", "AnalysisRecord", "ResidualReport"} <= set(document["schemas"])


def test_text_report_written_to_file(tmp_path, capsys):
    """Test the text format and the output path."""
    path = tmp_path / "report.txt"
    code = run(["verify-mc", "--format", "text", "--output", str(path)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert path.read_text(encoding="utf-8").startswith("verify-mc: ok")


def test_invalid_sample_count_is_usage_error(capsys):
    """Test that samples must be at least 1."""
    assert run(["analyze", "--samples", "0"]) == 2


def test_bad_epsilon_is_rejected_by_parser():
    """Test that epsilon choices are enforced when parsing."""
    with pytest.raises(SystemExit) as info:
        create_parser().parse_args(["verify-mc", "--epsilon", "2"])
    assert info.value.code == 2


def test_run_config_validation():
    """Test the option constraints."""
    with pytest.raises(ValueError):
        RunConfig(command="verify-mc", tol=0)
    with pytest.raises(ValueError):
        RunConfig(command="verify-mc", epsilon=0)


def test_environment_seed_overrides_flag():
    """Test that CARTAN_CR_SEED wins over --seed."""
    args = create_parser().parse_args(["verify-mc", "--seed", "3"])
    with (
        patch.object(Settings, "seed_from_environment", new_callable=PropertyMock) as from_env,
        patch.object(settings, "SEED", 11),
    ):
        from_env.return_value = True
        assert to_config(args).seed == 11
        from_env.return_value = False
        assert to_config(args).seed == 3


def test_sampling_overrides_are_restored():
    """Test that command options only apply while the command runs."""
    before = settings.SAMPLES, settings.TOL, settings.SEED
    cfg = RunConfig(command="analyze", samples=7, tol=1e-6, seed=5)
    with sampling_overrides(cfg):
        assert (settings.SAMPLES, settings.TOL, settings.SEED) == (7, 1e-6, 5)
    assert (settings.SAMPLES, settings.TOL, settings.SEED) == before
