"""Shared fixtures."""

import pytest

from config import settings
from cr import DefiningFunction
from expr import parse, standard_chart, tube_chart
from main import configure_logging

EXAMPLE_F = "-x3*ln(x1*x2/x3^2)"


@pytest.fixture(scope="session", autouse=True)
def logging_to_stderr():
    """Configure logging once so reports on stdout stay parseable."""
    configure_logging(settings.LOG_LEVEL)


@pytest.fixture
def chart():
    """Create a standard chart on C^3 with z_j = x_j + i*y_j."""
    return standard_chart(3)


@pytest.fixture
def tube():
    """Create the tube hypersurface chart."""
    return tube_chart()


@pytest.fixture
def example_f(tube):
    """Parse the non-flat example defining function."""
    return parse(EXAMPLE_F, tube)


@pytest.fixture
def example_df():
    """Create the non-flat example as a defining function."""
    return DefiningFunction.from_text(EXAMPLE_F)

