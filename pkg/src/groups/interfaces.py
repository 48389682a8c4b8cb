"""Scalar arithmetic interfaces for group matrices."""

from collections.abc import Sequence
from typing import Any, Protocol

Scalar = Any
Rows = Sequence[Sequence[Scalar]]


class ScalarField(Protocol):
    """Interface for the arithmetic a group matrix is evaluated in."""

    name: str

    def coerce(self, value: object) -> Scalar:
        """Convert a parameter value to a field scalar.

        Args:
            value: Number, Gaussian rational or expression
        Returns:
            The value as a scalar of this field
        """
        ...

    def exp_i(self, angle: object) -> Scalar:
        """Unit complex number ``e^(i*angle)`` for a real angle.

        Args:
            angle: Real parameter
        Returns:
            The phase as a field scalar
        """
        ...

    def conjugate(self, value: Scalar) -> Scalar:
        """Complex conjugate of a scalar."""
        ...

    def is_zero(self, value: Scalar) -> bool:
        """Whether a scalar vanishes in this field.

        Args:
            value: Scalar to test
        Returns:
            True for an exact zero, or a value within tolerance for inexact fields
        """
        ...

    def matrix(self, rows: Rows) -> list[list[Scalar]]:
        """Coerce every entry of a square matrix."""
        ...

    def matmul(self, a: Rows, b: Rows) -> list[list[Scalar]]:
        """Matrix product."""
        ...

    def inverse(self, a: Rows) -> list[list[Scalar]]:
        """Matrix inverse.

        Args:
            a: Square matrix
        Returns:
            The inverse matrix
        Raises:
            SingularMatrix: ``a`` is not invertible
        """
        ...

    def determinant(self, a: Rows) -> Scalar:
        """Matrix determinant."""
        ...
