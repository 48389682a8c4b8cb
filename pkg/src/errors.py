"""Error hierarchy shared by all packages."""


class CartanError(ValueError):
    """Base class for every failure raised by the toolkit."""


class ParseError(CartanError):
    """Expression text does not conform to the grammar."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownCoordinate(ParseError):
    """An identifier is neither a chart coordinate nor a declared function."""


class DomainViolation(CartanError):
    """Evaluation left the real-analytic domain (ln/sqrt argument, division by zero)."""


class SamplerError(CartanError):
    """No admissible sample points could be drawn within the retry budget."""


class MixedCoframes(CartanError):
    """Two forms over different bases were combined."""


class MissingConjugate(CartanError):
    """A basis symbol has no declared conjugate partner."""


class UndeclaredDifferential(CartanError):
    """The exterior derivative reached a symbol or function with no declared differential."""


class UnknownSymbol(CartanError):
    """A symbol is not declared by the chart or coframe."""


class MissingSubstitution(CartanError):
    """A coframe substitution dictionary does not cover a basis symbol."""


class DegreeOverflow(CartanError):
    """A form would exceed the supported degree."""


class DegreeMismatch(CartanError):
    """Forms of different degrees were added."""


class DimensionMismatch(CartanError):
    """Matrix dimensions do not agree."""


class SingularMatrix(CartanError):
    """A matrix that must be inverted is singular."""


class ConstraintViolation(CartanError):
    """Group parameters or cubic data violate their defining constraints."""


class PreconditionError(CartanError):
    """A geometric precondition of an analysis step failed."""

    def __init__(self, condition: str, message: str | None = None) -> None:
        super().__init__(message or f"precondition failed: {condition}")
        self.condition = condition


class ShapeViolation(CartanError):
    """Structure equations do not have the required normal form."""


class UnsupportedIsotropy(CartanError):
    """Isotropy-preserving cubic forms are not normalized."""


class DegenerateCubic(CartanError):
    """The cubic form is rank deficient."""


class NormalizationError(CartanError):
    """A normalization failed its recomputation check."""


class ChainError(CartanError):
    """A coefficient equation of the adaptation chain could not be solved."""

    def __init__(self, coefficient: str, message: str) -> None:
        super().__init__(f"{coefficient}: {message}")
        self.coefficient = coefficient


class ExtractionError(CartanError):
    """Pseudoconnection or psi extraction was inconsistent."""


class InconsistentCurvature(CartanError):
    """Curvature entries contradict the expected layout."""


class ResidualOutsideSpan(CartanError):
    """A structure-equation residual has terms outside its allowed monomial span."""
