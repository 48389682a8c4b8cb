"""CR analysis of tube hypersurfaces: Levi form, cubic form and its normalization."""

from .analysis import analyze, base_point, levi_frame
from .cubic import (
    conformal_unitary_check,
    cubic_data,
    cubic_matrix,
    isotropy_class,
    normalize_cubic,
    transport_cubic,
)
from .levi import (
    chart_coframe,
    contact_form,
    degeneracy_residual,
    diagonalizing_coframe,
    dz4_form,
    first_derivatives,
    levi_data,
    levi_matrix,
    levi_rank,
    levi_residual,
    vanishes,
    zero_test,
)
from .models import (
    AnalysisRecord,
    ComplexValue,
    CubicData,
    CubicModel,
    DefiningFunction,
    IsotropyClass,
    LeviData,
)

__all__ = [
    "AnalysisRecord",
    "ComplexValue",
    "CubicData",
    "CubicModel",
    "DefiningFunction",
    "IsotropyClass",
    "LeviData",
    "analyze",
    "base_point",
    "chart_coframe",
    "conformal_unitary_check",
    "contact_form",
    "cubic_data",
    "cubic_matrix",
    "degeneracy_residual",
    "diagonalizing_coframe",
    "dz4_form",
    "first_derivatives",
    "isotropy_class",
    "levi_data",
    "levi_frame",
    "levi_matrix",
    "levi_rank",
    "levi_residual",
    "normalize_cubic",
    "transport_cubic",
    "vanishes",
    "zero_test",
]
