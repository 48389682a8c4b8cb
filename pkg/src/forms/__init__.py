"""Exterior algebra of differential forms over chart, frame and abstract coframes."""

from .coframe import (
    FRAME_SYMBOLS,
    AbstractCoframe,
    ChartCoframe,
    Coframe,
    FrameCoframe,
    d_abstract,
    d_coordinate,
    d_squared_residuals,
    frame_basis,
)
from .form import Form, coefficient_of, conjugate, reduce_mod_ideal, substitute_coframe, wedge
from .matrix import (
    MatrixForm,
    adjoint,
    bianchi_residual,
    curvature,
    exterior_derivative,
    matrix_wedge,
)
from .models import Basis, BasisOneForm, complex_pair
from .serialize import FormModel, MatrixFormModel, form_from_model, form_to_model, matrix_to_model

__all__ = [
    "FRAME_SYMBOLS",
    "AbstractCoframe",
    "Basis",
    "BasisOneForm",
    "ChartCoframe",
    "Coframe",
    "Form",
    "FormModel",
    "FrameCoframe",
    "MatrixForm",
    "MatrixFormModel",
    "adjoint",
    "bianchi_residual",
    "coefficient_of",
    "complex_pair",
    "conjugate",
    "curvature",
    "d_abstract",
    "d_coordinate",
    "d_squared_residuals",
    "exterior_derivative",
    "form_from_model",
    "form_to_model",
    "frame_basis",
    "matrix_to_model",
    "matrix_wedge",
    "reduce_mod_ideal",
    "substitute_coframe",
    "wedge",
]
