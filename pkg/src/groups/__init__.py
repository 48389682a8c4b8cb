"""Structure groups, the su* parallelism and the structure equations of the prolonged bundle."""

from .fields import EXACT, ExactField, NumericField, field_for
from .interfaces import ScalarField
from .matrices import PROLONGATION_SLOTS, compose, frame_action, matrix_of
from .membership import (
    in_g0,
    in_g1,
    in_g2,
    in_g3,
    in_g4,
    in_su_star,
    is_hermitian_frame,
    pstar_decompose,
)
from .models import GroupElement, GroupTag, HermitianForm
from .parallelism import OMEGA_SYMBOLS, ParallelismLayout, assemble_omega
from .prolongation import equivariance_residual, prolong_pullback, pstar_image
from .sampling import random_element
from .structure import (
    CONNECTION_SYMBOLS,
    FIBRE_COORDINATE,
    SE_SYMBOLS,
    SEMIBASIC_SYMBOLS,
    TORSION_NAMES,
    basis_coframing,
    expected_curvature,
    frobenius_residuals,
    invariant_differentials,
    maurer_cartan_terms,
    mc_coframe,
    se_basis,
    se_coframe,
    semibasic_defect,
    torsion_terms,
    verify_maurer_cartan,
)

__all__ = [
    "CONNECTION_SYMBOLS",
    "EXACT",
    "FIBRE_COORDINATE",
    "OMEGA_SYMBOLS",
    "PROLONGATION_SLOTS",
    "SEMIBASIC_SYMBOLS",
    "SE_SYMBOLS",
    "TORSION_NAMES",
    "ExactField",
    "GroupElement",
    "GroupTag",
    "HermitianForm",
    "NumericField",
    "ParallelismLayout",
    "ScalarField",
    "assemble_omega",
    "basis_coframing",
    "compose",
    "equivariance_residual",
    "expected_curvature",
    "field_for",
    "frame_action",
    "frobenius_residuals",
    "in_g0",
    "in_g1",
    "in_g2",
    "in_g3",
    "in_g4",
    "in_su_star",
    "invariant_differentials",
    "is_hermitian_frame",
    "matrix_of",
    "maurer_cartan_terms",
    "mc_coframe",
    "prolong_pullback",
    "pstar_decompose",
    "pstar_image",
    "random_element",
    "se_basis",
    "se_coframe",
    "semibasic_defect",
    "torsion_terms",
    "verify_maurer_cartan",
]
