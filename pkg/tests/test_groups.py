"""Unit tests for the structure groups, the parallelism and the structure equations."""

from fractions import Fraction

import numpy as np
import pytest

from errors import ConstraintViolation, MissingSubstitution
from expr import Function, parse
from expr.canonical import I, as_normal
from forms import Form, MatrixForm, curvature
from groups import (
    EXACT,
    GroupElement,
    GroupTag,
    HermitianForm,
    NumericField,
    assemble_omega,
    basis_coframing,
    compose,
    equivariance_residual,
    expected_curvature,
    frobenius_residuals,
    in_g0,
    in_g1,
    in_g2,
    in_g3,
    in_g4,
    in_su_star,
    invariant_differentials,
    is_hermitian_frame,
    matrix_of,
    prolong_pullback,
    pstar_decompose,
    random_element,
    se_basis,
    se_coframe,
    semibasic_defect,
    verify_maurer_cartan,
)
from reports import ResidualReport

TOWER = {
    GroupTag.G0: (in_g0,),
    GroupTag.G1: (in_g0, in_g1),
    GroupTag.G2: (in_g0, in_g1, in_g2),
    GroupTag.G3: (in_g0, in_g1, in_g2, in_g3),
    GroupTag.G4: (in_g0, in_g1, in_g2, in_g3, in_g4),
}


@pytest.fixture
def rng():
    """Create a seeded numpy generator."""
    return np.random.default_rng(20240611)


@pytest.fixture
def basis():
    """Create the fifteen-form coframe basis."""
    return se_basis()


@pytest.fixture
def omega(basis):
    """Create the parallelism on the tautological forms."""
    return assemble_omega(basis_coframing(basis))


def _holds(predicate, g):
    if predicate is in_g1:
        return predicate(g, epsilon=g.epsilon)
    return predicate(g)


def _all_zero(rows):
    return all(as_normal(entry).is_zero for row in rows for entry in row)


@pytest.mark.parametrize("epsilon", [1, -1])
def test_maurer_cartan_table_is_consistent(epsilon):
    """Test that d^2 vanishes and the flat curvature is zero for both signs."""
    report = verify_maurer_cartan(epsilon)

    assert report.passed
    assert report.check == "maurer-cartan"
    assert report.epsilon == epsilon


def test_corrupted_maurer_cartan_table_fails():
    """Test that flipping one sign of d eta3 is detected."""
    report = verify_maurer_cartan(1, corrupt=True)

    assert not report.passed
    assert all(entry.terms >= 1 for entry in report.entries)


@pytest.mark.parametrize("epsilon", [1, -1])
@pytest.mark.parametrize("tag", list(TOWER))
def test_tower_containment_numeric(tag, epsilon, rng):
    """Test that random elements of each group satisfy every predicate above it."""
    for _ in range(1000):
        g = random_element(tag, epsilon, rng)
        for predicate in TOWER[tag]:
            assert _holds(predicate, g), (tag, predicate.__name__)


@pytest.mark.parametrize("tag", list(TOWER))
def test_tower_containment_exact(tag, rng):
    """Test the containments with Gaussian-rational parameters and exact zero tests."""
    for _ in range(20):
        g = random_element(tag, 1, rng, exact=True)
        for predicate in TOWER[tag]:
            assert _holds(predicate, g), (tag, predicate.__name__)


def test_g4_is_closed_under_products(rng):
    """Test that the product of two G4 elements is again in G4."""
    for _ in range(200):
        g = random_element(GroupTag.G4, 1, rng)
        h = random_element(GroupTag.G4, 1, rng)
        assert in_g4(compose(g, h))


def test_tower_is_strict():
    """Test that each group properly contains the next one."""
    g1_only = GroupElement.g0(2, ((1, 1), (-1, 1)))
    assert in_g1(g1_only, epsilon=1)
    assert not in_g2(g1_only)

    g2_only = GroupElement.g2(1, 0, 0, (1, 0, 0), (0, 0))
    assert in_g2(g2_only)
    assert not in_g3(g2_only)

    g3_only = GroupElement.g3(1, 0, 0, (1, 1, 0))
    assert in_g3(g3_only)
    assert not in_g4(g3_only)


@pytest.mark.parametrize("epsilon", [1, -1])
def test_pstar_elements_are_hermitian_frames(epsilon, rng):
    """Test that P* preserves the frame Hermitian form and has unit determinant."""
    h = HermitianForm(epsilon)
    for _ in range(1000):
        g = random_element(GroupTag.PSTAR, epsilon, rng)
        assert is_hermitian_frame(g, h)


def test_exact_pstar_is_hermitian_frame(rng):
    """Test the Hermitian frame condition with exact phases."""
    h = HermitianForm(-1)
    for _ in range(10):
        assert is_hermitian_frame(random_element(GroupTag.PSTAR, -1, rng, exact=True), h)


def test_non_unimodular_diagonal_is_not_a_frame():
    """Test that scaling the null directions without compensation is rejected."""
    m = np.diag([2.0, 1.0, 1.0, 2.0]).astype(complex)

    assert not is_hermitian_frame(m, HermitianForm(1))


def test_pstar_decomposition_multiplies_back(rng):
    """Test that translation, unipotent and diagonal factors recompose the element."""
    field = NumericField()
    for _ in range(100):
        g = random_element(GroupTag.PSTAR, 1, rng)
        translation, unipotent, diagonal = pstar_decompose(g)
        product = field.matmul(
            field.matmul(matrix_of(translation, field), matrix_of(unipotent, field)),
            matrix_of(diagonal, field),
        )
        assert np.allclose(product, matrix_of(g, field), atol=1e-12)


@pytest.mark.parametrize("epsilon", [1, -1])
def test_parallelism_lies_in_su_star(epsilon, basis):
    """Test that the parallelism is traceless and skew for the algebra Hermitian form."""
    omega = assemble_omega(basis_coframing(basis), epsilon=epsilon)

    assert in_su_star(omega, HermitianForm(epsilon))
    assert in_su_star(MatrixForm.zero(basis, 4), HermitianForm(epsilon))


@pytest.mark.parametrize(("epsilon", "signature"), [(1, (2, 2)), (-1, (3, 1))])
def test_hermitian_form_signature(epsilon, signature):
    """Test that the sign picks su(2,2) or su(3,1)."""
    assert HermitianForm(epsilon).signature == signature


def test_identity_is_not_in_su_star():
    """Test that a matrix with nonzero trace is rejected."""
    assert not in_su_star(np.eye(4, dtype=complex), HermitianForm(1))
    assert not in_su_star([[1, 0], [0, -1]], HermitianForm(1))


def test_pstar_matrix_entries():
    """Test the identity element and the translation entry of P*."""
    assert _all_zero(
        [
            [m - (1 if i == j else 0) for j, m in enumerate(row)]
            for i, row in enumerate(matrix_of(GroupElement.identity(GroupTag.PSTAR)))
        ]
    )

    m = matrix_of(GroupElement.pstar(y=Fraction(3)), EXACT)
    assert (m[0][3] - I * 3).is_zero
    assert (m[0][0] - 1).is_zero


def test_g2_matrix_entries():
    """Test the diagonal blocks of a G2 element with zero angles."""
    m = matrix_of(GroupElement.g2(t=2, c=(1, 0, 0), b=(0, 5)))

    assert (m[0][0] - 4).is_zero
    assert (m[1][1] - 2).is_zero
    assert (m[1][0] - 1).is_zero
    assert (m[3][2] - 5).is_zero
    assert (m[3][3] - 1).is_zero


def test_in_g1_examples():
    """Test the G1 predicate on simple elements."""
    assert in_g1(GroupElement.identity(GroupTag.G1))
    assert in_g1(GroupElement.g2(t=3, r=1, s=2), epsilon=-1)
    assert not in_g1(GroupElement.g0(1, ((2, 0), (0, 1))))


def test_g1_tagged_element_must_satisfy_conditions():
    """Test that an inconsistent G1 element cannot be realized as a matrix."""
    g = GroupElement.g1(1, ((2, 0), (0, 1)))

    with pytest.raises(ConstraintViolation):
        matrix_of(g)


@pytest.mark.parametrize(
    "build",
    [
        lambda: GroupElement.g0(0, ((1, 0), (0, 1))),
        lambda: GroupElement.g0(1, ((1, 1), (1, 1))),
        lambda: GroupElement.g0(1, ((1, 0), (0, 1)), b=(0, 0, 0)),
        lambda: GroupElement(GroupTag.G2, {"t": 1}),
        lambda: GroupElement.pstar(t=1j),
        lambda: GroupElement.g4(epsilon=2),
    ],
)
def test_group_element_validation(build):
    """Test that invalid parameters raise ConstraintViolation."""
    with pytest.raises(ConstraintViolation):
        build()


@pytest.mark.parametrize("y", [0, 1, Fraction(-3, 2)])
def test_prolongation_equivariance(y):
    """Test that the parallelism is equivariant for numeric fibre parameters."""
    assert equivariance_residual(y).is_zero


def test_prolongation_equivariance_symbolic():
    """Test equivariance for a symbolic real fibre parameter and negative sign."""
    y = parse("y", ["y"])

    assert equivariance_residual(y, epsilon=-1).is_zero


@pytest.mark.parametrize("y", [1, Fraction(1, 2)])
def test_equivariance_with_wrong_translation_fails(y):
    """Test that using phi(g) instead of phi(g^-1) leaves a residual."""
    assert not equivariance_residual(y, corrupt=True).is_zero


def test_wrong_translation_is_harmless_at_zero():
    """Test that y = 0 is fixed by both translations."""
    assert equivariance_residual(0, corrupt=True).is_zero


def test_prolong_pullback_slots(basis):
    """Test the images of tau, gamma1 and psi under the fibre action."""
    w = basis_coframing(basis)
    images = prolong_pullback(2, basis)

    assert (images["tau"] - (w["tau"] - w["eta0"] * 2)).is_zero
    assert (images["gamma1"] - (w["gamma1"] - w["eta1"] * 2)).is_zero
    assert (images["gamma1b"] - (w["gamma1b"] - w["eta1b"] * 2)).is_zero
    assert (images["psi"] - (w["psi"] - w["tau"] * 4 + w["eta0"] * 4)).is_zero
    assert (images["rho"] - w["rho"]).is_zero


def test_prolongation_parameters_add():
    """Test that composing prolongation elements adds their parameters."""
    product = compose(GroupElement.prolongation(1), GroupElement.prolongation(2))
    expected = matrix_of(GroupElement.prolongation(3))

    differences = [
        [a - b for a, b in zip(row, other, strict=True)]
        for row, other in zip(product, expected, strict=True)
    ]
    assert _all_zero(differences)


@pytest.mark.parametrize("epsilon", [1, -1])
def test_pfaffian_system_is_frobenius(epsilon):
    """Test that the prolongation ideal is closed on the flat model."""
    residuals = frobenius_residuals(epsilon)

    assert len(residuals) == 5
    assert all(form.is_zero for form in residuals.values())


def test_invariant_differentials_are_semibasic():
    """Test that d(|Fj|^2 eta0) involves only the semibasic forms."""
    for name, form in invariant_differentials().items():
        assert not form.is_zero, name
        assert semibasic_defect(form).is_zero, name


def test_final_structure_equations_give_expected_curvature(basis, omega):
    """Test that d omega + omega ^ omega matches the layout of the torsion terms."""
    curv = curvature(omega, se_coframe())
    expected = expected_curvature(None, basis_coframing(basis))

    assert (curv - expected).is_zero
    assert curv[3, 0].is_zero


def test_corner_curvature_entry(basis):
    """Test the top-left curvature entry against its closed form."""
    w = basis_coframing(basis)
    names = ("F1", "F2", "R", "S", "Q1_1b", "Q1_2b", "Q2_1b", "Q2_2b")
    k = {name: as_normal(Function(name)) for name in names}
    kb = {name: value.conjugate() for name, value in k.items()}
    quarter, half = Fraction(1, 4), Fraction(1, 2)
    eta0, eta1, eta2 = w["eta0"], w["eta1"], w["eta2"]
    eta1b, eta2b = w["eta1b"], w["eta2b"]

    closed_form = (
        (eta0 ^ eta1b) * ((k["Q1_1b"] - k["Q2_1b"]) * quarter)
        + (eta0 ^ eta2b) * ((k["Q1_2b"] - k["Q2_2b"]) * quarter)
        + (eta1 ^ eta0) * ((kb["Q1_1b"] - kb["Q2_1b"]) * quarter)
        + (eta2 ^ eta0) * ((kb["Q1_2b"] - kb["Q2_2b"]) * quarter)
        + (eta1b ^ eta2b) * (k["F1"] * k["F2"] * half)
        - (eta1 ^ eta2) * (kb["F1"] * kb["F2"] * half)
        + (eta2 ^ eta2b) * (k["F1"] * kb["F1"] * half)
        - (eta1 ^ eta1b) * (k["F2"] * kb["F2"] * half)
        + (eta1 ^ eta2b) * ((k["R"] - k["S"]) * quarter)
        + (eta2 ^ eta1b) * ((kb["R"] - kb["S"]) * quarter)
    )

    assert (expected_curvature(None, w)[0, 0] - closed_form).is_zero


def test_assemble_omega_requires_every_symbol(basis):
    """Test that a partial coframing is rejected."""
    with pytest.raises(MissingSubstitution):
        assemble_omega({"eta0": Form.one_form(basis, "eta0")})


def test_residual_report_keeps_only_surviving_terms(basis):
    """Test that zero residuals are dropped and nonzero ones are listed."""
    eta0 = Form.one_form(basis, "eta0")
    tau = Form.one_form(basis, "tau")
    report = ResidualReport.from_forms(
        "demo", {"zero": Form.zero(basis, 2), "kept": eta0 ^ tau}, epsilon=1
    )

    assert not report.passed
    assert report.checked == 2
    assert [entry.name for entry in report.entries] == ["kept"]
    assert report.model_dump()["passed"] is False
