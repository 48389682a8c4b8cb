"""Placement of the coframing one-forms in the su* valued parallelism."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from errors import MissingSubstitution
import sympy

from expr.canonical import to_sympy
from forms import Form, MatrixForm

# The ten one-forms of the coframing; conjugates are derived when absent.
OMEGA_SYMBOLS = ("eta0", "eta1", "eta2", "eta3", "tau", "rho", "sigma", "gamma1", "gamma2", "psi")

CONJUGATE_OF = {
    "eta1b": "eta1",
    "eta2b": "eta2",
    "eta3b": "eta3",
    "gamma1b": "gamma1",
    "gamma2b": "gamma2",
}

Slot = tuple[tuple[str, sympy.Expr], ...]


def _g(re: Fraction | int = 0, im: Fraction | int = 0) -> sympy.Expr:
    return to_sympy(re) + sympy.I * to_sympy(im)


@dataclass(frozen=True)
class ParallelismLayout:
    """Which multiples of which coframing symbols fill each of the 16 entries."""

    epsilon: int
    slots: tuple[tuple[Slot, ...], ...]

    @property
    def symbols(self) -> frozenset[str]:
        return frozenset(symbol for row in self.slots for slot in row for symbol, _ in slot)

    @classmethod
    def standard(cls, epsilon: int = 1) -> ParallelismLayout:
        eps = _g(epsilon)
        i = _g(im=1)
        q = Fraction(1, 4)
        rho_sigma_corner = (("rho", _g(im=-q)), ("sigma", _g(im=q)))
        slots = (
            (
                (("tau", _g(-1)), *rho_sigma_corner),
                (("gamma2", -i),),
                (("gamma1b", -i),),
                (("psi", -i),),
            ),
            (
                (("eta2b", -eps),),
                (("rho", _g(im=-q)), ("sigma", _g(im=-3 * q))),
                (("eta3b", eps),),
                (("gamma2b", -(eps * i)),),
            ),
            (
                (("eta1", _g(1)),),
                (("eta3", _g(1)),),
                (("rho", _g(im=3 * q)), ("sigma", _g(im=q))),
                (("gamma1", i),),
            ),
            (
                (("eta0", -i),),
                (("eta2", _g(1)),),
                (("eta1b", _g(1)),),
                (("tau", _g(1)), *rho_sigma_corner),
            ),
        )
        return cls(epsilon, slots)


def complete_coframing(coframing: Mapping[str, Form]) -> dict[str, Form]:
    """Add the conjugates of the complex one-forms that are not given explicitly.

    Raises:
        MissingSubstitution: One of the ten coframing symbols is absent.
    """
    missing = [symbol for symbol in OMEGA_SYMBOLS if symbol not in coframing]
    if missing:
        raise MissingSubstitution(f"coframing lacks {', '.join(missing)}")
    full = dict(coframing)
    for conjugate, symbol in CONJUGATE_OF.items():
        if conjugate not in full:
            full[conjugate] = full[symbol].conjugate()
    return full


def assemble_omega(
    coframing: Mapping[str, Form], layout: ParallelismLayout | None = None, epsilon: int = 1
) -> MatrixForm:
    """Matrix of forms with the coframing placed according to ``layout``.

    Works for any degree: feeding the two-form parts of the structure
    equations yields the curvature matrix.

    Raises:
        MissingSubstitution: A symbol of the layout has no form.
    """
    layout = layout or ParallelismLayout.standard(epsilon)
    forms = complete_coframing(coframing)
    first = forms[OMEGA_SYMBOLS[0]]
    basis = first.basis
    degree = next((form.degree for form in forms.values() if not form.is_zero), first.degree)
    rows = []
    for row in layout.slots:
        entries = []
        for slot in row:
            entry = Form.zero(basis, degree)
            for symbol, coefficient in slot:
                entry = entry + forms[symbol] * coefficient
            entries.append(entry)
        rows.append(entries)
    return MatrixForm.build(basis, degree, rows)
