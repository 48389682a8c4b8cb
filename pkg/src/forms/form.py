"""Graded exterior algebra over a basis of one-forms.

A ``Form`` stores its terms as strictly increasing index tuples into the
basis, each with a nonzero ``NormalForm`` coefficient.  Anticommutativity is
normalized away at construction.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass

from errors import DegreeMismatch, DegreeOverflow, MissingSubstitution, MixedCoframes
from expr.canonical import ZERO, NormalForm, as_normal
from expr.models import Expr, to_expr

from .models import Basis

MAX_DEGREE = 4

Indices = tuple[int, ...]


def _sort_with_sign(indices: Sequence[int]) -> tuple[Indices, int]:
    """Sorted indices and the parity of the sorting permutation; sign 0 on repeats."""
    items = list(indices)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:], strict=False):
        if a == b:
            return tuple(items), 0
    return tuple(items), sign


def _merge_sign(left: Indices, right: Indices) -> int:
    """Sign of concatenating two sorted disjoint index tuples into sorted order."""
    inversions = 0
    for i in left:
        for j in right:
            if i > j:
                inversions += 1
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class Form:
    basis: Basis
    degree: int
    terms: tuple[tuple[Indices, NormalForm], ...] = ()

    def __post_init__(self) -> None:
        if self.degree > MAX_DEGREE:
            raise DegreeOverflow(f"degree {self.degree} exceeds {MAX_DEGREE}")

    # construction

    @classmethod
    def zero(cls, basis: Basis, degree: int = 0) -> Form:
        return cls(basis, degree)

    @classmethod
    def scalar(cls, basis: Basis, value: object) -> Form:
        return cls.build(basis, 0, [((), value)])

    @classmethod
    def one_form(cls, basis: Basis, symbol: str, coefficient: object = 1) -> Form:
        return cls.build(basis, 1, [((basis.index(symbol),), coefficient)])

    @classmethod
    def monomial(cls, basis: Basis, symbols: Sequence[str], coefficient: object = 1) -> Form:
        indices = [basis.index(symbol) for symbol in symbols]
        return cls.build(basis, len(indices), [(indices, coefficient)])

    @classmethod
    def build(
        cls,
        basis: Basis,
        degree: int,
        terms: Iterable[tuple[Sequence[int], object]],
    ) -> Form:
        """Normalize arbitrary index sequences into a canonical form."""
        acc: dict[Indices, NormalForm] = {}
        for indices, coefficient in terms:
            if len(indices) != degree:
                raise DegreeMismatch(f"term {tuple(indices)} does not have degree {degree}")
            ordered, sign = _sort_with_sign(indices)
            if sign == 0:
                continue
            value = as_normal(coefficient)
            if value.is_zero:
                continue
            if sign < 0:
                value = -value
            acc[ordered] = acc[ordered] + value if ordered in acc else value
        return cls._from_sorted(basis, degree, acc)

    @classmethod
    def _from_sorted(cls, basis: Basis, degree: int, acc: Mapping[Indices, NormalForm]) -> Form:
        items = sorted((k, v) for k, v in acc.items() if not v.is_zero)
        return cls(basis, degree, tuple(items))

    # inspection

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def symbols_of(self, indices: Indices) -> tuple[str, ...]:
        return tuple(self.basis.symbol(i) for i in indices)

    def items(self) -> list[tuple[tuple[str, ...], Expr]]:
        return [(self.symbols_of(indices), to_expr(coeff)) for indices, coeff in self.terms]

    def coefficient(self, key: Sequence[int | str]) -> NormalForm:
        """Coefficient of the wedge monomial ``key``, sign-adjusted for its ordering."""
        indices = [self.basis.index(k) if isinstance(k, str) else k for k in key]
        if len(indices) != self.degree:
            return ZERO
        ordered, sign = _sort_with_sign(indices)
        if sign == 0:
            return ZERO
        for term_indices, coeff in self.terms:
            if term_indices == ordered:
                return coeff if sign > 0 else -coeff
        return ZERO

    def _check(self, other: Form) -> None:
        if other.basis is not self.basis and other.basis != self.basis:
            raise MixedCoframes(
                f"cannot combine forms over {self.basis.name} and {other.basis.name}"
            )

    # algebra

    def __add__(self, other: Form) -> Form:
        self._check(other)
        if other.is_zero and other.degree != self.degree:
            return self
        if self.is_zero and other.degree != self.degree:
            return other
        if other.degree != self.degree:
            raise DegreeMismatch(f"cannot add forms of degree {self.degree} and {other.degree}")
        acc = dict(self.terms)
        for indices, coeff in other.terms:
            acc[indices] = acc[indices] + coeff if indices in acc else coeff
        return Form._from_sorted(self.basis, self.degree, acc)

    def __neg__(self) -> Form:
        return Form(self.basis, self.degree, tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other: Form) -> Form:
        return self + (-other)

    def __mul__(self, scalar: object) -> Form:
        if isinstance(scalar, Form):
            raise TypeError("use ^ for the wedge product of forms")
        value = as_normal(scalar)
        if value.is_zero:
            return Form.zero(self.basis, self.degree)
        return Form._from_sorted(
            self.basis, self.degree, {k: v * value for k, v in self.terms}
        )

    __rmul__ = __mul__

    def __xor__(self, other: Form) -> Form:
        return wedge(self, other)

    def conjugate(self) -> Form:
        return conjugate(self)


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; degrees add.

    Raises:
        MixedCoframes: The forms live over different bases.
        DegreeOverflow: The product would exceed the degree cap.
    """
    a._check(b)
    degree = a.degree + b.degree
    if degree > MAX_DEGREE:
        raise DegreeOverflow(f"wedge of degrees {a.degree} and {b.degree} exceeds {MAX_DEGREE}")
    acc: dict[Indices, NormalForm] = {}
    for left, x in a.terms:
        for right, y in b.terms:
            if set(left) & set(right):
                continue
            merged = tuple(sorted(left + right))
            value = x * y
            if _merge_sign(left, right) < 0:
                value = -value
            acc[merged] = acc[merged] + value if merged in acc else value
    return Form._from_sorted(a.basis, degree, acc)


def conjugate(a: Form) -> Form:
    """Swap every basis form with its partner and conjugate the coefficients.

    Raises:
        MissingConjugate: A basis form in ``a`` has no declared partner.
    """
    basis = a.basis
    return Form.build(
        basis,
        a.degree,
        (
            ([basis.conjugate_index(i) for i in indices], coeff.conjugate())
            for indices, coeff in a.terms
        ),
    )


def coefficient_of(a: Form, key: Sequence[int | str]) -> Expr:
    return to_expr(a.coefficient(key))


def reduce_mod_ideal(a: Form, generators: Iterable[str]) -> Form:
    """Drop every term containing one of the generator one-forms.

    Raises:
        UnknownSymbol: A generator is not a basis form of ``a``.
    """
    banned = {a.basis.index(symbol) for symbol in generators}
    return Form(a.basis, a.degree, tuple((k, v) for k, v in a.terms if not banned.intersection(k)))


def substitute_coframe(
    a: Form,
    dictionary: Mapping[str, Form],
    target: Basis | None = None,
    coefficients: Callable[[NormalForm], NormalForm] | None = None,
) -> Form:
    """Replace each basis one-form by a one-form, extending as an algebra homomorphism.

    Args:
        a: Form to rewrite.
        dictionary: Image of every basis symbol occurring in ``a``.
        target: Basis of the images; inferred from the dictionary when omitted.
        coefficients: Optional map applied to each coefficient.

    Raises:
        MissingSubstitution: A basis symbol of ``a`` has no image.
    """
    if target is None:
        target = next(iter(dictionary.values())).basis if dictionary else a.basis
    images: dict[int, Form] = {}
    for indices, _ in a.terms:
        for index in indices:
            if index in images:
                continue
            symbol = a.basis.symbol(index)
            if symbol not in dictionary:
                raise MissingSubstitution(f"no image for {symbol}")
            images[index] = dictionary[symbol]
    result = Form.zero(target, a.degree)
    for indices, coeff in a.terms:
        value = coefficients(coeff) if coefficients else coeff
        if value.is_zero:
            continue
        piece = Form.scalar(target, value)
        for index in indices:
            piece = wedge(piece, images[index])
        result = result + piece
    return result
