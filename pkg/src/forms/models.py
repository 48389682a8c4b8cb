"""Bases of one-forms with their conjugation pairing."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from errors import MissingConjugate, UnknownSymbol


@dataclass(frozen=True)
class BasisOneForm:
    """A named basis one-form.

    ``conjugate`` names the partner form; a form paired with itself is
    real-valued and ``None`` means no partner was declared.
    """

    symbol: str
    conjugate: str | None = None

    @property
    def is_real(self) -> bool:
        return self.conjugate == self.symbol

    @classmethod
    def real(cls, symbol: str) -> BasisOneForm:
        return cls(symbol, symbol)


def complex_pair(symbol: str, partner: str) -> tuple[BasisOneForm, BasisOneForm]:
    return BasisOneForm(symbol, partner), BasisOneForm(partner, symbol)


@dataclass(frozen=True)
class Basis:
    """Ordered basis of one-forms; the tuple order is the total order of wedge monomials."""

    name: str
    forms: tuple[BasisOneForm, ...]

    def __post_init__(self) -> None:
        symbols = [form.symbol for form in self.forms]
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in basis {self.name}")
        lookup = {form.symbol: form for form in self.forms}
        for form in self.forms:
            if form.conjugate is None:
                continue
            partner = lookup.get(form.conjugate)
            if partner is None or partner.conjugate != form.symbol:
                raise MissingConjugate(
                    f"{form.symbol} names {form.conjugate} as conjugate"
                    " but the pairing is not symmetric"
                )

    def __len__(self) -> int:
        return len(self.forms)

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {form.symbol: i for i, form in enumerate(self.forms)}

    @cached_property
    def _conjugates(self) -> tuple[int | None, ...]:
        return tuple(
            None if form.conjugate is None else self._positions[form.conjugate]
            for form in self.forms
        )

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(form.symbol for form in self.forms)

    def index(self, symbol: str) -> int:
        try:
            return self._positions[symbol]
        except KeyError:
            raise UnknownSymbol(f"{symbol} is not a basis form of {self.name}") from None

    def conjugate_index(self, index: int) -> int:
        partner = self._conjugates[index]
        if partner is None:
            raise MissingConjugate(
                f"{self.forms[index].symbol} has no conjugate partner in {self.name}"
            )
        return partner

    def symbol(self, index: int) -> str:
        return self.forms[index].symbol
