"""Real coordinate charts with complex coordinates layered on top."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from config import settings
from errors import UnknownSymbol

from .identity import Domain


@dataclass(frozen=True)
class ComplexPair:
    """A complex coordinate ``z`` written through two real chart coordinates.

    ``scale`` is the derivative of the real coordinate along ``z``: 1 for
    ``z = x + i*y`` and 2 for the tube convention ``x = z + conj(z)``.
    """

    holomorphic: str
    real: str
    imaginary: str
    scale: Fraction = Fraction(1)


@dataclass(frozen=True)
class Chart:
    name: str
    coordinates: tuple[str, ...]
    pairs: tuple[ComplexPair, ...] = ()
    bounds: tuple[tuple[str, float, float], ...] = field(default=())

    def __post_init__(self) -> None:
        if len(set(self.coordinates)) != len(self.coordinates):
            raise ValueError(f"duplicate coordinates in chart {self.name}")
        for pair in self.pairs:
            for coordinate in (pair.real, pair.imaginary):
                if coordinate not in self.coordinates:
                    raise ValueError(f"{pair.holomorphic} uses undeclared coordinate {coordinate}")

    def pair(self, holomorphic: str) -> ComplexPair:
        for pair in self.pairs:
            if pair.holomorphic == holomorphic:
                return pair
        raise UnknownSymbol(f"unknown complex coordinate {holomorphic} in chart {self.name}")

    @property
    def holomorphic(self) -> tuple[str, ...]:
        return tuple(pair.holomorphic for pair in self.pairs)

    @property
    def domain(self) -> Domain:
        box = {name: (settings.X_LOWER, settings.X_UPPER) for name in self.coordinates}
        box.update({name: (lo, hi) for name, lo, hi in self.bounds})
        return Domain(box)


def standard_chart(n: int = 3) -> Chart:
    """Chart on C^n with ``z_j = x_j + i*y_j``; the x coordinates are kept positive."""
    xs = tuple(f"x{j}" for j in range(1, n + 1))
    ys = tuple(f"y{j}" for j in range(1, n + 1))
    aux = settings.AUX_BOUND
    return Chart(
        name=f"standard{n}",
        coordinates=xs + ys,
        pairs=tuple(ComplexPair(f"z{j}", f"x{j}", f"y{j}") for j in range(1, n + 1)),
        bounds=tuple((y, -aux, aux) for y in ys),
    )


def tube_chart() -> Chart:
    """Chart of a tube hypersurface ``z4 + conj(z4) = f(x1, x2, x3)`` in C^4.

    Coordinates are ``x_j = z_j + conj(z_j)``, ``y_j = Im z_j`` and ``v = Im z4``.
    """
    aux = settings.AUX_BOUND
    return Chart(
        name="tube",
        coordinates=("x1", "x2", "x3", "y1", "y2", "y3", "v"),
        pairs=tuple(ComplexPair(f"z{j}", f"x{j}", f"y{j}", Fraction(2)) for j in (1, 2, 3)),
        bounds=tuple((name, -aux, aux) for name in ("y1", "y2", "y3", "v")),
    )
