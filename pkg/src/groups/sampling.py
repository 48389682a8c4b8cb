"""Random group elements for property checks."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import sympy

from .models import GroupElement, GroupTag

_PHASES = (sympy.S.One, sympy.I, sympy.S.NegativeOne, -sympy.I)


class _Numeric:
    def __init__(self, rng: np.random.Generator) -> None:
        self.rng = rng

    def positive(self) -> float:
        return float(self.rng.uniform(0.5, 2.0))

    def angle(self) -> float:
        return float(self.rng.uniform(-math.pi, math.pi))

    def real(self) -> float:
        return float(self.rng.normal())

    def complex(self) -> complex:
        return complex(self.rng.normal(), self.rng.normal())

    def phase(self) -> complex:
        return complex(np.exp(1j * self.angle()))

    def dominating(self, z: complex) -> complex:
        """A value of strictly larger modulus than ``z``."""
        return (abs(z) + float(self.rng.uniform(0.5, 1.5))) * self.phase()

    def modulus_squared(self, z: complex) -> float:
        return abs(z) ** 2

    def scale(self, z: complex, k: int) -> complex:
        return z * k


class _Exact:
    """Gaussian rationals as sympy numbers; angles are small integers under ``exp(i*angle)``."""

    def __init__(self, rng: np.random.Generator) -> None:
        self.rng = rng

    def _fraction(self, low: int, high: int) -> sympy.Rational:
        return sympy.Rational(int(self.rng.integers(low, high)), int(self.rng.integers(1, 4)))

    def positive(self) -> sympy.Rational:
        return self._fraction(1, 5)

    def angle(self) -> Fraction:
        return Fraction(int(self.rng.integers(-3, 4)))

    def real(self) -> sympy.Rational:
        return self._fraction(-4, 5)

    def complex(self) -> sympy.Expr:
        return self._fraction(-4, 5) + sympy.I * self._fraction(-4, 5)

    def phase(self) -> sympy.Expr:
        return _PHASES[int(self.rng.integers(0, 4))]

    def dominating(self, z: sympy.Expr) -> sympy.Expr:
        re, im = z.as_real_imag()
        radius = sympy.ceiling(abs(re) + abs(im)) + 1 + self._fraction(0, 3)
        return sympy.expand(radius * self.phase())

    def modulus_squared(self, z: sympy.Expr) -> sympy.Rational:
        re, im = sympy.expand(z).as_real_imag()
        return re * re + im * im

    def scale(self, z: sympy.Expr, k: int) -> sympy.Expr:
        return sympy.expand(z * k)


def _g1_block(draw: _Numeric | _Exact, epsilon: int):
    """``t`` and ``a = phase * [[p, -eps conj(q)], [q, conj(p)]]`` with ``|p| > |q|``."""
    q = draw.complex()
    p = draw.dominating(q)
    phase = draw.phase()
    t = draw.modulus_squared(p) + epsilon * draw.modulus_squared(q)
    a = (
        (phase * p, draw.scale(phase * q.conjugate(), -epsilon)),
        (phase * q, phase * p.conjugate()),
    )
    return t, a


def random_element(
    tag: GroupTag | str,
    epsilon: int = 1,
    rng: np.random.Generator | None = None,
    exact: bool = False,
) -> GroupElement:
    """Draw a random element of the group named by ``tag``.

    Args:
        tag: Group to sample
        epsilon: Sign of the structure
        rng: numpy generator; a fresh default generator when omitted
        exact: Draw Gaussian-rational parameters so the matrices stay exact
    Returns:
        A valid element
    """
    tag = GroupTag(tag)
    rng = rng or np.random.default_rng()
    draw = _Exact(rng) if exact else _Numeric(rng)
    if tag is GroupTag.G4PROLONG:
        return GroupElement.prolongation(draw.real(), epsilon)
    if tag is GroupTag.PSTAR:
        c1, c2 = draw.complex(), draw.complex()
        t, r, s, y = draw.positive(), draw.angle(), draw.angle(), draw.real()
        return GroupElement.pstar(t, r, s, y, c1, c2, epsilon)
    if tag in (GroupTag.G0, GroupTag.G1):
        if tag is GroupTag.G1:
            t, a = _g1_block(draw, epsilon)
        else:
            a12, a21 = draw.complex(), draw.complex()
            t = draw.positive()
            a = ((draw.dominating(a12), a12), (a21, draw.dominating(a21)))
        c = (draw.complex(), draw.complex(), draw.complex())
        b = (draw.complex(), draw.complex(), draw.dominating(draw.complex()))
        return GroupElement.g0(t, a, c, b, epsilon, tag=tag)
    t, r, s = draw.positive(), draw.angle(), draw.angle()
    if tag is GroupTag.G2:
        c = (draw.complex(), draw.complex(), draw.complex())
        return GroupElement.g2(t, r, s, c, (draw.complex(), draw.complex()), epsilon)
    if tag is GroupTag.G3:
        return GroupElement.g3(t, r, s, (draw.complex(), draw.complex(), draw.complex()), epsilon)
    return GroupElement.g4(t, r, s, (draw.complex(), draw.complex()), epsilon)
