"""Group tags, the Hermitian frame and validated group elements."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType

from errors import ConstraintViolation
import sympy

from expr.canonical import NormalForm, as_normal
from expr.models import Expr


class GroupTag(str, Enum):
    """Members of the structure-group tower and its companions."""

    G0 = "G0"
    G1 = "G1"
    G2 = "G2"
    G3 = "G3"
    G4 = "G4"
    G4PROLONG = "G4prolong"
    PSTAR = "PStar"


REQUIRED_PARAMS: dict[GroupTag, tuple[str, ...]] = {
    GroupTag.G0: ("t", "a", "c1", "c2", "c3", "b1", "b2", "b3"),
    GroupTag.G1: ("t", "a", "c1", "c2", "c3", "b1", "b2", "b3"),
    GroupTag.G2: ("t", "r", "s", "c1", "c2", "c3", "b1", "b2"),
    GroupTag.G3: ("t", "r", "s", "c1", "c2", "c3"),
    GroupTag.G4: ("t", "r", "s", "c1", "c2"),
    GroupTag.G4PROLONG: ("y",),
    GroupTag.PSTAR: ("t", "r", "s", "y", "c1", "c2"),
}

REAL_PARAMS = ("t", "r", "s", "y")


def vanishes(value: object) -> bool:
    """Exact zero test for a parameter value of any supported kind."""
    if isinstance(value, NormalForm | Expr | sympy.Basic):
        return as_normal(value).is_zero
    return complex(value) == 0


def _imaginary_part(value: object) -> float | None:
    if isinstance(value, NormalForm | Expr | sympy.Basic):
        nf = as_normal(value)
        return float(sympy.im(nf.constant_value)) if nf.is_constant else None
    return complex(value).imag


@dataclass(frozen=True)
class HermitianForm:
    """The fixed Hermitian form h for a sign epsilon.

    ``frame_matrix`` is preserved by the Hermitian frames; the parallelism
    satisfies ``conj(omega)^T h' + h' omega = 0`` for ``algebra_matrix`` h' = DhD
    with D = diag(1, 1, 1, -1).
    """

    epsilon: int = 1

    def __post_init__(self) -> None:
        if self.epsilon not in (1, -1):
            raise ConstraintViolation(f"epsilon must be +1 or -1, got {self.epsilon}")

    @property
    def delta(self) -> int:
        return 0 if self.epsilon == 1 else 1

    @property
    def signature(self) -> tuple[int, int]:
        return 2 + self.delta, 2 - self.delta

    @property
    def frame_matrix(self) -> list[list[int]]:
        return [[0, 0, 0, 1], [0, -self.epsilon, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]

    @property
    def algebra_matrix(self) -> list[list[int]]:
        return [[0, 0, 0, -1], [0, -self.epsilon, 0, 0], [0, 0, 1, 0], [-1, 0, 0, 0]]


@dataclass(frozen=True)
class GroupElement:
    """A parameterized element of one of the groups in ``GroupTag``.

    ``params`` holds the scalars of the tag's parameterization; ``a`` is a
    2x2 nested sequence.  Exact values (int, Fraction, sympy numbers, expressions)
    keep the matrix realization exact.
    """

    tag: GroupTag
    params: Mapping[str, object] = field(default_factory=dict)
    epsilon: int = 1

    def __post_init__(self) -> None:
        """Validate the parameters after initialization."""
        object.__setattr__(self, "tag", GroupTag(self.tag))
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))
        if self.epsilon not in (1, -1):
            raise ConstraintViolation(f"epsilon must be +1 or -1, got {self.epsilon}")

        missing = [name for name in REQUIRED_PARAMS[self.tag] if name not in self.params]
        if missing:
            raise ConstraintViolation(f"{self.tag.value} element is missing {', '.join(missing)}")

        for name in REAL_PARAMS:
            if name in self.params:
                imaginary = _imaginary_part(self.params[name])
                if imaginary is not None and imaginary != 0:
                    raise ConstraintViolation(f"parameter {name} must be real")

        if "t" in self.params and vanishes(self.params["t"]):
            raise ConstraintViolation("t must be nonzero")
        if "b3" in self.params and vanishes(self.params["b3"]):
            raise ConstraintViolation("b3 must be nonzero")
        if "a" in self.params:
            (a11, a12), (a21, a22) = self.params["a"]
            if vanishes(as_normal(a11) * as_normal(a22) - as_normal(a12) * as_normal(a21)):
                raise ConstraintViolation("the a-block must be invertible")

    def __getitem__(self, name: str) -> object:
        return self.params[name]

    @classmethod
    def g0(
        cls,
        t: object,
        a: object,
        c: tuple[object, object, object] = (0, 0, 0),
        b: tuple[object, object, object] = (0, 0, 1),
        epsilon: int = 1,
        tag: GroupTag = GroupTag.G0,
    ) -> GroupElement:
        params = {"t": t, "a": a, "c1": c[0], "c2": c[1], "c3": c[2]}
        params.update(b1=b[0], b2=b[1], b3=b[2])
        return cls(tag, params, epsilon)

    @classmethod
    def g1(cls, t: object, a: object, c=(0, 0, 0), b=(0, 0, 1), epsilon: int = 1) -> GroupElement:
        return cls.g0(t, a, c, b, epsilon, tag=GroupTag.G1)

    @classmethod
    def g2(
        cls,
        t: object = 1,
        r: object = 0,
        s: object = 0,
        c: tuple[object, object, object] = (0, 0, 0),
        b: tuple[object, object] = (0, 0),
        epsilon: int = 1,
    ) -> GroupElement:
        params = {"t": t, "r": r, "s": s, "c1": c[0], "c2": c[1], "c3": c[2]}
        return cls(GroupTag.G2, {**params, "b1": b[0], "b2": b[1]}, epsilon)

    @classmethod
    def g3(cls, t=1, r=0, s=0, c=(0, 0, 0), epsilon: int = 1) -> GroupElement:
        params = {"t": t, "r": r, "s": s, "c1": c[0], "c2": c[1], "c3": c[2]}
        return cls(GroupTag.G3, params, epsilon)

    @classmethod
    def g4(cls, t=1, r=0, s=0, c=(0, 0), epsilon: int = 1) -> GroupElement:
        return cls(GroupTag.G4, {"t": t, "r": r, "s": s, "c1": c[0], "c2": c[1]}, epsilon)

    @classmethod
    def prolongation(cls, y: object, epsilon: int = 1) -> GroupElement:
        return cls(GroupTag.G4PROLONG, {"y": y}, epsilon)

    @classmethod
    def pstar(cls, t=1, r=0, s=0, y=0, c1=0, c2=0, epsilon: int = 1) -> GroupElement:
        params = {"t": t, "r": r, "s": s, "y": y, "c1": c1, "c2": c2}
        return cls(GroupTag.PSTAR, params, epsilon)

    @classmethod
    def identity(cls, tag: GroupTag | str, epsilon: int = 1) -> GroupElement:
        tag = GroupTag(tag)
        if tag in (GroupTag.G0, GroupTag.G1):
            return cls.g0(1, ((1, 0), (0, 1)), epsilon=epsilon, tag=tag)
        defaults = {"t": 1, "b3": 1}
        return cls(tag, {name: defaults.get(name, 0) for name in REQUIRED_PARAMS[tag]}, epsilon)
