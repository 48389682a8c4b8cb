"""Probabilistic zero testing by sampled evaluation.

Expressions whose normal form contains only coordinates, placeholder
functions and constant radicals are decided exactly: a nonzero normal form
of that class is a nonzero function.  Everything else (logarithms,
exponentials, absolute values, radicals of sums) is evaluated at seeded
random points of the domain and declared zero when every sample is below
the tolerance.  The default domain keeps the x coordinates positive and
lets every other coordinate take either sign.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np
import structlog

from config import settings
from errors import SamplerError

from .canonical import Coordinate, Placeholder
from .evaluate import EvalContext, evaluate_many
from .models import Expr

logger = structlog.getLogger(__name__)

Predicate = Callable[[Mapping[str, np.ndarray]], np.ndarray]


@dataclass(frozen=True)
class Domain:
    """Open box of admissible coordinate values plus an optional extra predicate."""

    bounds: Mapping[str, tuple[float, float]]
    predicate: Predicate | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for name, (lo, hi) in self.bounds.items():
            if not lo < hi:
                raise SamplerError(f"empty interval for {name}: ({lo}, {hi})")


class Sampler:
    """Seeded source of domain points and placeholder-function values."""

    def __init__(self, domain: Domain, seed: int | None = None) -> None:
        self.domain = domain
        self.rng = np.random.default_rng(settings.SEED if seed is None else seed)

    def draw(self, count: int, functions: Iterable[tuple[str, bool]] = ()) -> EvalContext:
        points = {
            name: self.rng.uniform(lo, hi, size=count)
            for name, (lo, hi) in self.domain.bounds.items()
        }
        values = {}
        for name, real in functions:
            re = self.rng.uniform(-1.0, 1.0, size=count)
            im = np.zeros(count) if real else self.rng.uniform(-1.0, 1.0, size=count)
            values[name] = re + 1j * im
        return EvalContext(points=points, functions=values, size=count)

    def admissible(self, ctx: EvalContext) -> np.ndarray:
        if self.domain.predicate is None:
            return np.ones(ctx.size, dtype=bool)
        return np.asarray(self.domain.predicate(ctx.points), dtype=bool)


def _function_atoms(e: Expr) -> list[tuple[str, bool]]:
    found = {}
    for symbol in e.normal.free_variables:
        if isinstance(symbol, Placeholder):
            found[symbol.base_name] = bool(symbol.is_real)
    return sorted(found.items())


def sample_values(
    e: Expr,
    domain: Domain,
    samples: int | None = None,
    seed: int | None = None,
) -> np.ndarray:
    """Values of ``e`` at ``samples`` admissible random points.

    Points where ``e`` leaves its real-analytic domain are redrawn.

    Raises:
        SamplerError: Not enough admissible points within the retry budget.
    """
    samples = settings.SAMPLES if samples is None else samples
    if samples < 1:
        raise SamplerError("at least one sample is required")
    sampler = Sampler(domain, seed)
    functions = _function_atoms(e)
    collected: list[np.ndarray] = []
    have = 0
    for _ in range(settings.MAX_SAMPLER_ROUNDS):
        ctx = sampler.draw(samples, functions)
        values, invalid = evaluate_many(e, ctx)
        keep = sampler.admissible(ctx) & ~invalid
        collected.append(values[keep])
        have += int(keep.sum())
        if have >= samples:
            return np.concatenate(collected)[:samples]
    logger.warning("Sampler exhausted", expression=str(e), admissible=have, wanted=samples)
    raise SamplerError(f"only {have} of {samples} admissible points for {e}")


def is_zero(
    e: Expr,
    domain: Domain | None = None,
    samples: int | None = None,
    tol: float | None = None,
    seed: int | None = None,
) -> bool:
    """Whether ``e`` vanishes identically on the domain.

    Args:
        e: Expression to test.
        domain: Sampling domain; defaults to a box over the free coordinates.
        samples: Number of points, default ``settings.SAMPLES``.
        tol: Absolute tolerance, default ``settings.TOL``.
        seed: RNG seed, default ``settings.SEED``.

    Returns:
        True iff the exact path proves zero, or every sampled value is below tol.
    """
    nf = e.normal
    if nf.is_zero:
        return True
    if nf.is_rational_class:
        return False
    tol = settings.TOL if tol is None else tol
    domain = domain or _default_domain(e)
    values = sample_values(e, domain, samples, seed)
    return bool(np.all(np.abs(values) < tol))


def max_residual(
    e: Expr,
    domain: Domain | None = None,
    samples: int | None = None,
    seed: int | None = None,
) -> float:
    """Largest sampled modulus of ``e``; exactly 0.0 for a zero normal form."""
    if e.normal.is_zero:
        return 0.0
    domain = domain or _default_domain(e)
    return float(np.max(np.abs(sample_values(e, domain, samples, seed))))


def _default_domain(e: Expr) -> Domain:
    """X_LOWER..X_UPPER for positive coordinates, +-AUX_BOUND for the other real ones."""
    aux = settings.AUX_BOUND
    bounds = {
        symbol.name: (settings.X_LOWER, settings.X_UPPER) if symbol.is_positive else (-aux, aux)
        for symbol in e.normal.free_variables
        if isinstance(symbol, Coordinate)
    }
    return Domain(dict(sorted(bounds.items())))
