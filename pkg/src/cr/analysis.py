"""One-shot Levi, cubic and isotropy analysis of a tube hypersurface."""

from __future__ import annotations

from collections.abc import Mapping
from itertools import product

import structlog

from errors import CartanError, PreconditionError
from forms import FrameCoframe

from .cubic import cubic_data, cubic_matrix, isotropy_class, normalize_cubic, transport_cubic
from .levi import chart_coframe, degeneracy_residual, diagonalizing_coframe, levi_matrix, levi_rank
from .models import AnalysisRecord, CubicData, CubicModel, DefiningFunction, IsotropyClass

logger = structlog.getLogger(__name__)

SIGN_ORDER = tuple(product((-1, 1), repeat=2))


def base_point(df: DefiningFunction) -> dict[str, float]:
    """Point with every positive coordinate at 1 and every bounded one at 0."""
    bounded = {name for name, _, _ in df.chart.bounds}
    return {name: 0.0 if name in bounded else 1.0 for name in df.chart.coordinates}


def levi_frame(df: DefiningFunction) -> FrameCoframe:
    """Frame from the first sign choice that diagonalizes the Levi form.

    Raises:
        PreconditionError: No sign choice works or a precondition fails.
    """
    for signs in SIGN_ORDER:
        try:
            theta = diagonalizing_coframe(df, signs)
        except PreconditionError as e:
            if e.condition != "levi-diagonal":
                raise
            continue
        return FrameCoframe.from_forms(chart_coframe(df), theta, "levi")
    raise PreconditionError("levi-diagonal", "no sign choice diagonalizes the Levi form")


def analyze(df: DefiningFunction, point: Mapping[str, float] | None = None) -> AnalysisRecord:
    """Levi rank, degeneracy, cubic triple and isotropy class of ``df``.

    Failures past the Levi computation are reported as notes rather than raised.

    Args:
        df: Defining function
        point: Point at which the cubic form is evaluated; ``base_point(df)`` by default
    Returns:
        The analysis record
    """
    point = dict(point or base_point(df))
    matrix = levi_matrix(df)
    rank = levi_rank(df)
    record = AnalysisRecord(
        defining_function=str(df),
        levi_rank=rank,
        degenerate=rank < 3,
        levi_matrix=[[str(entry) for entry in row] for row in matrix],
        point=point,
    )
    if rank == 3:
        return record
    if rank < 2:
        record.notes.append(f"Levi rank {rank}: not of the analyzed type")
        return record
    try:
        degeneracy_residual(df)
        ell, u = cubic_matrix(levi_frame(df))
        record.cubic_matrix = [[str(entry) for entry in row] for row in u]
        cd = cubic_data(ell, u, point)
        record.cubic = CubicModel.of(cd)
        if cd.lam is None:
            record.notes.append("cubic form is not of conformal unitary type")
            return record
        record.isotropy = isotropy_class(cd)
        if record.isotropy in (IsotropyClass.DEFINITE, IsotropyClass.SWITCHING):
            moved = transport_cubic(cd, normalize_cubic(cd))
            record.normalized = CubicModel.of(CubicData(cd.epsilon, *moved.triple))
    except CartanError as e:
        logger.info("Analysis stopped", function=str(df), error=str(e))
        record.notes.append(str(e))
    return record
