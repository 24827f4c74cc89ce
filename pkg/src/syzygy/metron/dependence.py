"""
Full-dependence candidates and the rho^M dependence measure.

A full dependence preserving X's marginal puts each row's whole mass on a
single cell. The candidate rule puts it on the row's largest cell and
branches once per tied maximum, giving one candidate table per combination
of tie choices (columns are treated the same way for Y).

rho^M is the Hellinger distance between P and its independence product,
divided by a geometric mean of the distances from the independence product
to every candidate.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from ..pinax.table import JointTable, independence_product, marginals, transpose
from ..settings import RHO_M_VARIANTS
from .hellinger import hellinger

logger = logging.getLogger(__name__)

AXES = ("X", "Y")
DEFAULT_CANDIDATE_CAP = 4096
DEFAULT_TIE_RTOL = 1e-12
UNIT_SLACK = 1e-12


class MeasureError(ValueError):
    exit_code: int = 2


class CandidateLimitError(MeasureError):
    pass


class UndefinedMeasureError(MeasureError):
    pass


@dataclass(frozen=True)
class TieSite:
    state: int
    tied: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"state": self.state, "tied": list(self.tied)}


@dataclass(frozen=True)
class CandidateSet:
    """
    Every full-dependence table the argmax rule produces for one axis.

    Attributes:
        axis: "X" (row marginal preserved) or "Y" (column marginal preserved)
        tables: Candidates in lexicographic order of tie choices
        tie_sites: States whose maximum was attained more than once
    """
    axis: str
    tables: tuple[JointTable, ...]
    tie_sites: tuple[TieSite, ...] = ()

    def __len__(self) -> int:
        return len(self.tables)

    def __iter__(self):
        return iter(self.tables)


def _tied_maxima(lane: np.ndarray, tie_rtol: float) -> tuple[int, ...]:
    peak = lane.max()
    return tuple(int(j) for j in np.flatnonzero(np.isclose(lane, peak, rtol=tie_rtol, atol=0.0)))


def _row_candidates(table: JointTable, cap: int, tie_rtol: float) -> tuple[list[np.ndarray], list[TieSite]]:
    n, m = table.shape
    row_marginal = marginals(table).row_marginal
    choices = [_tied_maxima(table.probs[i], tie_rtol) for i in range(n)]
    count = math.prod(len(c) for c in choices)
    if count > cap:
        raise CandidateLimitError(f"{count} full-dependence candidates exceed the cap of {cap}.")
    ties = [TieSite(i, c) for i, c in enumerate(choices) if len(c) > 1]

    candidates = []
    for picks in itertools.product(*choices):
        cells = np.zeros((n, m), dtype=float)
        cells[np.arange(n), list(picks)] = row_marginal
        candidates.append(cells)
    return candidates, ties


def full_dep_candidates(
    table: JointTable,
    axis: str,
    cap: int = DEFAULT_CANDIDATE_CAP,
    tie_rtol: float = DEFAULT_TIE_RTOL,
) -> CandidateSet:
    """
    Build the candidate set for ``axis``.

    Raises:
        CandidateLimitError: If the number of tie combinations exceeds ``cap``
        MeasureError: On an unknown axis
    """
    if axis not in AXES:
        raise MeasureError(f"Unknown axis: {axis!r}")
    source = table if axis == "X" else transpose(table)
    cells, ties = _row_candidates(source, cap, tie_rtol)
    if axis == "X":
        tables = [JointTable.full_dependence(c, table.row_labels, table.col_labels) for c in cells]
    else:
        tables = [JointTable.full_dependence(c.T, table.row_labels, table.col_labels) for c in cells]
    if ties:
        logger.info("axis %s: ties at %s give %d candidates", axis, [t.state for t in ties], len(tables))
    return CandidateSet(axis=axis, tables=tuple(tables), tie_sites=tuple(ties))


def geometric_mean(values: Sequence[float]) -> float:
    """exp(mean(log values)), summed in the given order."""
    if len(values) == 1:
        return float(values[0])
    return math.exp(math.fsum(math.log(v) for v in values) / len(values))


@dataclass(frozen=True)
class RhoMResult:
    """
    rho^M with its intermediate quantities.

    Attributes:
        value: numerator / denominator, unsigned, not clamped
        numerator: M(P^I, P)
        denominator: Geometric-mean normalizer for ``variant``
        candidate_counts: (|X candidates|, |Y candidates|)
        variant: "definition1" or "example4-compat"
        distances_x: M(P^I, P^Xi) per X candidate
        distances_y: M(P^I, P^Yj) per Y candidate
        geometric_mean_x: Geometric mean of distances_x
        geometric_mean_y: Geometric mean of distances_y
        tie_sites_x: Tie sites of the X candidate set
        tie_sites_y: Tie sites of the Y candidate set
    """
    value: float
    numerator: float
    denominator: float
    candidate_counts: tuple[int, int]
    variant: str
    distances_x: tuple[float, ...] = ()
    distances_y: tuple[float, ...] = ()
    geometric_mean_x: float = 0.0
    geometric_mean_y: float = 0.0
    tie_sites_x: tuple[TieSite, ...] = field(default=())
    tie_sites_y: tuple[TieSite, ...] = field(default=())

    @property
    def exceeds_unit(self) -> bool:
        return self.value > 1.0 + UNIT_SLACK

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "candidate_counts": list(self.candidate_counts),
            "variant": self.variant,
            "distances_x": list(self.distances_x),
            "distances_y": list(self.distances_y),
            "geometric_mean_x": self.geometric_mean_x,
            "geometric_mean_y": self.geometric_mean_y,
            "tie_sites_x": [t.to_dict() for t in self.tie_sites_x],
            "tie_sites_y": [t.to_dict() for t in self.tie_sites_y],
            "exceeds_unit": self.exceeds_unit,
        }


def _distances(independent: JointTable, candidates: Iterable[JointTable], axis: str) -> tuple[float, ...]:
    out = []
    for k, candidate in enumerate(candidates):
        distance = hellinger(independent, candidate)
        if distance == 0.0:
            raise UndefinedMeasureError(f"{axis} candidate {k} coincides with the independence product.")
        out.append(distance)
    return tuple(out)


def denominator_for(
    variant: str,
    distances_x: Sequence[float],
    distances_y: Sequence[float],
) -> float:
    """
    Normalizer for ``variant``.

    definition1: sqrt(GM_x * GM_y).
    example4-compat: prod_{i,j} (d_xi * d_yj) ^ (1 / (a + b)) with a, b the
    candidate counts; for a = b it is definition1 raised to the power a.
    """
    if variant not in RHO_M_VARIANTS:
        raise MeasureError(f"Unknown rho^M variant: {variant!r}")
    gm_x, gm_y = geometric_mean(distances_x), geometric_mean(distances_y)
    if variant == "definition1":
        return math.sqrt(gm_x * gm_y)
    a, b = len(distances_x), len(distances_y)
    if a == 1 and b == 1:
        return math.sqrt(gm_x * gm_y)
    log_x = math.fsum(math.log(d) for d in distances_x)
    log_y = math.fsum(math.log(d) for d in distances_y)
    return math.exp((b * log_x + a * log_y) / (a + b))


def rho_m(
    table: JointTable,
    variant: str = "definition1",
    cap: int = DEFAULT_CANDIDATE_CAP,
    tie_rtol: float = DEFAULT_TIE_RTOL,
    candidates: Optional[tuple[CandidateSet, CandidateSet]] = None,
) -> RhoMResult:
    """
    Compute rho^M for a joint table.

    Args:
        table: Joint table P
        variant: "definition1" (default) or "example4-compat"
        cap: Candidate cap per axis
        tie_rtol: Relative tolerance for tied maxima
        candidates: Precomputed (X, Y) candidate sets

    Raises:
        UndefinedMeasureError: If a candidate coincides with P^I
        CandidateLimitError: If a candidate set exceeds ``cap``
    """
    if variant not in RHO_M_VARIANTS:
        raise MeasureError(f"Unknown rho^M variant: {variant!r}")
    independent = independence_product(table)
    if candidates is None:
        candidates = (
            full_dep_candidates(table, "X", cap=cap, tie_rtol=tie_rtol),
            full_dep_candidates(table, "Y", cap=cap, tie_rtol=tie_rtol),
        )
    set_x, set_y = candidates
    numerator = hellinger(independent, table)
    distances_x = _distances(independent, set_x, "X")
    distances_y = _distances(independent, set_y, "Y")
    denominator = denominator_for(variant, distances_x, distances_y)

    result = RhoMResult(
        value=numerator / denominator,
        numerator=numerator,
        denominator=denominator,
        candidate_counts=(len(set_x), len(set_y)),
        variant=variant,
        distances_x=distances_x,
        distances_y=distances_y,
        geometric_mean_x=geometric_mean(distances_x),
        geometric_mean_y=geometric_mean(distances_y),
        tie_sites_x=set_x.tie_sites,
        tie_sites_y=set_y.tie_sites,
    )
    if result.exceeds_unit:
        logger.warning("rho^M = %.12g exceeds 1 (numerator %.12g, denominator %.12g)", result.value, numerator, denominator)
    return result


def phi_style_component_distance(table: JointTable) -> float:
    """Signed p_11 - p_1 * q_1 of a 2×2 table (state 1 of both variables)."""
    if table.shape != (2, 2):
        raise MeasureError(f"Component distance needs a 2×2 table, got {table.shape[0]}×{table.shape[1]}.")
    pair = marginals(table)
    return float(table.probs[1, 1] - pair.row_marginal[1] * pair.col_marginal[1])
