"""
Hellinger (Matsusita) distance between discrete distributions.

    M(p, q) = { 1/2 * sum_u (sqrt(p_u) - sqrt(q_u))^2 }^(1/2)

The 1/2 factor bounds the distance to [0, 1]. Summands are formed as
sqrt(p) - sqrt(q) in that order and added with ``math.fsum``, so the value
does not depend on the order of the coordinates.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np
from numpy.typing import ArrayLike

from ..pinax.table import PROB_TOLERANCE, JointTable

logger = logging.getLogger(__name__)


class DistributionError(ValueError):
    exit_code: int = 2


@dataclass(frozen=True, eq=False)
class FlatDistribution:
    """
    A univariate discrete distribution, or a joint table flattened row-major.

    Attributes:
        probs: Length-N vector of nonnegative entries summing to 1
    """
    probs: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.probs, dtype=float, copy=True)
        if values.ndim != 1 or values.size == 0:
            raise DistributionError("Distribution must be a nonempty vector.")
        if not np.all(np.isfinite(values)):
            raise DistributionError("Distribution contains non-finite entries.")
        if np.any(values < 0):
            raise DistributionError("Distribution contains negative entries.")
        total = math.fsum(values)
        if abs(total - 1.0) > PROB_TOLERANCE:
            raise DistributionError(f"Distribution sums to {total!r}, expected 1.")
        values.setflags(write=False)
        object.__setattr__(self, "probs", values)

    @classmethod
    def from_table(cls, table: JointTable) -> "FlatDistribution":
        return cls(table.ravel())

    @property
    def size(self) -> int:
        return int(self.probs.size)

    def is_positive(self) -> bool:
        return bool(np.all(self.probs > 0))


DistributionLike = Union[FlatDistribution, JointTable, ArrayLike]


def as_distribution(value: DistributionLike) -> FlatDistribution:
    if isinstance(value, FlatDistribution):
        return value
    if isinstance(value, JointTable):
        return FlatDistribution.from_table(value)
    return FlatDistribution(np.asarray(value, dtype=float).ravel())


def _pair(p: DistributionLike, q: DistributionLike) -> tuple[np.ndarray, np.ndarray]:
    a, b = as_distribution(p), as_distribution(q)
    if a.size != b.size:
        raise DistributionError(f"Length mismatch: {a.size} vs {b.size}.")
    return a.probs, b.probs


def hellinger(p: DistributionLike, q: DistributionLike) -> float:
    """
    Hellinger distance M(p, q) in [0, 1].

    Joint tables are compared cell by cell in row-major order.

    Raises:
        DistributionError: On invalid inputs or a length mismatch
    """
    a, b = _pair(p, q)
    half_sum = 0.5 * math.fsum((np.sqrt(a) - np.sqrt(b)) ** 2)
    return min(1.0, math.sqrt(half_sum))


def bhattacharyya_coefficient(p: DistributionLike, q: DistributionLike) -> float:
    """Sum of sqrt(p_u * q_u); hellinger(p, q)**2 == 1 - coefficient."""
    a, b = _pair(p, q)
    return math.fsum(np.sqrt(a * b))


class MaxDistanced(NamedTuple):
    distribution: FlatDistribution
    distance: float

    @property
    def index(self) -> int:
        return int(np.argmax(self.distribution.probs))


def max_distanced(p: DistributionLike) -> MaxDistanced:
    """
    The distribution farthest from ``p`` in Hellinger distance.

    For a strictly positive p this is the point mass on the smallest entry
    (lowest index on ties), at distance sqrt(1 - sqrt(min p)).

    Raises:
        DistributionError: If any entry of p is zero
    """
    dist = as_distribution(p)
    if not dist.is_positive():
        raise DistributionError("max_distanced requires a strictly positive distribution.")
    index = int(np.argmin(dist.probs))
    vertex = np.zeros(dist.size, dtype=float)
    vertex[index] = 1.0
    distance = math.sqrt(1.0 - math.sqrt(float(dist.probs[index])))
    logger.debug("farthest vertex %d at distance %.12g", index, distance)
    return MaxDistanced(FlatDistribution(vertex), distance)
