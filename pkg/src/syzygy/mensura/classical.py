"""
Classical dependence measures for discrete tables.

Information measures are in nats; use ``nats_to_bits`` for bits.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import xlogy
from scipy.stats import rankdata

from ..metron.dependence import MeasureError, phi_style_component_distance
from ..pinax.table import JointTable, TriTable, independence_product, marginals

logger = logging.getLogger(__name__)


class PreconditionError(MeasureError):
    pass


def _strictly_increasing(values: np.ndarray) -> bool:
    return bool(np.all(np.diff(values) > 0))


@dataclass(frozen=True, eq=False)
class NumericSupport:
    """
    State values a_1 < ... < a_n of X and b_1 < ... < b_m of Y.
    """
    values_x: np.ndarray
    values_y: np.ndarray

    def __post_init__(self) -> None:
        for name in ("values_x", "values_y"):
            values = np.array(getattr(self, name), dtype=float, copy=True)
            if values.ndim != 1 or values.size < 2:
                raise PreconditionError(f"{name} must be a vector with at least 2 states.")
            if not np.all(np.isfinite(values)):
                raise PreconditionError(f"{name} contains non-finite values.")
            if not _strictly_increasing(values):
                raise PreconditionError(f"{name} must be strictly increasing.")
            values.setflags(write=False)
            object.__setattr__(self, name, values)

    @classmethod
    def default_for(cls, table: JointTable) -> "NumericSupport":
        """Supports {1, ..., n} and {1, ..., m}."""
        n, m = table.shape
        return cls(np.arange(1, n + 1, dtype=float), np.arange(1, m + 1, dtype=float))

    def check(self, table: JointTable) -> None:
        if (self.values_x.size, self.values_y.size) != table.shape:
            raise PreconditionError(
                f"Support sizes {self.values_x.size}×{self.values_y.size} do not match table {table.shape[0]}×{table.shape[1]}."
            )


@dataclass(frozen=True, eq=False)
class PairedSample:
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self) -> None:
        xs = np.array(self.xs, dtype=float, copy=True)
        ys = np.array(self.ys, dtype=float, copy=True)
        if xs.ndim != 1 or ys.ndim != 1 or xs.size != ys.size:
            raise PreconditionError("Paired sample sequences must be vectors of equal length.")
        if xs.size < 2:
            raise PreconditionError("Paired sample needs at least 2 observations.")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise PreconditionError("Paired sample contains non-finite values.")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def size(self) -> int:
        return int(self.xs.size)

    def has_ties(self) -> bool:
        return len(np.unique(self.xs)) < self.size or len(np.unique(self.ys)) < self.size


@dataclass(frozen=True)
class TwoProportionInput:
    """
    Attributes:
        p1: Proportion in the first group
        q1: Proportion in the second group
        p: Pooled proportion, 0 < p < 1
        a: First group size
        b: Second group size
    """
    p1: float
    q1: float
    p: float
    a: int
    b: int

    def __post_init__(self) -> None:
        if not (0.0 <= self.p1 <= 1.0 and 0.0 <= self.q1 <= 1.0):
            raise PreconditionError("p1 and q1 must lie in [0, 1].")
        if not 0.0 < self.p < 1.0:
            raise PreconditionError(f"Pooled proportion must lie in (0, 1), got {self.p}.")
        if self.a < 1 or self.b < 1:
            raise PreconditionError("Group sizes must be positive.")


class TwoProportionResult(NamedTuple):
    factor: float
    z: float


def _require_2x2(table: JointTable, what: str) -> None:
    if table.shape != (2, 2):
        raise PreconditionError(f"{what} needs a 2×2 table, got {table.shape[0]}×{table.shape[1]}.")


def _require_sample_size(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise PreconditionError(f"Sample size must be a positive integer, got {n!r}.")


# ============ Correlation ============


def phi_coefficient(table: JointTable) -> float:
    """(p_11 - p_1 q_1) / sqrt(p_1 (1 - p_1) q_1 (1 - q_1))."""
    _require_2x2(table, "phi")
    pair = marginals(table)
    p1, q1 = float(pair.row_marginal[1]), float(pair.col_marginal[1])
    spread = p1 * (1.0 - p1) * q1 * (1.0 - q1)
    if spread <= 0:
        raise PreconditionError("phi is undefined for a degenerate marginal.")
    return phi_style_component_distance(table) / math.sqrt(spread)


def phi_via_component_distances(table: JointTable) -> float:
    """
    phi as D(P^I, P) over the geometric mean of D(P^I, P^X) and D(P^I, P^Y),
    where P^X = diag(p_0, p_1) and P^Y = diag(q_0, q_1).
    """
    _require_2x2(table, "phi")
    pair = marginals(table)
    d_x = phi_style_component_distance(JointTable(np.diag(pair.row_marginal)))
    d_y = phi_style_component_distance(JointTable(np.diag(pair.col_marginal)))
    return phi_style_component_distance(table) / math.sqrt(d_x * d_y)


def _moments(table: JointTable, support: NumericSupport) -> tuple[float, float, np.ndarray, np.ndarray]:
    support.check(table)
    pair = marginals(table)
    mean_x = math.fsum(pair.row_marginal * support.values_x)
    mean_y = math.fsum(pair.col_marginal * support.values_y)
    return mean_x, mean_y, support.values_x - mean_x, support.values_y - mean_y


def covariance(table: JointTable, support: NumericSupport) -> float:
    _, _, dx, dy = _moments(table, support)
    return math.fsum((table.probs * np.outer(dx, dy)).ravel())


def variance_x(table: JointTable, support: NumericSupport) -> float:
    _, _, dx, _ = _moments(table, support)
    return math.fsum(marginals(table).row_marginal * dx**2)


def variance_y(table: JointTable, support: NumericSupport) -> float:
    _, _, _, dy = _moments(table, support)
    return math.fsum(marginals(table).col_marginal * dy**2)


def pearson_rho(table: JointTable, support: NumericSupport) -> float:
    var_x, var_y = variance_x(table, support), variance_y(table, support)
    if var_x <= 0 or var_y <= 0:
        raise PreconditionError("Pearson correlation is undefined for zero variance.")
    return covariance(table, support) / math.sqrt(var_x * var_y)


def spearman(sample: PairedSample) -> float:
    """1 - 6 sum d_i^2 / (n (n^2 - 1)) over rank differences; ties are rejected."""
    if sample.has_ties():
        raise PreconditionError("Spearman's exact formula requires untied observations.")
    n = sample.size
    d = rankdata(sample.xs) - rankdata(sample.ys)
    return 1.0 - 6.0 * math.fsum(d**2) / (n * (n * n - 1))


# ============ Information ============


def mutual_information(table: JointTable) -> float:
    """sum p(x,y) log(p(x,y) / (p(x) p(y))) in nats, with 0 log 0 = 0."""
    independent = independence_product(table).probs
    return math.fsum(xlogy(table.probs, table.probs / independent).ravel())


def conditional_mi(tri: TriTable) -> float:
    """sum p(x,y,z) log(p(x,y,z) p(z) / (p(x,z) p(y,z))) in nats."""
    probs = tri.probs
    p_z = probs.sum(axis=(0, 1))
    p_xz = probs.sum(axis=1)
    p_yz = probs.sum(axis=0)
    numerator = probs * p_z[None, None, :]
    denominator = p_xz[:, None, :] * p_yz[None, :, :]
    ratio = np.divide(numerator, denominator, out=np.ones_like(probs), where=denominator > 0)
    return math.fsum(xlogy(probs, ratio).ravel())


def nats_to_bits(value: float) -> float:
    return value / math.log(2.0)


# ============ Chi-squared family ============


def degree_of_dependence_EA(table: JointTable) -> float:
    """
    E{A} for A = (p(i|j) - p(i.)) / p(i.) drawn with probability p(i, j).
    """
    pair = marginals(table)
    conditional = table.probs / pair.col_marginal[None, :]
    lift = (conditional - pair.row_marginal[:, None]) / pair.row_marginal[:, None]
    return math.fsum((table.probs * lift).ravel())


def chi_squared(table: JointTable, n: int) -> float:
    """n * sum (p_ij - p_i. p_.j)^2 / (p_i. p_.j)."""
    _require_sample_size(n)
    independent = independence_product(table).probs
    return n * math.fsum(((table.probs - independent) ** 2 / independent).ravel())


def cramers_v(table: JointTable, n: int) -> float:
    rows, cols = table.shape
    return math.sqrt(max(chi_squared(table, n), 0.0) / (n * min(rows - 1, cols - 1)))


def tschuprow_t(table: JointTable, n: int) -> float:
    rows, cols = table.shape
    return math.sqrt(max(chi_squared(table, n), 0.0) / (n * math.sqrt((rows - 1) * (cols - 1))))


# ============ Two proportions ============


def two_proportion(inp: TwoProportionInput) -> TwoProportionResult:
    """factor = (p1 - q1) / sqrt(p (1 - p)); z = factor / sqrt(1/a + 1/b)."""
    factor = (inp.p1 - inp.q1) / math.sqrt(inp.p * (1.0 - inp.p))
    return TwoProportionResult(factor, factor / math.sqrt(1.0 / inp.a + 1.0 / inp.b))


def two_proportion_from_table(table: JointTable, n: int) -> TwoProportionInput:
    """
    Groups are the rows of a 2×2 table; the proportion is P(Y = state 0)
    within each row, pooled over the column marginal.
    """
    _require_2x2(table, "two_proportion")
    _require_sample_size(n)
    pair = marginals(table)
    a, b = (int(round(n * float(mass))) for mass in pair.row_marginal)
    if a < 1 or b < 1:
        raise PreconditionError(f"Sample size {n} leaves an empty group.")
    return TwoProportionInput(
        p1=float(table.probs[0, 0] / pair.row_marginal[0]),
        q1=float(table.probs[1, 0] / pair.row_marginal[1]),
        p=float(pair.col_marginal[0]),
        a=a,
        b=b,
    )
