"""
Joint probability tables.

A JointTable is an immutable n×m matrix of cell probabilities p(X=i, Y=j).
Tables are validated once, renormalized once so that their floating sum is
exactly 1, and frozen. Every operation here is a pure function returning a
new table.

Sums use ``math.fsum`` so that marginals do not depend on memory layout:
a transposed or permuted table has exactly the permuted marginals.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

logger = logging.getLogger(__name__)

PROB_TOLERANCE = 1e-9
_RENORMALIZE_ROUNDS = 8


class TableError(ValueError):
    exit_code: int = 2


def _frozen(values: np.ndarray) -> np.ndarray:
    out = np.array(values, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def _fsum_axis(values: np.ndarray, axis: int) -> np.ndarray:
    lanes = values if axis == 1 else values.T
    return np.array([math.fsum(lane) for lane in lanes], dtype=float)


def _renormalize(values: np.ndarray) -> np.ndarray:
    # Repeat until the exact sum is 1.0 so a normalized table is a fixed point.
    for _ in range(_RENORMALIZE_ROUNDS):
        total = math.fsum(values.ravel())
        if total == 1.0:
            break
        values = values / total
    return values


def _check_probabilities(values: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(values)):
        raise TableError(f"{what} contains non-finite entries.")
    if np.any(values < 0):
        raise TableError(f"{what} contains negative entries.")
    total = math.fsum(values.ravel())
    if abs(total - 1.0) > PROB_TOLERANCE:
        raise TableError(f"{what} sums to {total!r}, expected 1 within {PROB_TOLERANCE}.")


def _labels(labels: Optional[Sequence[Any]], size: int, axis: str) -> Optional[tuple[str, ...]]:
    if labels is None:
        return None
    out = tuple(str(label) for label in labels)
    if len(out) != size:
        raise TableError(f"Expected {size} {axis} labels, got {len(out)}.")
    return out


@dataclass(frozen=True, eq=False)
class MarginalPair:
    """
    Row and column marginals of a joint table.

    Attributes:
        row_marginal: p(X=i), length n
        col_marginal: p(Y=j), length m
    """
    row_marginal: np.ndarray
    col_marginal: np.ndarray

    def __post_init__(self) -> None:
        for name in ("row_marginal", "col_marginal"):
            values = np.asarray(getattr(self, name), dtype=float)
            if values.ndim != 1:
                raise TableError(f"{name} must be a vector.")
            if np.any(values <= 0):
                raise TableError(f"{name} must be strictly positive.")
            if abs(math.fsum(values) - 1.0) > PROB_TOLERANCE:
                raise TableError(f"{name} must sum to 1.")
            object.__setattr__(self, name, _frozen(values))

    def swapped(self) -> "MarginalPair":
        return MarginalPair(self.col_marginal, self.row_marginal)

    def to_dict(self) -> dict[str, list[float]]:
        return {"row_marginal": self.row_marginal.tolist(), "col_marginal": self.col_marginal.tolist()}


@dataclass(frozen=True, eq=False)
class JointTable:
    """
    Discrete bivariate joint distribution.

    Attributes:
        probs: n×m cell probabilities (n, m >= 2, no all-zero row or column
            unless built by ``full_dependence``)
        row_labels: Optional state labels of X
        col_labels: Optional state labels of Y
    """
    probs: np.ndarray
    row_labels: Optional[tuple[str, ...]] = None
    col_labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        values = np.asarray(self.probs, dtype=float)
        if values.ndim != 2:
            raise TableError(f"Joint table must be 2-dimensional, got {values.ndim} dimension(s).")
        n, m = values.shape
        if n < 2 or m < 2:
            raise TableError(f"Joint table must be at least 2×2, got {n}×{m}.")
        _check_probabilities(values, "Joint table")
        values = _renormalize(values)
        zero_rows = [i for i, total in enumerate(_fsum_axis(values, 1)) if total == 0.0]
        zero_cols = [j for j, total in enumerate(_fsum_axis(values, 0)) if total == 0.0]
        if zero_rows or zero_cols:
            raise TableError(f"Joint table has all-zero rows {zero_rows} / columns {zero_cols}.")
        object.__setattr__(self, "probs", _frozen(values))
        object.__setattr__(self, "row_labels", _labels(self.row_labels, n, "row"))
        object.__setattr__(self, "col_labels", _labels(self.col_labels, m, "column"))

    @classmethod
    def full_dependence(
        cls,
        probs: ArrayLike,
        row_labels: Optional[Sequence[Any]] = None,
        col_labels: Optional[Sequence[Any]] = None,
    ) -> "JointTable":
        """
        A full-dependence table built from a source table's marginal.

        Its mass sits on one cell per row (or column), so whole columns (or
        rows) may be empty; only the probability checks apply.
        """
        values = np.asarray(probs, dtype=float)
        if values.ndim != 2 or min(values.shape) < 2:
            raise TableError(f"Full-dependence table must be at least 2×2, got shape {values.shape}.")
        _check_probabilities(values, "Full-dependence table")
        n, m = values.shape
        table = object.__new__(cls)
        object.__setattr__(table, "probs", _frozen(_renormalize(values)))
        object.__setattr__(table, "row_labels", _labels(row_labels, n, "row"))
        object.__setattr__(table, "col_labels", _labels(col_labels, m, "column"))
        return table

    @property
    def shape(self) -> tuple[int, int]:
        n, m = self.probs.shape
        return int(n), int(m)

    def ravel(self) -> np.ndarray:
        """Row-major flattening, the flat distribution used by Hellinger distances."""
        return self.probs.ravel()

    def allclose(self, other: "JointTable", atol: float = 1e-12) -> bool:
        return self.shape == other.shape and bool(np.allclose(self.probs, other.probs, rtol=0.0, atol=atol))

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {"probs": self.probs.tolist()}
        if self.row_labels is not None:
            result["row_labels"] = list(self.row_labels)
        if self.col_labels is not None:
            result["col_labels"] = list(self.col_labels)
        return result


@dataclass(frozen=True, eq=False)
class TriTable:
    """Joint distribution of three discrete variables, p(x, y, z)."""
    probs: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.probs, dtype=float)
        if values.ndim != 3:
            raise TableError(f"Tri table must be 3-dimensional, got {values.ndim} dimension(s).")
        if values.size == 0:
            raise TableError("Tri table is empty.")
        _check_probabilities(values, "Tri table")
        object.__setattr__(self, "probs", _frozen(_renormalize(values)))

    @classmethod
    def from_counts(cls, counts: ArrayLike) -> "TriTable":
        values = np.asarray(counts, dtype=float)
        total = _checked_total(values)
        return cls(values / total)

    @property
    def shape(self) -> tuple[int, int, int]:
        n, m, k = self.probs.shape
        return int(n), int(m), int(k)


def _checked_total(values: np.ndarray) -> float:
    if not np.all(np.isfinite(values)):
        raise TableError("Counts contain non-finite entries.")
    if np.any(values < 0):
        raise TableError("Counts contain negative entries.")
    total = math.fsum(values.ravel())
    if total <= 0:
        raise TableError("Counts are all zero.")
    return total


# ============ Operations ============


def from_counts(
    counts: ArrayLike,
    row_labels: Optional[Sequence[Any]] = None,
    col_labels: Optional[Sequence[Any]] = None,
) -> JointTable:
    """
    Build a joint table by normalizing a matrix of nonnegative counts.

    Raises:
        TableError: On negative entries, an all-zero matrix, a dimension
            below 2×2, or a zero row/column.
    """
    values = np.asarray(counts, dtype=float)
    if values.ndim != 2:
        raise TableError(f"Counts must be a 2-dimensional matrix, got {values.ndim} dimension(s).")
    total = _checked_total(values)
    return JointTable(values / total, row_labels=row_labels, col_labels=col_labels)


def from_probs(
    probs: ArrayLike,
    row_labels: Optional[Sequence[Any]] = None,
    col_labels: Optional[Sequence[Any]] = None,
) -> JointTable:
    return JointTable(np.asarray(probs, dtype=float), row_labels=row_labels, col_labels=col_labels)


def marginals(table: JointTable) -> MarginalPair:
    return MarginalPair(_fsum_axis(table.probs, 1), _fsum_axis(table.probs, 0))


def independence_product(table: JointTable) -> JointTable:
    """P^I: the joint table with the same marginals and independent variables."""
    pair = marginals(table)
    return JointTable(
        np.outer(pair.row_marginal, pair.col_marginal),
        row_labels=table.row_labels,
        col_labels=table.col_labels,
    )


def transpose(table: JointTable) -> JointTable:
    return JointTable(table.probs.T, row_labels=table.col_labels, col_labels=table.row_labels)


def permute(
    table: JointTable,
    row_order: Optional[Sequence[int]] = None,
    col_order: Optional[Sequence[int]] = None,
) -> JointTable:
    """Relabel states: row ``i`` of the result is row ``row_order[i]`` of ``table``."""
    n, m = table.shape
    rows = list(range(n)) if row_order is None else list(row_order)
    cols = list(range(m)) if col_order is None else list(col_order)
    if sorted(rows) != list(range(n)) or sorted(cols) != list(range(m)):
        raise TableError("Permutation orders must be bijections on the state indices.")
    row_labels = None if table.row_labels is None else [table.row_labels[i] for i in rows]
    col_labels = None if table.col_labels is None else [table.col_labels[j] for j in cols]
    return JointTable(table.probs[np.ix_(rows, cols)], row_labels=row_labels, col_labels=col_labels)
