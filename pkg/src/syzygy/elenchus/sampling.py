"""
Random distributions and tables, uniform on the probability simplex.
"""

from __future__ import annotations

import numpy as np

from ..pinax.table import JointTable

MARGINAL_FLOOR = 1e-6
_MAX_REJECTIONS = 10_000


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def simplex(rng: np.random.Generator, size: int, count: int | None = None) -> np.ndarray:
    """Dirichlet(1, ..., 1) draws: one vector, or a (count, size) batch."""
    return rng.dirichlet(np.ones(size), size=count)


def positive_distribution(rng: np.random.Generator, size: int, floor: float = MARGINAL_FLOOR) -> np.ndarray:
    for _ in range(_MAX_REJECTIONS):
        draw = simplex(rng, size)
        if draw.min() >= floor:
            return draw
    raise RuntimeError(f"No draw of size {size} cleared the floor {floor}.")


def random_table(rng: np.random.Generator, n: int, m: int, floor: float = MARGINAL_FLOOR) -> JointTable:
    """A random n×m table whose row and column marginals all reach ``floor``."""
    for _ in range(_MAX_REJECTIONS):
        cells = simplex(rng, n * m).reshape(n, m)
        if cells.sum(axis=1).min() >= floor and cells.sum(axis=0).min() >= floor:
            return JointTable(cells)
    raise RuntimeError(f"No {n}×{m} draw cleared the marginal floor {floor}.")
