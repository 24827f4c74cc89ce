"""
Step-by-step reference evaluators.

Plain-Python loops over nested lists, sharing no code with the numpy
implementations, so that the two can be compared. Ties are exact equality
here; the worked tables are exact decimals.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

Matrix = list[list[float]]


def as_matrix(rows: Sequence[Sequence[float]]) -> Matrix:
    return [[float(v) for v in row] for row in rows]


def row_sums(rows: Matrix) -> list[float]:
    return [sum(row) for row in rows]


def col_sums(rows: Matrix) -> list[float]:
    return [sum(rows[i][j] for i in range(len(rows))) for j in range(len(rows[0]))]


def independence(rows: Matrix) -> Matrix:
    r, c = row_sums(rows), col_sums(rows)
    return [[r[i] * c[j] for j in range(len(c))] for i in range(len(r))]


def transposed(rows: Matrix) -> Matrix:
    return [list(col) for col in zip(*rows)]


def flatten(rows: Matrix) -> list[float]:
    return [v for row in rows for v in row]


def hellinger(p: Sequence[float], q: Sequence[float]) -> float:
    total = 0.0
    for a, b in zip(p, q):
        total += (math.sqrt(a) - math.sqrt(b)) ** 2
    return math.sqrt(total / 2.0)


def row_candidates(rows: Matrix) -> list[Matrix]:
    """Argmax rule on rows, one candidate per combination of exact ties."""
    n, m = len(rows), len(rows[0])
    masses = row_sums(rows)
    choices = []
    for row in rows:
        peak = max(row)
        choices.append([j for j in range(m) if row[j] == peak])
    out = []
    for picks in itertools.product(*choices):
        cand = [[0.0] * m for _ in range(n)]
        for i, j in enumerate(picks):
            cand[i][j] = masses[i]
        out.append(cand)
    return out


def col_candidates(rows: Matrix) -> list[Matrix]:
    return [transposed(c) for c in row_candidates(transposed(rows))]


def rho_m(rows: Sequence[Sequence[float]]) -> dict[str, object]:
    """
    rho^M with every intermediate value, both denominator forms.

    The definition1 denominator is (prod d_x)^(1/a) * (prod d_y)^(1/b),
    square-rooted; the printed multi-candidate form is
    prod_{i,j} (d_xi * d_yj)^(1/(a+b)).
    """
    rows = as_matrix(rows)
    indep = independence(rows)
    numerator = hellinger(flatten(indep), flatten(rows))
    d_x = [hellinger(flatten(indep), flatten(c)) for c in row_candidates(rows)]
    d_y = [hellinger(flatten(indep), flatten(c)) for c in col_candidates(rows)]
    a, b = len(d_x), len(d_y)
    gm_x = math.prod(d_x) ** (1.0 / a)
    gm_y = math.prod(d_y) ** (1.0 / b)
    definition1 = math.sqrt(gm_x * gm_y)
    compat = 1.0
    for dx in d_x:
        for dy in d_y:
            compat *= (dx * dy) ** (1.0 / (a + b))
    return {
        "numerator": numerator,
        "distances_x": d_x,
        "distances_y": d_y,
        "geometric_mean_x": gm_x,
        "geometric_mean_y": gm_y,
        "denominator_definition1": definition1,
        "denominator_compat": compat,
        "definition1": numerator / definition1,
        "example4-compat": numerator / compat,
    }


def mutual_information(rows: Sequence[Sequence[float]]) -> float:
    rows = as_matrix(rows)
    r, c = row_sums(rows), col_sums(rows)
    total = 0.0
    for i, row in enumerate(rows):
        for j, p in enumerate(row):
            if p > 0:
                total += p * math.log(p / (r[i] * c[j]))
    return total


def conditional_mi(cube: Sequence[Sequence[Sequence[float]]]) -> float:
    n, m, k = len(cube), len(cube[0]), len(cube[0][0])
    total = 0.0
    for z in range(k):
        p_z = sum(cube[x][y][z] for x in range(n) for y in range(m))
        if p_z == 0:
            continue
        for x in range(n):
            p_xz = sum(cube[x][y][z] for y in range(m))
            for y in range(m):
                p = cube[x][y][z]
                if p > 0:
                    p_yz = sum(cube[u][y][z] for u in range(n))
                    total += p * math.log((p / p_z) / ((p_xz / p_z) * (p_yz / p_z)))
    return total


def pearson(rows: Sequence[Sequence[float]], xs: Sequence[float], ys: Sequence[float]) -> float:
    rows = as_matrix(rows)
    r, c = row_sums(rows), col_sums(rows)
    ex = sum(p * x for p, x in zip(r, xs))
    ey = sum(q * y for q, y in zip(c, ys))
    exy = sum(rows[i][j] * xs[i] * ys[j] for i in range(len(xs)) for j in range(len(ys)))
    vx = sum(p * x * x for p, x in zip(r, xs)) - ex * ex
    vy = sum(q * y * y for q, y in zip(c, ys)) - ey * ey
    return (exy - ex * ey) / math.sqrt(vx * vy)


def chi_squared(rows: Sequence[Sequence[float]], n: int) -> float:
    rows = as_matrix(rows)
    indep = independence(rows)
    total = 0.0
    for i, row in enumerate(rows):
        for j, p in enumerate(row):
            total += (p - indep[i][j]) ** 2 / indep[i][j]
    return n * total


def cramers_v(rows: Sequence[Sequence[float]]) -> float:
    r, c = len(rows), len(rows[0])
    return math.sqrt(chi_squared(rows, 1) / min(r - 1, c - 1))


def tschuprow_t(rows: Sequence[Sequence[float]]) -> float:
    r, c = len(rows), len(rows[0])
    return math.sqrt(chi_squared(rows, 1) / math.sqrt((r - 1) * (c - 1)))


def phi(rows: Sequence[Sequence[float]]) -> float:
    (p00, p01), (p10, p11) = as_matrix(rows)
    p1, q1 = p10 + p11, p01 + p11
    return (p11 - p1 * q1) / math.sqrt(p1 * (1 - p1) * q1 * (1 - q1))
