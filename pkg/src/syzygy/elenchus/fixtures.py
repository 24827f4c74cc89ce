"""
Worked tables with their published reference values.

``printed`` holds the values as published; ``tolerance`` the accepted
absolute deviation per measure. A printed value the computation does not
reproduce is recorded as a discrepancy by the oracle, never patched here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..pinax.table import JointTable, from_probs

PRINTED_TOLERANCE = 5e-4
RHO_M_TOLERANCE = 5e-3


@dataclass(frozen=True)
class WorkedExample:
    name: str
    probs: tuple[tuple[float, ...], ...]
    printed: dict[str, float]
    supports: Optional[tuple[tuple[float, ...], tuple[float, ...]]] = None
    tolerance: dict[str, float] = field(default_factory=dict)

    def table(self) -> JointTable:
        return from_probs([list(row) for row in self.probs])

    def tolerance_for(self, measure: str) -> float:
        if measure in self.tolerance:
            return self.tolerance[measure]
        return RHO_M_TOLERANCE if measure == "rho_m" else PRINTED_TOLERANCE


_BINARY = ((0.3, 0.2), (0.1, 0.4))
_STATES3 = ((1.0, 2.0, 3.0), (1.0, 2.0, 3.0))

EXAMPLE1 = WorkedExample(
    name="example1",
    probs=_BINARY,
    printed={"phi": 0.4082, "rho_m": 0.2783, "cramers_v": 0.4082, "tschuprow_t": 0.4082},
)

EXAMPLE1_TRANSPOSED = WorkedExample(
    name="example1-transposed",
    probs=((0.3, 0.1), (0.2, 0.4)),
    printed=dict(EXAMPLE1.printed),
)

EXAMPLE2 = WorkedExample(
    name="example2",
    probs=((0.05, 0.03, 0.20), (0.30, 0.07, 0.05), (0.04, 0.20, 0.06)),
    printed={"pearson": -0.2025, "rho_m": 0.4113, "cramers_v": 0.5472, "tschuprow_t": 0.5472},
    supports=_STATES3,
)

EXAMPLE2_INDEPENDENCE = (
    (0.1092, 0.084, 0.0868),
    (0.1638, 0.126, 0.1302),
    (0.1170, 0.090, 0.0930),
)
EXAMPLE2_X_CANDIDATE = ((0.0, 0.0, 0.28), (0.42, 0.0, 0.0), (0.0, 0.30, 0.0))
EXAMPLE2_Y_CANDIDATE = ((0.0, 0.0, 0.31), (0.39, 0.0, 0.0), (0.0, 0.30, 0.0))

EXAMPLE2_LINEAR = WorkedExample(
    name="example2-linear",
    probs=((0.05, 0.03, 0.20), (0.04, 0.20, 0.05), (0.30, 0.07, 0.06)),
    printed={"pearson": -0.5474, "rho_m": 0.4075, "cramers_v": 0.5467, "tschuprow_t": 0.5467},
    supports=_STATES3,
)

EXAMPLE3 = WorkedExample(
    name="example3",
    probs=((0.30, 0.03, 0.20), (0.05, 0.07, 0.05), (0.04, 0.20, 0.06)),
    printed={"pearson": 0.1383, "rho_m": 0.450011, "cramers_v": 0.4257843, "tschuprow_t": 0.4257843},
    supports=_STATES3,
)

EXAMPLE4 = WorkedExample(
    name="example4",
    probs=(
        (0.11, 0.01, 0.01, 0.01, 0.01),
        (0.01, 0.01, 0.01, 0.01, 0.25),
        (0.01, 0.10, 0.10, 0.01, 0.01),
        (0.01, 0.01, 0.01, 0.15, 0.01),
        (0.01, 0.10, 0.01, 0.01, 0.01),
    ),
    printed={"pearson": -0.0491, "rho_m": 0.5731, "cramers_v": 0.6652, "tschuprow_t": 0.6652},
    supports=((1.0, 2.0, 3.0, 4.0, 5.0), (1.0, 2.0, 3.0, 4.0, 5.0)),
)

EXAMPLE4_X_CANDIDATES = (
    (
        (0.15, 0.0, 0.0, 0.0, 0.0),
        (0.0, 0.0, 0.0, 0.0, 0.29),
        (0.0, 0.23, 0.0, 0.0, 0.0),
        (0.0, 0.0, 0.0, 0.19, 0.0),
        (0.0, 0.14, 0.0, 0.0, 0.0),
    ),
    (
        (0.15, 0.0, 0.0, 0.0, 0.0),
        (0.0, 0.0, 0.0, 0.0, 0.29),
        (0.0, 0.0, 0.23, 0.0, 0.0),
        (0.0, 0.0, 0.0, 0.19, 0.0),
        (0.0, 0.14, 0.0, 0.0, 0.0),
    ),
)

WORKED_EXAMPLES = (EXAMPLE1, EXAMPLE1_TRANSPOSED, EXAMPLE2, EXAMPLE2_LINEAR, EXAMPLE3, EXAMPLE4)

# Mutual-information pairs: the second table of each pair is the more dependent one.
MI_P = ((3 / 8, 1 / 8), (1 / 8, 3 / 8))
MI_Q = ((1 / 2, 0.0), (1 / 8, 3 / 8))
MI_R = ((0.0, 1 / 7, 1 / 7), (1 / 7, 1 / 7, 1 / 7), (1 / 7, 1 / 7, 0.0))
MI_S = ((0.0, 0.0, 2 / 7), (1 / 7, 2 / 7, 0.0), (1 / 7, 1 / 7, 0.0))

# Published orderings: MI_p > MI_q and MI_r < MI_s.
MI_PRINTED_ORDERINGS = {"p_gt_q": True, "r_lt_s": True}
