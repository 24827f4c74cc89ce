"""
Brute-force verifiers.

Every claim the measures rely on is re-checked here by enumeration, random
search, or comparison with the reference evaluators. A claim never raises
on a failed check: it returns an OracleReport with ``passed=False`` and the
offending input as ``witness``. OracleError is reserved for unusable
arguments.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from ..mensura.classical import (
    NumericSupport,
    cramers_v,
    mutual_information,
    pearson_rho,
    phi_coefficient,
    tschuprow_t,
)
from ..metron.dependence import full_dep_candidates, rho_m
from ..metron.hellinger import FlatDistribution, hellinger, max_distanced
from ..pinax.table import from_probs, independence_product, marginals
from ..settings import RHO_M_VARIANTS
from ..utils import to_builtin
from . import fixtures, reference
from .sampling import make_rng, random_table, simplex

logger = logging.getLogger(__name__)

EXACT_TOLERANCE = 1e-12
REFERENCE_TOLERANCE = 1e-9
UNIT_BOUND_SLACK = 1e-9
MAX_COUPLING_STATES = 8
MAX_BOUND_STATES = 6
_CHUNK = 10_000


class OracleError(RuntimeError):
    exit_code: int = 3


@dataclass(frozen=True)
class Coupling:
    """
    A one-to-one assignment of X's states to Y's states carrying ``mass``.

    Attributes:
        permutation: State i of X is paired with state permutation[i] of Y
        mass: Positive mass on cell (i, permutation[i])
    """
    permutation: tuple[int, ...]
    mass: tuple[float, ...]

    def __post_init__(self) -> None:
        if sorted(self.permutation) != list(range(len(self.permutation))):
            raise OracleError(f"Not a bijection: {self.permutation}")
        if len(self.mass) != len(self.permutation) or any(m <= 0 for m in self.mass):
            raise OracleError("Coupling mass must be positive, one entry per state.")

    def cells(self) -> np.ndarray:
        n = len(self.permutation)
        out = np.zeros((n, n), dtype=float)
        out[np.arange(n), list(self.permutation)] = self.mass
        return out

    def score(self, support_x: Sequence[float], support_y: Sequence[float]) -> float:
        """sum_i m_i a_i b_f(i), the cross moment E{XY} under this coupling."""
        return math.fsum(m * support_x[i] * support_y[j] for i, (j, m) in enumerate(zip(self.permutation, self.mass)))


@dataclass(frozen=True)
class OracleReport:
    """
    Outcome of one claim.

    Attributes:
        claim: Claim id
        trials: Cases examined (vertices, samples, couplings, tables)
        worst_margin: Smallest slack observed; negative means violated
        passed: Whether every check held
        witness: Offending input when ``passed`` is False
        details: Claim-specific computed values
    """
    claim: str
    trials: int
    worst_margin: Optional[float]
    passed: bool
    witness: Any = None
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.passed and self.witness is None:
            raise OracleError(f"Failed claim {self.claim!r} has no witness.")

    def to_dict(self) -> dict[str, Any]:
        return to_builtin({
            "claim": self.claim,
            "trials": self.trials,
            "worst_margin": self.worst_margin,
            "passed": self.passed,
            "witness": self.witness,
            "details": self.details,
        })


def _positive(p: Sequence[float]) -> FlatDistribution:
    dist = FlatDistribution(np.asarray(p, dtype=float))
    if not dist.is_positive():
        raise OracleError("Distribution must be strictly positive.")
    return dist


# ============ Farthest distribution ============


def verify_prop1(
    p: Sequence[float],
    mode: str = "vertex",
    trials: int = 100_000,
    seed: int = 42,
) -> OracleReport:
    """
    Check that the point mass on min(p) is the farthest distribution from p.

    vertex: evaluate all N point masses. random: sample ``trials``
    distributions uniformly from the simplex; none may be farther.
    """
    dist = _positive(p)
    closed = max_distanced(dist)
    if mode == "vertex":
        return _prop1_vertices(dist, closed.index, closed.distance)
    if mode == "random":
        return _prop1_random(dist, closed.distance, trials, seed)
    raise OracleError(f"Unknown mode: {mode!r}")


def _prop1_vertices(dist: FlatDistribution, index: int, closed: float) -> OracleReport:
    distances = []
    for k in range(dist.size):
        vertex = np.zeros(dist.size)
        vertex[k] = 1.0
        distances.append(hellinger(dist, vertex))
    best = max(distances)
    ties = [k for k, d in enumerate(distances) if abs(d - best) <= EXACT_TOLERANCE]
    passed = abs(distances[index] - best) <= EXACT_TOLERANCE and abs(closed - best) <= EXACT_TOLERANCE
    return OracleReport(
        claim="prop1",
        trials=dist.size,
        worst_margin=closed - best,
        passed=passed,
        witness=None if passed else {"p": dist.probs, "distances": distances},
        details={
            "mode": "vertex",
            "maximizer": index,
            "tied_maximizers": ties,
            "closed_form": closed,
            "vertex_distances": distances,
        },
    )


def _prop1_random(dist: FlatDistribution, closed: float, trials: int, seed: int) -> OracleReport:
    if trials < 1:
        raise OracleError("trials must be positive.")
    rng = make_rng(seed)
    root_p = np.sqrt(dist.probs)
    best, witness = -1.0, None
    done = 0
    # Chunks are drawn and reduced in order so the result is seed-determined.
    while done < trials:
        count = min(_CHUNK, trials - done)
        draws = simplex(rng, dist.size, count)
        distances = np.sqrt(0.5 * ((root_p[None, :] - np.sqrt(draws)) ** 2).sum(axis=1))
        k = int(np.argmax(distances))
        if distances[k] > best:
            best = float(distances[k])
            if best > closed + EXACT_TOLERANCE and witness is None:
                witness = {"p": dist.probs, "q": draws[k], "distance": best}
        done += count
    return OracleReport(
        claim="prop1",
        trials=trials,
        worst_margin=closed - best,
        passed=witness is None,
        witness=witness,
        details={"mode": "random", "seed": seed, "closed_form": closed, "max_sampled": best},
    )


# ============ Covariance maximality ============


def _increasing(values: Sequence[float]) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))


def verify_cov_max(
    support_x: Sequence[float],
    support_y: Sequence[float],
    mass: Sequence[float],
) -> OracleReport:
    """
    Enumerate every one-to-one coupling carrying ``mass`` and check that the
    identity (sorted onto sorted) maximizes E{XY} and the reversal minimizes it.

    The check can only hold when m_i * a_i is nondecreasing in i; that
    condition is reported as ``weighted_order_condition``.
    """
    n = len(mass)
    if n > MAX_COUPLING_STATES:
        raise OracleError(f"Exhaustive enumeration is limited to {MAX_COUPLING_STATES} states, got {n}.")
    if len(support_x) != n or len(support_y) != n or n < 2:
        raise OracleError("Supports and mass must share a length of at least 2.")
    if not (_increasing(support_x) and _increasing(support_y)):
        raise OracleError("Supports must be strictly increasing.")
    mass = tuple(float(m) for m in mass)

    scores = {}
    for perm in itertools.permutations(range(n)):
        scores[perm] = Coupling(perm, mass).score(support_x, support_y)
    identity = tuple(range(n))
    reversal = tuple(reversed(identity))
    best = max(scores, key=lambda k: scores[k])
    worst = min(scores, key=lambda k: scores[k])
    margin = min(scores[identity] - scores[best], scores[worst] - scores[reversal])
    passed = margin >= -EXACT_TOLERANCE
    weighted = [m * a for m, a in zip(mass, support_x)]
    return OracleReport(
        claim="cov-max",
        trials=len(scores),
        worst_margin=margin,
        passed=passed,
        witness=None if passed else {
            "support_x": list(support_x),
            "support_y": list(support_y),
            "mass": list(mass),
            "maximizer": list(best),
            "minimizer": list(worst),
        },
        details={
            "identity_score": scores[identity],
            "reversal_score": scores[reversal],
            "max_score": scores[best],
            "min_score": scores[worst],
            "weighted_order_condition": all(b >= a for a, b in zip(weighted, weighted[1:])),
        },
    )


def random_cov_max_config(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Positive increasing supports with an ascending positive mass vector."""
    support_x = np.cumsum(rng.uniform(0.1, 1.0, size=n))
    support_y = np.cumsum(rng.uniform(0.1, 1.0, size=n)) - rng.uniform(0.0, 1.0)
    mass = np.sort(simplex(rng, n))
    return support_x, support_y, mass


# ============ rho^M upper bound ============


def search_rho_m_bound(
    n: int,
    m: int,
    trials: int = 10_000,
    seed: int = 1,
    variant: str = "definition1",
    cap: int = 4096,
    tie_rtol: float = 1e-12,
) -> OracleReport:
    """Sample random n×m tables and record the largest rho^M seen."""
    if not (2 <= n <= MAX_BOUND_STATES and 2 <= m <= MAX_BOUND_STATES):
        raise OracleError(f"Table dimensions must lie in [2, {MAX_BOUND_STATES}], got {n}×{m}.")
    if trials < 1:
        raise OracleError("trials must be positive.")
    rng = make_rng(seed)
    best, best_table = -1.0, None
    exceed, witness = 0, None
    floor = None
    for t in range(trials):
        table = random_table(rng, n, m)
        value = rho_m(table, variant=variant, cap=cap, tie_rtol=tie_rtol).value
        if floor is None:
            floor = rho_m(independence_product(table), variant=variant, cap=cap, tie_rtol=tie_rtol).value
        if value > best:
            best, best_table = value, table.probs
        if value > 1.0 + UNIT_BOUND_SLACK:
            exceed += 1
            if witness is None:
                witness = {"trial": t, "probs": table.probs, "rho_m": value}
    logger.info("rho^M bound search %dx%d: max %.12g over %d tables", n, m, best, trials)
    return OracleReport(
        claim="rho-m-bound",
        trials=trials,
        worst_margin=1.0 - best,
        passed=witness is None,
        witness=witness,
        details={
            "shape": [n, m],
            "seed": seed,
            "variant": variant,
            "max_observed": best,
            "max_table": best_table,
            "exceed_count": exceed,
            "independence_floor": floor,
        },
    )


# ============ Published examples ============


def resolve_example4_variant() -> OracleReport:
    """Evaluate both rho^M denominators on the 5×5 example against its printed value."""
    example = fixtures.EXAMPLE4
    table = example.table()
    printed = example.printed["rho_m"]
    tolerance = example.tolerance_for("rho_m")
    ref = reference.rho_m(example.probs)

    values, deviations, gaps = {}, {}, []
    results = {}
    for variant in RHO_M_VARIANTS:
        result = rho_m(table, variant=variant)
        results[variant] = result
        values[variant] = result.value
        deviations[variant] = abs(result.value - printed)
        gaps.append(abs(result.value - ref[variant]))
    matching = [v for v in RHO_M_VARIANTS if deviations[v] <= tolerance]
    if not matching:
        logger.warning("neither rho^M variant reproduces the printed %s", printed)

    defn, compat = results["definition1"], results["example4-compat"]
    consistent = max(gaps) <= REFERENCE_TOLERANCE
    return OracleReport(
        claim="example4-variant",
        trials=len(RHO_M_VARIANTS),
        worst_margin=REFERENCE_TOLERANCE - max(gaps),
        passed=consistent,
        witness=None if consistent else {"values": values, "reference": {v: ref[v] for v in RHO_M_VARIANTS}},
        details={
            "printed": printed,
            "tolerance": tolerance,
            "values": values,
            "reference_values": {v: ref[v] for v in RHO_M_VARIANTS},
            "deviations": deviations,
            "matching_variants": matching,
            "candidate_counts": list(defn.candidate_counts),
            "numerator": defn.numerator,
            "distances_x": list(defn.distances_x),
            "distances_y": list(defn.distances_y),
            "denominators": {"definition1": defn.denominator, "example4-compat": compat.denominator},
            "squared_definition1_denominator": defn.denominator**2,
        },
    )


def verify_mi_examples() -> OracleReport:
    """
    Mutual information of the p/q and r/s tables against the published
    orderings. Passing requires agreement with the reference evaluator and
    MI_r < MI_s; the p/q ordering is recorded, not required.
    """
    tables = {"p": fixtures.MI_P, "q": fixtures.MI_Q, "r": fixtures.MI_R, "s": fixtures.MI_S}
    values = {k: mutual_information(from_probs([list(r) for r in v])) for k, v in tables.items()}
    ref = {k: reference.mutual_information(v) for k, v in tables.items()}
    gap = max(abs(values[k] - ref[k]) for k in tables)
    orderings = {"p_gt_q": values["p"] > values["q"], "r_lt_s": values["r"] < values["s"]}
    reproduced = {k: orderings[k] == fixtures.MI_PRINTED_ORDERINGS[k] for k in orderings}
    notes = []
    if not reproduced["p_gt_q"]:
        notes.append(
            f"Published ordering MI_p > MI_q not reproduced: MI_p = {values['p']:.6f}, MI_q = {values['q']:.6f} nats."
        )
        logger.warning(notes[-1])
    passed = gap <= EXACT_TOLERANCE and orderings["r_lt_s"]
    return OracleReport(
        claim="mi-examples",
        trials=len(tables),
        worst_margin=values["s"] - values["r"],
        passed=passed,
        witness=None if passed else {"values": values, "reference": ref},
        details={
            "values": values,
            "reference_values": ref,
            "max_reference_gap": gap,
            "orderings": orderings,
            "printed_orderings": dict(fixtures.MI_PRINTED_ORDERINGS),
            "reproduced": reproduced,
            "notes": notes,
        },
    )


def _computed_measures(example: fixtures.WorkedExample) -> dict[str, Any]:
    table = example.table()
    result = rho_m(table)
    out: dict[str, Any] = {
        "rho_m": result.value,
        "rho_m_compat": rho_m(table, variant="example4-compat").value,
        "numerator": result.numerator,
        "distances_x": list(result.distances_x),
        "distances_y": list(result.distances_y),
        "candidate_counts": list(result.candidate_counts),
        "cramers_v": cramers_v(table, 1),
        "tschuprow_t": tschuprow_t(table, 1),
        "marginals": marginals(table).to_dict(),
    }
    if table.shape == (2, 2):
        out["phi"] = phi_coefficient(table)
    if example.supports is not None:
        out["pearson"] = pearson_rho(table, NumericSupport(*example.supports))
    return out


def _reference_measures(example: fixtures.WorkedExample) -> dict[str, float]:
    ref = reference.rho_m(example.probs)
    out = {
        "rho_m": ref["definition1"],
        "rho_m_compat": ref["example4-compat"],
        "numerator": ref["numerator"],
        "cramers_v": reference.cramers_v(example.probs),
        "tschuprow_t": reference.tschuprow_t(example.probs),
    }
    if len(example.probs) == 2 and len(example.probs[0]) == 2:
        out["phi"] = reference.phi(example.probs)
    if example.supports is not None:
        out["pearson"] = reference.pearson(example.probs, *example.supports)
    return out


def reproduce_worked_examples() -> OracleReport:
    """
    Recompute every worked table with the measures and the reference
    evaluators, compare both with the published values, and list each
    published value outside tolerance as a discrepancy.
    """
    records: dict[str, Any] = {}
    discrepancies = []
    gap = 0.0
    for example in fixtures.WORKED_EXAMPLES:
        computed = _computed_measures(example)
        ref = _reference_measures(example)
        for key, value in ref.items():
            gap = max(gap, abs(computed[key] - value))
        for measure, printed in example.printed.items():
            deviation = abs(computed[measure] - printed)
            if deviation > example.tolerance_for(measure):
                discrepancies.append({
                    "example": example.name,
                    "measure": measure,
                    "printed": printed,
                    "computed": computed[measure],
                    "deviation": deviation,
                    "tolerance": example.tolerance_for(measure),
                    "numerator": computed["numerator"],
                    "distances_x": computed["distances_x"],
                    "distances_y": computed["distances_y"],
                })
        records[example.name] = {"printed": dict(example.printed), "computed": computed, "reference": ref}

    for item in discrepancies:
        logger.warning("%s %s: printed %s, computed %.6f", item["example"], item["measure"], item["printed"], item["computed"])

    base, flipped = records["example1"]["computed"], records["example1-transposed"]["computed"]
    transpose_gap = max(abs(base[k] - flipped[k]) for k in ("phi", "rho_m", "cramers_v", "tschuprow_t"))
    consistent = gap <= REFERENCE_TOLERANCE and transpose_gap <= EXACT_TOLERANCE

    candidates = _example2_candidates()
    return OracleReport(
        claim="worked-examples",
        trials=len(fixtures.WORKED_EXAMPLES),
        worst_margin=REFERENCE_TOLERANCE - gap,
        passed=consistent,
        witness=None if consistent else {"reference_gap": gap, "transpose_gap": transpose_gap},
        details={
            "examples": records,
            "discrepancies": discrepancies,
            "max_reference_gap": gap,
            "transpose_gap": transpose_gap,
            "example2_candidates": candidates,
        },
    )


def _example2_candidates() -> dict[str, Any]:
    table = fixtures.EXAMPLE2.table()
    set_x = full_dep_candidates(table, "X")
    set_y = full_dep_candidates(table, "Y")
    printed_x = np.asarray(fixtures.EXAMPLE2_X_CANDIDATE)
    printed_y = np.asarray(fixtures.EXAMPLE2_Y_CANDIDATE)
    return {
        "x_matches": len(set_x) == 1 and bool(np.allclose(set_x.tables[0].probs, printed_x, rtol=0, atol=EXACT_TOLERANCE)),
        "y_matches": len(set_y) == 1 and bool(np.allclose(set_y.tables[0].probs, printed_y, rtol=0, atol=EXACT_TOLERANCE)),
        "independence_gap": float(np.abs(independence_product(table).probs - np.asarray(fixtures.EXAMPLE2_INDEPENDENCE)).max()),
    }
