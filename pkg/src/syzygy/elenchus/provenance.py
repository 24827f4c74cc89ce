"""
Claim registry and the provenance file.

The provenance file is a JSON object mapping claim keys to oracle reports,
written with sorted keys and fixed indentation so that runs with equal
seeds produce byte-identical files.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from ..spec.schemas import SchemaRegistry, SchemaValidationError, dump_json
from . import oracle
from .oracle import OracleError, OracleReport
from .sampling import make_rng, positive_distribution

logger = logging.getLogger(__name__)

DEFAULT_PROP1_DISTRIBUTION = (0.25, 0.25, 0.5)


@dataclass(frozen=True)
class ClaimOptions:
    """
    Knobs shared by the claims; each claim reads the ones it understands.

    Attributes:
        n: Distribution size (prop1), coupling size (cov-max) or rows (rho-m-bound)
        m: Columns (rho-m-bound)
        trials: Samples, configurations or tables
        seed: Random seed
        variant: rho^M variant (rho-m-bound)
        candidate_cap: Candidate cap (rho-m-bound)
        tie_rtol: Tie tolerance (rho-m-bound)
    """
    n: Optional[int] = None
    m: Optional[int] = None
    trials: Optional[int] = None
    seed: int = 42
    variant: str = "definition1"
    candidate_cap: int = 4096
    tie_rtol: float = 1e-12


def _merge(claim: str, parts: dict[str, OracleReport]) -> OracleReport:
    failed = {name: part.witness for name, part in parts.items() if not part.passed}
    margins = [p.worst_margin for p in parts.values() if p.worst_margin is not None]
    return OracleReport(
        claim=claim,
        trials=sum(p.trials for p in parts.values()),
        worst_margin=min(margins) if margins else None,
        passed=not failed,
        witness=failed or None,
        details={name: part.to_dict() for name, part in parts.items()},
    )


def claim_prop1(options: ClaimOptions) -> OracleReport:
    if options.n is None:
        p = np.asarray(DEFAULT_PROP1_DISTRIBUTION)
    else:
        p = positive_distribution(make_rng(options.seed), options.n)
    trials = options.trials if options.trials is not None else 100_000
    return _merge("prop1", {
        "vertex": oracle.verify_prop1(p, mode="vertex"),
        "random": oracle.verify_prop1(p, mode="random", trials=trials, seed=options.seed),
    })


def claim_cov_max(options: ClaimOptions) -> OracleReport:
    """Random configurations cycling through sizes 2..n."""
    largest = options.n if options.n is not None else 6
    configs = options.trials if options.trials is not None else 50
    if largest < 2:
        raise OracleError("cov-max needs n >= 2.")
    rng = make_rng(options.seed)
    parts = {}
    for t in range(configs):
        size = 2 + t % (largest - 1)
        parts[f"config-{t:03d}"] = oracle.verify_cov_max(*oracle.random_cov_max_config(rng, size))
    return _merge("cov-max", parts)


def claim_rho_m_bound(options: ClaimOptions) -> OracleReport:
    n = options.n if options.n is not None else 2
    m = options.m if options.m is not None else n
    return oracle.search_rho_m_bound(
        n,
        m,
        trials=options.trials if options.trials is not None else 10_000,
        seed=options.seed,
        variant=options.variant,
        cap=options.candidate_cap,
        tie_rtol=options.tie_rtol,
    )


CLAIMS: dict[str, Callable[[ClaimOptions], OracleReport]] = {
    "prop1": claim_prop1,
    "cov-max": claim_cov_max,
    "rho-m-bound": claim_rho_m_bound,
    "example4-variant": lambda _options: oracle.resolve_example4_variant(),
    "mi-examples": lambda _options: oracle.verify_mi_examples(),
    "worked-examples": lambda _options: oracle.reproduce_worked_examples(),
}


def claim_key(claim: str, options: ClaimOptions) -> str:
    if claim == "rho-m-bound":
        n = options.n if options.n is not None else 2
        m = options.m if options.m is not None else n
        return f"{claim}/{n}x{m}"
    return claim


def run_claim(claim: str, options: Optional[ClaimOptions] = None) -> OracleReport:
    """
    Run one registered claim.

    Raises:
        OracleError: On an unknown claim id or unusable options
    """
    if claim not in CLAIMS:
        raise OracleError(f"Unknown claim: {claim!r} (known: {', '.join(CLAIMS)})")
    options = options or ClaimOptions()
    logger.info("running claim %s", claim)
    report = CLAIMS[claim](options)
    if not report.passed:
        logger.warning("claim %s failed (worst margin %s)", claim, report.worst_margin)
    return report


def run_all(seed: int = 42, trials: Optional[int] = None) -> dict[str, OracleReport]:
    """
    Every claim with its default options; ``trials`` scales the randomized ones.

    The rho^M bound is checked on 2×2 and 3×3 tables.
    """
    reports: dict[str, OracleReport] = {}
    for claim in CLAIMS:
        if claim == "rho-m-bound":
            for size in (2, 3):
                options = ClaimOptions(n=size, m=size, trials=trials, seed=seed)
                reports[claim_key(claim, options)] = run_claim(claim, options)
            continue
        options = ClaimOptions(trials=None if claim == "cov-max" else trials, seed=seed)
        reports[claim_key(claim, options)] = run_claim(claim, options)
    return reports


def provenance_payload(reports: dict[str, OracleReport], registry: Optional[SchemaRegistry] = None) -> dict[str, Any]:
    registry = registry or SchemaRegistry.default()
    payload = {key: report.to_dict() for key, report in sorted(reports.items())}
    for key, entry in payload.items():
        try:
            registry.validate_instance(entry, "oracle.report.schema.json")
        except SchemaValidationError as exc:
            raise OracleError(f"Provenance entry {key!r} is invalid: {'; '.join(exc.errors)}") from exc
    return payload


def load_provenance(path: Path) -> dict[str, Any]:
    if not path.exists():
        return {}
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise OracleError(f"Provenance file {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise OracleError(f"Provenance file {path} must hold a JSON object.")
    return payload


def write_provenance(path: Path, reports: dict[str, OracleReport], merge: bool = True) -> dict[str, Any]:
    """
    Write reports to ``path``, keeping entries for other claims already there
    when ``merge`` is set.
    """
    payload = load_provenance(path) if merge else {}
    payload.update(provenance_payload(reports))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(payload), encoding="utf-8")
    logger.info("wrote %d provenance entries to %s", len(payload), path)
    return payload
