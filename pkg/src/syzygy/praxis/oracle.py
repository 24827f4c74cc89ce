"""
Oracle - Run verification claims and record their provenance.

Prints the report of the claim (or every report for ``all``) and merges it
into the provenance file. Exits with code 3 when a claim fails.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional

import click

from ..elenchus.oracle import OracleError
from ..elenchus.provenance import CLAIMS, ClaimOptions, claim_key, provenance_payload, run_all, run_claim, write_provenance
from ..settings import RHO_M_VARIANTS
from ..spec.schemas import dump_json
from .analyze import resolve_settings


@click.command()
@click.argument("claim", type=click.Choice([*CLAIMS, "all"]))
@click.option("--n", "n", type=click.IntRange(min=1), help="Distribution size, coupling size or table rows")
@click.option("--m", "m", type=click.IntRange(min=1), help="Table columns (rho-m-bound)")
@click.option("--trials", type=click.IntRange(min=1), help="Samples, configurations or tables")
@click.option("--seed", type=int, envvar="SYZYGY_SEED", help="Random seed")
@click.option("--rho-m-variant", type=click.Choice(RHO_M_VARIANTS), envvar="SYZYGY_RHO_M_VARIANT")
@click.option(
    "--provenance",
    "provenance_path",
    type=click.Path(dir_okay=False, path_type=Path),
    envvar="SYZYGY_PROVENANCE",
    help="Provenance file to update",
)
@click.option("--no-merge", is_flag=True, help="Replace the provenance file instead of merging")
@click.pass_context
def oracle(
    ctx: click.Context,
    claim: str,
    n: Optional[int],
    m: Optional[int],
    trials: Optional[int],
    seed: Optional[int],
    rho_m_variant: Optional[str],
    provenance_path: Optional[Path],
    no_merge: bool,
) -> None:
    """
    Verify CLAIM by brute force.

    Claims: prop1, cov-max, rho-m-bound, example4-variant, mi-examples,
    worked-examples, or all.
    """
    settings = resolve_settings(ctx, seed=seed, rho_m_variant=rho_m_variant, provenance_path=provenance_path)

    try:
        if claim == "all":
            reports = run_all(seed=settings.seed, trials=trials)
        else:
            options = ClaimOptions(
                n=n,
                m=m,
                trials=trials,
                seed=settings.seed,
                variant=settings.rho_m_variant,
                candidate_cap=settings.candidate_cap,
                tie_rtol=settings.tie_rtol,
            )
            reports = {claim_key(claim, options): run_claim(claim, options)}
        payload = provenance_payload(reports)
        write_provenance(settings.provenance_path, reports, merge=not no_merge)
    except OracleError as exc:
        click.secho(f"ERROR: {exc}", fg="red", err=True)
        sys.exit(exc.exit_code)

    if claim == "all":
        click.echo(dump_json(payload), nl=False)
    else:
        click.echo(dump_json(next(iter(payload.values()))), nl=False)

    failed = sorted(key for key, report in reports.items() if not report.passed)
    for key in sorted(reports):
        if key in failed:
            click.secho(f"FAIL {key}", fg="red", err=True)
        else:
            click.secho(f"pass {key}", fg="green", err=True)
    click.echo(f"Provenance: {settings.provenance_path}", err=True)
    if failed:
        sys.exit(OracleError.exit_code)
