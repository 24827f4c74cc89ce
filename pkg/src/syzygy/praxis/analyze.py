"""
Analyze - Measure the dependence in one table.

Reads a CSV or JSON table, evaluates the requested measures and prints a
report (JSON by default) on stdout. Per-measure failures are recorded in
the report; unreadable or invalid tables exit with code 2.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Optional

import click

from ..analysis import OUTPUT_FORMATS, AnalysisError, AnalysisOptions, analyze_source, parse_measures, render
from ..pinax.io import FORMATS, KINDS, read_table
from ..pinax.table import TableError
from ..settings import LOG_BASES, RHO_M_VARIANTS, Settings, SettingsError
from ..spec.schemas import SchemaValidationError


def resolve_settings(ctx: click.Context, **overrides: Any) -> Settings:
    """Settings loaded by the group, with non-None command flags applied."""
    base = ctx.find_object(Settings) or Settings()
    try:
        return base.with_overrides(**overrides)
    except SettingsError as exc:
        raise click.UsageError(str(exc)) from exc


def build_options(
    measures: Optional[str],
    default_supports: bool,
    sample_size: Optional[int],
    settings: Settings,
) -> AnalysisOptions:
    try:
        selected = parse_measures(measures)
    except AnalysisError as exc:
        raise click.UsageError(str(exc)) from exc
    return AnalysisOptions(
        measures=selected,
        default_supports=default_supports,
        sample_size=sample_size,
        settings=settings,
    )


def error_document(path: str, exc: Exception) -> dict[str, Any]:
    return {"input": {"path": path}, "error": {"type": type(exc).__name__, "message": str(exc)}}


def table_options(func):
    """Flags shared by analyze and batch."""
    decorators = [
        click.option("--format", "fmt", type=click.Choice(FORMATS), help="Input format (default: from suffix)"),
        click.option("--kind", type=click.Choice(KINDS), help="CSV entries are counts or probabilities"),
        click.option("--measures", help="Comma-separated measure names (default: all applicable)"),
        click.option("--default-supports", is_flag=True, help="Use states 1..n / 1..m for Pearson"),
        click.option(
            "--rho-m-variant",
            type=click.Choice(RHO_M_VARIANTS),
            envvar="SYZYGY_RHO_M_VARIANT",
            help="rho^M denominator form",
        ),
        click.option("--log-base", type=click.Choice(LOG_BASES), envvar="SYZYGY_LOG_BASE", help="Information unit"),
        click.option("--output", type=click.Choice(OUTPUT_FORMATS), default="json", show_default=True),
        click.option("--sample-size", type=click.IntRange(min=1), help="n for chi-squared, V, T and Z"),
        click.option("--candidate-cap", type=click.IntRange(min=1), envvar="SYZYGY_CANDIDATE_CAP"),
        click.option("--seed", type=int, envvar="SYZYGY_SEED", help="Seed recorded in the report options"),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


@click.command()
@click.option(
    "--input",
    "-i",
    "input_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Table file (CSV or JSON)",
)
@table_options
@click.option("--out-file", "-o", type=click.Path(dir_okay=False, path_type=Path), help="Write the report here")
@click.pass_context
def analyze(
    ctx: click.Context,
    input_path: Path,
    fmt: Optional[str],
    kind: Optional[str],
    measures: Optional[str],
    default_supports: bool,
    rho_m_variant: Optional[str],
    log_base: Optional[str],
    output: str,
    sample_size: Optional[int],
    candidate_cap: Optional[int],
    seed: Optional[int],
    out_file: Optional[Path],
) -> None:
    """
    Measure the dependence between the two variables of a table.

    Prints a report with one entry per requested measure.
    """
    settings = resolve_settings(
        ctx,
        rho_m_variant=rho_m_variant,
        log_base=log_base,
        candidate_cap=candidate_cap,
        seed=seed,
    )
    options = build_options(measures, default_supports, sample_size, settings)

    try:
        source = read_table(input_path, fmt=fmt, kind=kind)
        report = analyze_source(source, options, path=str(input_path))
    except (TableError, SchemaValidationError) as exc:
        click.secho(f"ERROR: {exc}", fg="red", err=True)
        click.echo(json.dumps(error_document(str(input_path), exc), sort_keys=True))
        sys.exit(exc.exit_code)

    text = render(report, output)
    if out_file is not None:
        out_file.parent.mkdir(parents=True, exist_ok=True)
        out_file.write_text(text, encoding="utf-8")
        click.secho(f"Report written to {out_file}", fg="green", err=True)
    else:
        click.echo(text, nl=False)
