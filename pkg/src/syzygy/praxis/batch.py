"""
Batch - Measure every table in a directory.

Files are processed in filename order (optionally on a thread pool) and
reports are emitted in that order: JSON Lines, one CSV, or Markdown
sections. A file that cannot be read is reported inline and makes the
command exit with code 2 after all files are done.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Union

import click

from ..analysis import AnalysisOptions, analyze_source, render_csv, render_markdown
from ..pinax.io import FORMATS, read_table
from ..pinax.table import TableError
from ..spec.models import MeasureReport
from ..spec.schemas import SchemaValidationError
from ..utils import normalize_relpath
from .analyze import build_options, error_document, resolve_settings, table_options

SKIPPED_SUFFIXES = (".report.json", ".oracle.json")

Outcome = Union[MeasureReport, dict]


def table_files(directory: Path) -> list[Path]:
    files = []
    for path in sorted(directory.iterdir(), key=lambda p: p.name):
        if not path.is_file() or path.suffix.lower().lstrip(".") not in FORMATS:
            continue
        if path.name.endswith(SKIPPED_SUFFIXES):
            continue
        files.append(path)
    return files


def _measure_file(
    path: Path,
    root: Path,
    options: AnalysisOptions,
    fmt: Optional[str],
    kind: Optional[str],
) -> Outcome:
    rel = normalize_relpath(path, root)
    try:
        return analyze_source(read_table(path, fmt=fmt, kind=kind), options, path=rel)
    except (TableError, SchemaValidationError) as exc:
        return error_document(rel, exc)


@click.command()
@click.option(
    "--input",
    "-i",
    "input_dir",
    required=True,
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    help="Directory of table files",
)
@table_options
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True, help="Parallel workers")
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path), help="Also write <name>.report.json here")
@click.pass_context
def batch(
    ctx: click.Context,
    input_dir: Path,
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
    workers: int,
    out_dir: Optional[Path],
) -> None:
    """Measure every CSV/JSON table in a directory."""
    settings = resolve_settings(
        ctx,
        rho_m_variant=rho_m_variant,
        log_base=log_base,
        candidate_cap=candidate_cap,
        seed=seed,
    )
    options = build_options(measures, default_supports, sample_size, settings)
    files = table_files(input_dir)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(lambda p: _measure_file(p, input_dir, options, fmt, kind), files))

    reports = [o for o in outcomes if isinstance(o, MeasureReport)]
    failures = [o for o in outcomes if not isinstance(o, MeasureReport)]

    if output == "csv":
        click.echo(render_csv(reports), nl=False)
    for path, outcome in zip(files, outcomes):
        if isinstance(outcome, MeasureReport):
            if output == "json":
                click.echo(json.dumps(outcome.to_dict(), sort_keys=True))
            elif output == "md":
                click.echo(render_markdown(outcome))
            if out_dir is not None:
                outcome.write(out_dir / f"{path.stem}.report.json")
        else:
            click.secho(f"ERROR: {outcome['input']['path']}: {outcome['error']['message']}", fg="red", err=True)
            if output == "json":
                click.echo(json.dumps(outcome, sort_keys=True))

    if failures:
        sys.exit(TableError.exit_code)
