"""
Syzygy CLI

Command-line interface for Hellinger-based dependence measurement of
discrete bivariate distributions.

Commands:
  analyze  - Measure one table
  batch    - Measure every table in a directory
  oracle   - Run verification claims, write provenance
  info     - Show version, settings and commands

Exit codes: 0 success, 1 usage error, 2 data error, 3 oracle failure.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any, Optional

import click

from . import __version__
from .settings import SYZYGY_ENV, Settings, SettingsError, load_settings

VERSION = __version__
USAGE_EXIT_CODE = 1


# ============ Banner ============


def _print_banner() -> None:
    """Print the Syzygy banner."""
    border = click.style("  ◆ ═══════════════════════════════════════ ◆", fg="cyan")
    click.echo()
    click.echo(border)
    click.echo()
    click.echo(
        click.style("          S Y Z Y G Y", fg="bright_white", bold=True)
        + click.style(f"          v{VERSION}", dim=True)
    )
    click.secho("      ─── Dependence, measured geometrically ───", fg="cyan")
    click.echo()
    click.echo(border)
    click.echo()


def _configure_logging(verbosity: int) -> None:
    # Without -v, warnings reach stderr through logging's last-resort handler.
    if verbosity == 0:
        return
    logging.basicConfig(
        level=logging.INFO if verbosity == 1 else logging.DEBUG,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


# ============ Main CLI Group ============


class SyzygyGroup(click.Group):
    """Click group that reports usage errors with exit code 1."""

    def main(self, *args: Any, standalone_mode: bool = True, **kwargs: Any) -> Any:
        if not standalone_mode:
            return super().main(*args, standalone_mode=False, **kwargs)
        try:
            return super().main(*args, standalone_mode=False, **kwargs)
        except click.UsageError as exc:
            exc.show()
            sys.exit(USAGE_EXIT_CODE)
        except click.ClickException as exc:
            exc.show()
            sys.exit(exc.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(USAGE_EXIT_CODE)


@click.group(cls=SyzygyGroup, invoke_without_command=True)
@click.version_option(version=VERSION, prog_name="syzygy")
@click.option("--verbose", "-v", count=True, help="Log to stderr (-v info, -vv debug)")
@click.option(
    "--env-file",
    type=click.Path(dir_okay=False, path_type=Path),
    envvar="SYZYGY_ENV_FILE",
    help=f"Dotenv settings file (default: {SYZYGY_ENV})",
)
@click.pass_context
def cli(ctx: click.Context, verbose: int, env_file: Optional[Path]) -> None:
    """Syzygy — Hellinger-based dependence measures for contingency tables."""
    _configure_logging(verbose)
    try:
        ctx.obj = load_settings(env_path=env_file)
    except SettingsError as exc:
        raise click.UsageError(str(exc)) from exc
    if ctx.invoked_subcommand is None:
        _print_banner()
        click.echo(ctx.get_help())


# ============ Top-level Commands ============

from .praxis.analyze import analyze
from .praxis.batch import batch
from .praxis.oracle import oracle

cli.add_command(analyze)
cli.add_command(batch)
cli.add_command(oracle)


# ============ Info ============


@cli.command()
@click.pass_context
def info(ctx: click.Context) -> None:
    """Show version, active settings and commands."""
    _print_banner()
    settings = ctx.find_object(Settings) or Settings()

    click.secho("  Settings ───────────────────────────────", fg="cyan")
    click.echo()
    for key, value in settings.to_dict().items():
        click.echo(
            click.style(f"  {key:<16}", dim=True)
            + click.style(str(value), fg="bright_white")
        )
    click.echo()

    click.secho("  Commands ───────────────────────────────", fg="cyan")
    click.echo()
    commands = [
        ("analyze", "Measure one table"),
        ("batch  ", "Measure every table in a directory"),
        ("oracle ", "Verify claims, write provenance"),
        ("info   ", "Show this overview"),
    ]
    for cmd, desc in commands:
        click.echo(
            click.style("  ", dim=True)
            + click.style(cmd, fg="bright_white", bold=True)
            + click.style("  ◇  ", fg="cyan")
            + click.style(desc, dim=True)
        )
    click.echo()


# ============ Entry Points ============


def main() -> None:
    """Syzygy CLI entry point."""
    if sys.platform == "win32":
        try:
            sys.stdout.reconfigure(encoding="utf-8")  # type: ignore[union-attr]
            sys.stderr.reconfigure(encoding="utf-8")  # type: ignore[union-attr]
        except (AttributeError, OSError):
            pass
    cli()


if __name__ == "__main__":
    main()
