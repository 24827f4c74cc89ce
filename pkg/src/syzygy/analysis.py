"""
Measure selection and report assembly.

A report lists every requested measure exactly once, either with a value
or with a structured error; one failing measure never aborts the others.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional

from . import __version__
from .mensura import classical
from .metron.dependence import MeasureError, phi_style_component_distance, rho_m
from .metron.hellinger import DistributionError, hellinger
from .pinax.io import TableSource
from .pinax.table import JointTable, TableError, independence_product
from .settings import Settings
from .spec.models import MeasureReport
from .utils import canonical_digest, to_builtin

logger = logging.getLogger(__name__)

SPEC_VERSION = "v1"
SCHEMA_VERSION = "1.0.0"
OUTPUT_FORMATS = ("json", "csv", "md")


class AnalysisError(ValueError):
    exit_code: int = 1


@dataclass(frozen=True)
class AnalysisOptions:
    """
    Attributes:
        measures: Requested measure names; None selects every applicable one
        default_supports: Use {1..n} x {1..m} when the input has no supports
        sample_size: n for chi-squared, V, T and two-proportion Z
        settings: Resolved settings (variant, log base, candidate cap, ties)
    """
    measures: Optional[tuple[str, ...]] = None
    default_supports: bool = False
    sample_size: Optional[int] = None
    settings: Settings = Settings()


@dataclass(frozen=True)
class _Context:
    source: TableSource
    options: AnalysisOptions
    warnings: list[str]

    @property
    def table(self) -> JointTable:
        return self.source.table

    @property
    def settings(self) -> Settings:
        return self.options.settings

    def sample_size(self) -> int:
        n = self.options.sample_size if self.options.sample_size is not None else self.source.sample_size
        if n is None:
            raise classical.PreconditionError("A sample size is required for probability tables; pass --sample-size.")
        return n

    def support(self) -> tuple[classical.NumericSupport, str]:
        if self.source.values_x is not None and self.source.values_y is not None:
            return classical.NumericSupport(self.source.values_x, self.source.values_y), "input"
        if self.options.default_supports:
            return classical.NumericSupport.default_for(self.table), "default"
        raise classical.PreconditionError("Pearson correlation needs values_x/values_y or --default-supports.")


Entry = dict[str, Any]


def _rho_m(ctx: _Context) -> Entry:
    s = ctx.settings
    result = rho_m(ctx.table, variant=s.rho_m_variant, cap=s.candidate_cap, tie_rtol=s.tie_rtol)
    if result.exceeds_unit:
        ctx.warnings.append(f"rho_m = {result.value:.12g} exceeds 1; reported unclamped.")
    if result.candidate_counts != (1, 1):
        a, b = result.candidate_counts
        ctx.warnings.append(f"rho_m: tied maxima branched into {a} X and {b} Y candidates.")
    metadata = result.to_dict()
    metadata.pop("value")
    return {"value": result.value, "metadata": metadata}


def _hellinger_independence(ctx: _Context) -> Entry:
    return {"value": hellinger(independence_product(ctx.table), ctx.table)}


def _phi(ctx: _Context) -> Entry:
    return {"value": classical.phi_coefficient(ctx.table)}


def _phi_components(ctx: _Context) -> Entry:
    return {
        "value": classical.phi_via_component_distances(ctx.table),
        "metadata": {"component_distance": phi_style_component_distance(ctx.table)},
    }


def _pearson(ctx: _Context) -> Entry:
    support, origin = ctx.support()
    return {
        "value": classical.pearson_rho(ctx.table, support),
        "metadata": {
            "support": origin,
            "covariance": classical.covariance(ctx.table, support),
            "variance_x": classical.variance_x(ctx.table, support),
            "variance_y": classical.variance_y(ctx.table, support),
        },
    }


def _spearman(ctx: _Context) -> Entry:
    if ctx.source.samples is None:
        raise classical.PreconditionError("Spearman's rho needs paired samples in the input.")
    sample = classical.PairedSample(*ctx.source.samples)
    return {"value": classical.spearman(sample), "metadata": {"n": sample.size}}


def _mutual_information(ctx: _Context) -> Entry:
    value = classical.mutual_information(ctx.table)
    if ctx.settings.log_base == "bits":
        value = classical.nats_to_bits(value)
    return {"value": value, "unit": ctx.settings.log_base}


def _chi_squared(ctx: _Context) -> Entry:
    n = ctx.sample_size()
    return {"value": classical.chi_squared(ctx.table, n), "metadata": {"sample_size": n}}


def _degree_of_dependence(ctx: _Context) -> Entry:
    return {"value": classical.degree_of_dependence_EA(ctx.table)}


def _cramers_v(ctx: _Context) -> Entry:
    return {"value": classical.cramers_v(ctx.table, ctx.sample_size())}


def _tschuprow_t(ctx: _Context) -> Entry:
    return {"value": classical.tschuprow_t(ctx.table, ctx.sample_size())}


def _two_proportion(ctx: _Context) -> Entry:
    inp = classical.two_proportion_from_table(ctx.table, ctx.sample_size())
    result = classical.two_proportion(inp)
    return {
        "value": result.z,
        "metadata": {"factor": result.factor, "p1": inp.p1, "q1": inp.q1, "p": inp.p, "a": inp.a, "b": inp.b},
    }


MEASURES: dict[str, Callable[[_Context], Entry]] = {
    "phi": _phi,
    "phi_components": _phi_components,
    "pearson": _pearson,
    "spearman": _spearman,
    "mutual_information": _mutual_information,
    "chi_squared": _chi_squared,
    "degree_of_dependence": _degree_of_dependence,
    "cramers_v": _cramers_v,
    "tschuprow_t": _tschuprow_t,
    "two_proportion": _two_proportion,
    "rho_m": _rho_m,
    "hellinger_independence": _hellinger_independence,
}

_NEEDS_2X2 = {"phi", "phi_components", "two_proportion"}
_NEEDS_SAMPLE_SIZE = {"chi_squared", "cramers_v", "tschuprow_t", "two_proportion"}


def parse_measures(text: Optional[str]) -> Optional[tuple[str, ...]]:
    """Comma list to a de-duplicated tuple; None or "all" selects the applicable set."""
    if text is None or text.strip() in ("", "all"):
        return None
    names: list[str] = []
    for raw in text.split(","):
        name = raw.strip()
        if not name:
            continue
        if name not in MEASURES:
            raise AnalysisError(f"Unknown measure: {name!r} (known: {', '.join(MEASURES)})")
        if name not in names:
            names.append(name)
    return tuple(names)


def applicable_measures(source: TableSource, options: AnalysisOptions) -> tuple[str, ...]:
    has_n = options.sample_size is not None or source.sample_size is not None
    has_support = options.default_supports or (source.values_x is not None and source.values_y is not None)
    out = []
    for name in MEASURES:
        if name in _NEEDS_2X2 and source.table.shape != (2, 2):
            continue
        if name in _NEEDS_SAMPLE_SIZE and not has_n:
            continue
        if name == "pearson" and not has_support:
            continue
        if name == "spearman" and source.samples is None:
            continue
        out.append(name)
    return tuple(out)


# Failures recorded on the entry instead of aborting the report.
MEASURE_FAILURES = (MeasureError, DistributionError, TableError, ValueError, ArithmeticError)


def _evaluate(name: str, ctx: _Context) -> Entry:
    try:
        entry = MEASURES[name](ctx)
    except MEASURE_FAILURES as exc:
        logger.debug("measure %s failed: %s", name, exc)
        return {"name": name, "value": None, "error": {"type": type(exc).__name__, "message": str(exc)}}
    return {"name": name, **entry}


def analyze_source(
    source: TableSource,
    options: Optional[AnalysisOptions] = None,
    path: Optional[str] = None,
) -> MeasureReport:
    """
    Compute the requested measures for one table.

    Args:
        source: Parsed table input
        options: Measure selection and settings
        path: Input path as it should appear in the report

    Returns:
        A schema-validated MeasureReport
    """
    options = options or AnalysisOptions()
    names = options.measures if options.measures is not None else applicable_measures(source, options)
    ctx = _Context(source=source, options=options, warnings=[])
    measures = [_evaluate(name, ctx) for name in names]
    table_payload = source.table_payload()
    s = options.settings
    payload = {
        "spec_version": SPEC_VERSION,
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "syzygy", "version": __version__},
        "input": {
            "path": path if path is not None else (str(source.path) if source.path is not None else None),
            "format": source.fmt if source.path is not None else None,
            "kind": source.kind,
            "digest": canonical_digest(table_payload),
        },
        "dimensions": list(source.table.shape),
        "table": table_payload,
        "options": {
            "rho_m_variant": s.rho_m_variant,
            "log_base": s.log_base,
            "default_supports": options.default_supports,
            "sample_size": options.sample_size if options.sample_size is not None else source.sample_size,
            "candidate_cap": s.candidate_cap,
            "tie_rtol": s.tie_rtol,
            "seed": s.seed,
        },
        "measures": measures,
        "warnings": ctx.warnings,
    }
    return MeasureReport.from_dict(to_builtin(payload))


# ============ Rendering ============


def _format_value(value: Any) -> str:
    return "" if value is None else repr(float(value))


def render(report: MeasureReport, output: str = "json") -> str:
    if output == "json":
        return report.dumps()
    if output == "csv":
        return render_csv([report])
    if output == "md":
        return render_markdown(report)
    raise AnalysisError(f"Unknown output format: {output!r}")


def render_csv(reports: Iterable[MeasureReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["path", "measure", "value", "unit", "error"])
    for report in reports:
        path = report.data["input"]["path"] or ""
        for entry in report.data["measures"]:
            error = entry.get("error", {}).get("message", "")
            writer.writerow([path, entry["name"], _format_value(entry["value"]), entry.get("unit", ""), error])
    return buffer.getvalue()


def render_markdown(report: MeasureReport) -> str:
    data = report.data
    n, m = data["dimensions"]
    lines = [
        f"## {data['input']['path'] or '<stdin>'} ({n}×{m}, {data['input']['kind']})",
        "",
        "| measure | value | note |",
        "|---|---|---|",
    ]
    for entry in data["measures"]:
        note = entry.get("error", {}).get("message") or entry.get("unit", "")
        value = "n/a" if entry["value"] is None else f"{entry['value']:.6f}"
        lines.append(f"| {entry['name']} | {value} | {note} |")
    for warning in data["warnings"]:
        lines.append(f"\n> {warning}")
    return "\n".join(lines) + "\n"
