"""
Syzygy configuration.

Settings are resolved from, in increasing precedence:
- built-in defaults
- a dotenv file (~/.syzygy/.env unless another path is given)
- SYZYGY_* environment variables

CLI flags bind to the same variable names through click's ``envvar``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Mapping, Optional

from dotenv import dotenv_values


SYZYGY_DIR = Path.home() / ".syzygy"
SYZYGY_ENV = SYZYGY_DIR / ".env"

RHO_M_VARIANTS = ("definition1", "example4-compat")
LOG_BASES = ("nats", "bits")


class SettingsError(ValueError):
    exit_code: int = 1


@dataclass(frozen=True)
class Settings:
    """
    Resolved configuration.

    Attributes:
        candidate_cap: Maximum number of full-dependence candidates per axis
        tie_rtol: Relative tolerance for argmax tie detection
        rho_m_variant: Default denominator form for rho^M
        log_base: Unit for information measures in reports
        provenance_path: Where oracle runs write their provenance file
        seed: Default seed for randomized oracle claims
    """
    candidate_cap: int = 4096
    tie_rtol: float = 1e-12
    rho_m_variant: str = "definition1"
    log_base: str = "nats"
    provenance_path: Path = Path("provenance.json")
    seed: int = 42

    def __post_init__(self) -> None:
        if self.candidate_cap < 1:
            raise SettingsError(f"candidate_cap must be >= 1, got: {self.candidate_cap}")
        if not 0.0 <= self.tie_rtol < 1.0:
            raise SettingsError(f"tie_rtol must be in [0, 1), got: {self.tie_rtol}")
        if self.rho_m_variant not in RHO_M_VARIANTS:
            raise SettingsError(f"Unknown rho_m_variant: {self.rho_m_variant}")
        if self.log_base not in LOG_BASES:
            raise SettingsError(f"Unknown log_base: {self.log_base}")

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Return a copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> dict[str, Any]:
        return {
            "candidate_cap": self.candidate_cap,
            "tie_rtol": self.tie_rtol,
            "rho_m_variant": self.rho_m_variant,
            "log_base": self.log_base,
            "provenance_path": str(self.provenance_path),
            "seed": self.seed,
        }


_FIELDS: dict[str, tuple[str, type]] = {
    "SYZYGY_CANDIDATE_CAP": ("candidate_cap", int),
    "SYZYGY_TIE_RTOL": ("tie_rtol", float),
    "SYZYGY_RHO_M_VARIANT": ("rho_m_variant", str),
    "SYZYGY_LOG_BASE": ("log_base", str),
    "SYZYGY_PROVENANCE": ("provenance_path", Path),
    "SYZYGY_SEED": ("seed", int),
}


def load_settings(
    env_path: Optional[Path] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> Settings:
    """
    Load settings from a dotenv file and the process environment.

    The dotenv file is read without touching ``os.environ``.

    Args:
        env_path: Path to a dotenv file (default: ~/.syzygy/.env)
        environ: Environment mapping (default: os.environ)

    Returns:
        Resolved Settings

    Raises:
        SettingsError: If a value cannot be parsed or is out of range
    """
    env_path = env_path or SYZYGY_ENV
    merged: dict[str, str] = {}
    if env_path.exists():
        merged.update({k: v for k, v in dotenv_values(env_path).items() if v is not None})
    merged.update({k: v for k, v in (environ if environ is not None else os.environ).items() if k in _FIELDS})

    values: dict[str, Any] = {}
    for key, (name, cast) in _FIELDS.items():
        raw = merged.get(key)
        if raw is None or raw == "":
            continue
        try:
            values[name] = cast(raw)
        except ValueError as exc:
            raise SettingsError(f"{key}: cannot parse {raw!r}") from exc
    return Settings(**values)
