from __future__ import annotations

import hashlib
import unicodedata
from pathlib import Path, PurePosixPath
from typing import Any

import rfc8785


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def canonical_json(payload: Any) -> bytes:
    """Serialize ``payload`` with RFC 8785 JSON Canonicalization."""
    return rfc8785.dumps(payload)


def canonical_digest(payload: Any) -> str:
    return sha256_hex(canonical_json(payload))


def normalize_relpath(path: Path, root: Path) -> str:
    rel = path.relative_to(root)
    posix = PurePosixPath(rel.as_posix())
    if posix.is_absolute():
        raise ValueError(f"Path must be relative: {posix}")
    if any(part == ".." for part in posix.parts):
        raise ValueError(f"Path must not contain '..': {posix}")
    normalized = unicodedata.normalize("NFC", str(posix))
    if "\\" in normalized:
        raise ValueError(f"Path must not contain backslashes: {normalized}")
    return normalized


def to_builtin(value: Any) -> Any:
    """Convert numpy scalars/arrays nested in ``value`` to plain Python types."""
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, dict):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    return value
