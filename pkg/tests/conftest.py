from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from syzygy.elenchus import fixtures
from syzygy.pinax.table import JointTable, from_probs

REPO_ROOT = Path(__file__).resolve().parents[1]
TABLES_ROOT = REPO_ROOT / "conformance" / "tables"

settings.register_profile("syzygy", deadline=None)
settings.load_profile("syzygy")


@pytest.fixture()
def tables_root() -> Path:
    return TABLES_ROOT


@pytest.fixture()
def example1() -> JointTable:
    return fixtures.EXAMPLE1.table()


@pytest.fixture()
def example2() -> JointTable:
    return fixtures.EXAMPLE2.table()


@pytest.fixture()
def example4() -> JointTable:
    return fixtures.EXAMPLE4.table()


@pytest.fixture()
def independent() -> JointTable:
    return from_probs(np.outer([0.2, 0.3, 0.5], [0.1, 0.6, 0.3]))


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
