"""
End-to-end checks of the published worked examples and the verified claims.

One provenance file is produced per session by running every claim; the
tests read their evidence from it the way a reviewer would.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np
import pytest

from syzygy.elenchus import fixtures, reference
from syzygy.elenchus.provenance import load_provenance, run_all, write_provenance
from syzygy.mensura.classical import (
    NumericSupport,
    chi_squared,
    cramers_v,
    degree_of_dependence_EA,
    pearson_rho,
    phi_coefficient,
    tschuprow_t,
)
from syzygy.metron.dependence import full_dep_candidates, rho_m
from syzygy.metron.hellinger import hellinger
from syzygy.pinax.table import JointTable, from_probs, independence_product, permute, transpose
from syzygy.spec.models import OracleDocument

SEED = 42
TRIALS = 2_000


@pytest.fixture(scope="session")
def provenance(tmp_path_factory: pytest.TempPathFactory) -> dict[str, Any]:
    path = tmp_path_factory.mktemp("provenance") / "provenance.json"
    write_provenance(path, run_all(seed=SEED, trials=TRIALS))
    return load_provenance(path)


def _discrepancy(provenance: dict[str, Any], example: str, measure: str) -> dict[str, Any] | None:
    for item in provenance["worked-examples"]["details"]["discrepancies"]:
        if item["example"] == example and item["measure"] == measure:
            return item
    return None


def _printed_or_documented(
    provenance: dict[str, Any],
    example: fixtures.WorkedExample,
    value: float,
) -> None:
    if abs(value - example.printed["rho_m"]) <= example.tolerance_for("rho_m"):
        return
    item = _discrepancy(provenance, example.name, "rho_m")
    assert item is not None, f"{example.name}: rho_m {value} neither matches nor is documented"
    assert item["computed"] == pytest.approx(value, abs=1e-12)
    assert item["numerator"] > 0
    assert item["distances_x"] and item["distances_y"]


def test_every_entry_is_a_valid_oracle_report(provenance: dict[str, Any]) -> None:
    assert set(provenance) == {
        "prop1",
        "cov-max",
        "rho-m-bound/2x2",
        "rho-m-bound/3x3",
        "example4-variant",
        "mi-examples",
        "worked-examples",
    }
    for entry in provenance.values():
        OracleDocument.from_dict(entry)


class TestExample1:
    def test_classical_measures(self) -> None:
        table = fixtures.EXAMPLE1.table()
        assert phi_coefficient(table) == pytest.approx(0.4082, abs=5e-4)
        assert cramers_v(table, 100) == pytest.approx(0.4082, abs=5e-4)
        assert tschuprow_t(table, 100) == pytest.approx(0.4082, abs=5e-4)

    def test_transpose_gives_identical_values(self) -> None:
        table = fixtures.EXAMPLE1.table()
        flipped = transpose(table)
        assert phi_coefficient(flipped) == pytest.approx(phi_coefficient(table), abs=1e-12)
        assert cramers_v(flipped, 100) == pytest.approx(cramers_v(table, 100), abs=1e-12)
        assert rho_m(flipped).value == pytest.approx(rho_m(table).value, abs=1e-12)

    def test_rho_m(self, provenance: dict[str, Any]) -> None:
        value = rho_m(fixtures.EXAMPLE1.table()).value
        assert value == pytest.approx(reference.rho_m(fixtures.EXAMPLE1.probs)["definition1"], abs=1e-9)
        _printed_or_documented(provenance, fixtures.EXAMPLE1, value)


class TestExample2:
    def test_independence_product(self) -> None:
        product = independence_product(fixtures.EXAMPLE2.table())
        assert np.allclose(product.probs, fixtures.EXAMPLE2_INDEPENDENCE, rtol=0, atol=5e-5)

    def test_candidates(self) -> None:
        table = fixtures.EXAMPLE2.table()
        for axis, printed in (("X", fixtures.EXAMPLE2_X_CANDIDATE), ("Y", fixtures.EXAMPLE2_Y_CANDIDATE)):
            (candidate,) = full_dep_candidates(table, axis)
            assert np.array_equal(candidate.probs > 0, np.asarray(printed) > 0)
            assert np.allclose(candidate.probs, printed, rtol=0, atol=1e-12)

    @pytest.mark.parametrize("example", [fixtures.EXAMPLE2, fixtures.EXAMPLE2_LINEAR], ids=lambda e: e.name)
    def test_measures(self, example: fixtures.WorkedExample) -> None:
        table = example.table()
        assert pearson_rho(table, NumericSupport(*example.supports)) == pytest.approx(
            example.printed["pearson"], abs=5e-4
        )
        assert rho_m(table).value == pytest.approx(example.printed["rho_m"], abs=5e-3)
        assert cramers_v(table, 100) == pytest.approx(example.printed["cramers_v"], abs=5e-4)
        assert tschuprow_t(table, 100) == pytest.approx(example.printed["tschuprow_t"], abs=5e-4)


class TestExample3:
    def test_classical_measures(self) -> None:
        table = fixtures.EXAMPLE3.table()
        assert pearson_rho(table, NumericSupport(*fixtures.EXAMPLE3.supports)) == pytest.approx(0.1383, abs=5e-4)
        assert cramers_v(table, 100) == pytest.approx(0.4257843, abs=5e-4)
        assert tschuprow_t(table, 100) == pytest.approx(0.4257843, abs=5e-4)

    def test_rho_m(self, provenance: dict[str, Any]) -> None:
        value = rho_m(fixtures.EXAMPLE3.table()).value
        assert value == pytest.approx(reference.rho_m(fixtures.EXAMPLE3.probs)["definition1"], abs=1e-9)
        _printed_or_documented(provenance, fixtures.EXAMPLE3, value)


class TestExample4:
    def test_two_candidates_per_axis(self) -> None:
        table = fixtures.EXAMPLE4.table()
        set_x = full_dep_candidates(table, "X")
        assert len(set_x) == 2
        assert len(full_dep_candidates(table, "Y")) == 2
        for produced, printed in zip(set_x, fixtures.EXAMPLE4_X_CANDIDATES):
            assert np.array_equal(produced.probs > 0, np.asarray(printed) > 0)

    def test_classical_measures(self) -> None:
        table = fixtures.EXAMPLE4.table()
        assert pearson_rho(table, NumericSupport(*fixtures.EXAMPLE4.supports)) == pytest.approx(-0.0491, abs=5e-4)
        assert cramers_v(table, 100) == pytest.approx(0.6652, abs=5e-4)
        assert tschuprow_t(table, 100) == pytest.approx(0.6652, abs=5e-4)

    def test_variant_resolution(self, provenance: dict[str, Any]) -> None:
        details = provenance["example4-variant"]["details"]
        assert set(details["values"]) == {"definition1", "example4-compat"}
        for variant in details["matching_variants"]:
            assert abs(details["values"][variant] - 0.5731) <= 5e-3


def test_mutual_information_tables(provenance: dict[str, Any]) -> None:
    entry = provenance["mi-examples"]
    assert entry["passed"]
    assert entry["details"]["orderings"]["r_lt_s"] is True
    assert entry["details"]["max_reference_gap"] <= 1e-12
    assert "p_gt_q" in entry["details"]["reproduced"]


def test_farthest_distribution_claim(provenance: dict[str, Any]) -> None:
    entry = provenance["prop1"]
    assert entry["passed"]
    assert entry["details"]["random"]["trials"] == TRIALS


def test_covariance_maximality_claim(provenance: dict[str, Any]) -> None:
    entry = provenance["cov-max"]
    assert entry["passed"]
    assert len(entry["details"]) == 50
    sizes = {part["trials"] for part in entry["details"].values()}
    assert sizes == {2, 6, 24, 120, 720}


def test_rho_m_bound_search(provenance: dict[str, Any]) -> None:
    for key in ("rho-m-bound/2x2", "rho-m-bound/3x3"):
        details = provenance[key]["details"]
        assert provenance[key]["trials"] == TRIALS
        assert details["independence_floor"] <= 1e-12
        assert details["max_observed"] > 0


class TestHellingerMetric:
    def test_pairs(self, rng: np.random.Generator) -> None:
        for _ in range(1_000):
            size = int(rng.integers(2, 13))
            p, q = rng.dirichlet(np.ones(size)), rng.dirichlet(np.ones(size))
            distance = hellinger(p, q)
            assert 0.0 < distance <= 1.0
            assert hellinger(q, p) == distance
            assert hellinger(p, p.copy()) == 0.0

    def test_triangle_inequality(self, rng: np.random.Generator) -> None:
        for _ in range(1_000):
            size = int(rng.integers(2, 13))
            p, q, r = (rng.dirichlet(np.ones(size)) for _ in range(3))
            assert hellinger(p, r) <= hellinger(p, q) + hellinger(q, r) + 1e-12


class TestNormalization:
    def test_independence_products_score_zero(self, rng: np.random.Generator) -> None:
        for _ in range(50):
            n, m = (int(k) for k in rng.integers(2, 6, size=2))
            product = from_probs(np.outer(rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(m))))
            assert rho_m(product).value == pytest.approx(0.0, abs=1e-12)

    def test_permutation_diagonals_score_one(self, rng: np.random.Generator) -> None:
        for _ in range(50):
            n = int(rng.integers(2, 7))
            table = JointTable(np.diag(rng.dirichlet(np.ones(n)))[:, rng.permutation(n)])
            assert rho_m(table).value == pytest.approx(1.0, abs=1e-12)

    def test_transpose_and_relabeling(self, rng: np.random.Generator) -> None:
        for _ in range(50):
            n, m = (int(k) for k in rng.integers(2, 6, size=2))
            table = JointTable(rng.dirichlet(np.ones(n * m)).reshape(n, m))
            value = rho_m(table).value
            assert rho_m(transpose(table)).value == pytest.approx(value, abs=1e-12)
            moved = permute(table, rng.permutation(n).tolist(), rng.permutation(m).tolist())
            assert rho_m(moved).value == pytest.approx(value, abs=1e-12)

    def test_chi_squared_identities(self, rng: np.random.Generator) -> None:
        for _ in range(100):
            n, m = (int(k) for k in rng.integers(2, 6, size=2))
            table = JointTable(rng.dirichlet(np.ones(n * m)).reshape(n, m))
            assert chi_squared(table, 500) == pytest.approx(500 * degree_of_dependence_EA(table), abs=1e-10)
            binary = JointTable(rng.dirichlet(np.ones(4)).reshape(2, 2))
            assert chi_squared(binary, 500) == pytest.approx(500 * phi_coefficient(binary) ** 2, abs=1e-9)


def test_provenance_is_byte_identical(tmp_path: Path) -> None:
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    write_provenance(first, run_all(seed=7, trials=200))
    write_provenance(second, run_all(seed=7, trials=200))
    assert first.read_bytes() == second.read_bytes()
