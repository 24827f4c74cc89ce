"""Tests for full-dependence candidates and rho^M."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import tables
from syzygy.elenchus import fixtures, reference
from syzygy.metron.dependence import (
    CandidateLimitError,
    MeasureError,
    TieSite,
    denominator_for,
    full_dep_candidates,
    geometric_mean,
    phi_style_component_distance,
    rho_m,
)
from syzygy.pinax.table import JointTable, from_probs, marginals, permute, transpose


class TestFullDepCandidates:
    def test_example2_x(self, example2: JointTable) -> None:
        candidates = full_dep_candidates(example2, "X")
        assert len(candidates) == 1
        assert candidates.tie_sites == ()
        assert np.allclose(candidates.tables[0].probs, fixtures.EXAMPLE2_X_CANDIDATE, rtol=0, atol=1e-12)

    def test_example2_y(self, example2: JointTable) -> None:
        candidates = full_dep_candidates(example2, "Y")
        assert len(candidates) == 1
        assert np.allclose(candidates.tables[0].probs, fixtures.EXAMPLE2_Y_CANDIDATE, rtol=0, atol=1e-12)

    def test_example4_branches_on_ties(self, example4: JointTable) -> None:
        set_x = full_dep_candidates(example4, "X")
        set_y = full_dep_candidates(example4, "Y")
        assert len(set_x) == 2
        assert len(set_y) == 2
        assert set_x.tie_sites == (TieSite(2, (1, 2)),)
        assert set_y.tie_sites == (TieSite(1, (2, 4)),)
        for produced, published in zip(set_x, fixtures.EXAMPLE4_X_CANDIDATES):
            assert np.allclose(produced.probs, published, rtol=0, atol=1e-12)

    def test_cap(self, example4: JointTable) -> None:
        with pytest.raises(CandidateLimitError, match="exceed the cap"):
            full_dep_candidates(example4, "X", cap=1)

    def test_unknown_axis(self, example2: JointTable) -> None:
        with pytest.raises(MeasureError, match="Unknown axis"):
            full_dep_candidates(example2, "Z")

    def test_shared_argmax_leaves_empty_column(self) -> None:
        table = from_probs([[0.4, 0.1], [0.3, 0.2]])
        (candidate,) = full_dep_candidates(table, "X")
        assert np.allclose(candidate.probs, [[0.5, 0.0], [0.5, 0.0]], rtol=0, atol=1e-15)
        (candidate,) = full_dep_candidates(table, "Y")
        assert np.allclose(candidate.probs, [[0.7, 0.0], [0.0, 0.3]], rtol=0, atol=1e-15)

    def test_tie_tolerance(self) -> None:
        table = from_probs([[0.25, 0.25 + 1e-10], [0.1, 0.4]])
        assert len(full_dep_candidates(table, "X")) == 1
        assert len(full_dep_candidates(table, "X", tie_rtol=1e-9)) == 2

    @given(tables())
    @settings(max_examples=100)
    def test_candidates_are_full_dependences(self, table: JointTable) -> None:
        pair = marginals(table)
        for candidate in full_dep_candidates(table, "X"):
            assert np.all((candidate.probs > 0).sum(axis=1) == 1)
            assert np.allclose(candidate.probs.sum(axis=1), pair.row_marginal, rtol=0, atol=1e-12)
        for candidate in full_dep_candidates(table, "Y"):
            assert np.all((candidate.probs > 0).sum(axis=0) == 1)
            assert np.allclose(candidate.probs.sum(axis=0), pair.col_marginal, rtol=0, atol=1e-12)

    @given(tables())
    @settings(max_examples=100)
    def test_mass_sits_on_row_maximum(self, table: JointTable) -> None:
        for candidate in full_dep_candidates(table, "X"):
            for i, j in zip(*np.nonzero(candidate.probs)):
                assert table.probs[i, j] == table.probs[i].max()


class TestRhoM:
    def test_example1(self, example1: JointTable) -> None:
        result = rho_m(example1)
        assert result.value == pytest.approx(0.27491, abs=1e-4)
        assert result.value == pytest.approx(fixtures.EXAMPLE1.printed["rho_m"], abs=5e-3)
        assert result.numerator == pytest.approx(0.149233, abs=1e-6)
        assert result.candidate_counts == (1, 1)

    def test_example2(self, example2: JointTable) -> None:
        result = rho_m(example2)
        assert result.value == pytest.approx(fixtures.EXAMPLE2.printed["rho_m"], abs=5e-3)
        assert result.value == pytest.approx(result.numerator / result.denominator, abs=1e-15)

    def test_example4_definition1(self, example4: JointTable) -> None:
        result = rho_m(example4)
        assert result.candidate_counts == (2, 2)
        assert result.value == pytest.approx(fixtures.EXAMPLE4.printed["rho_m"], abs=5e-3)
        assert len(result.distances_x) == 2
        assert len(result.distances_y) == 2

    def test_example4_compat_squares_the_denominator(self, example4: JointTable) -> None:
        defn = rho_m(example4, variant="definition1")
        compat = rho_m(example4, variant="example4-compat")
        assert compat.variant == "example4-compat"
        assert compat.denominator == pytest.approx(defn.denominator**2, abs=1e-12)
        assert compat.numerator == defn.numerator

    def test_variants_agree_without_ties(self, example2: JointTable) -> None:
        assert rho_m(example2, variant="definition1").value == rho_m(example2, variant="example4-compat").value

    @pytest.mark.parametrize(
        "probs",
        [[[0.4, 0.1], [0.3, 0.2]], fixtures.EXAMPLE3.probs, fixtures.EXAMPLE4.probs],
        ids=["shared-argmax", "example3", "example4"],
    )
    def test_tables_with_empty_candidate_columns(self, probs) -> None:
        result = rho_m(from_probs([list(row) for row in probs]))
        assert 0.0 < result.value <= 1.0
        assert result.value == pytest.approx(reference.rho_m(probs)["definition1"], abs=1e-9)

    def test_independent_table_is_zero(self, independent: JointTable) -> None:
        assert rho_m(independent).value <= 1e-12

    @pytest.mark.parametrize(
        "probs",
        [
            [[0.25, 0, 0, 0], [0, 0.25, 0, 0], [0, 0, 0.25, 0], [0, 0, 0, 0.25]],
            [[0.0, 0.3], [0.7, 0.0]],
        ],
    )
    def test_permutation_tables_are_one(self, probs: list[list[float]]) -> None:
        assert rho_m(from_probs(probs)).value == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("example", fixtures.WORKED_EXAMPLES, ids=lambda e: e.name)
    @pytest.mark.parametrize("variant", ["definition1", "example4-compat"])
    def test_matches_reference(self, example: fixtures.WorkedExample, variant: str) -> None:
        expected = reference.rho_m(example.probs)[variant]
        assert rho_m(example.table(), variant=variant).value == pytest.approx(expected, abs=1e-9)

    @given(tables())
    @settings(max_examples=100)
    def test_transpose_symmetry(self, table: JointTable) -> None:
        assert rho_m(transpose(table)).value == pytest.approx(rho_m(table).value, abs=1e-12)

    @given(tables(), st.randoms(use_true_random=False))
    @settings(max_examples=100)
    def test_relabeling_invariance(self, table: JointTable, random) -> None:
        n, m = table.shape
        rows, cols = list(range(n)), list(range(m))
        random.shuffle(rows)
        random.shuffle(cols)
        moved = permute(table, rows, cols)
        assert rho_m(moved).value == pytest.approx(rho_m(table).value, abs=1e-12)

    @given(tables())
    @settings(max_examples=100)
    def test_nonnegative(self, table: JointTable) -> None:
        result = rho_m(table)
        assert result.value >= 0.0
        assert result.denominator > 0.0

    def test_unknown_variant(self, example1: JointTable) -> None:
        with pytest.raises(MeasureError, match="variant"):
            rho_m(example1, variant="sqrt")

    def test_precomputed_candidates(self, example4: JointTable) -> None:
        candidates = (full_dep_candidates(example4, "X"), full_dep_candidates(example4, "Y"))
        assert rho_m(example4, candidates=candidates).value == rho_m(example4).value

    def test_to_dict(self, example4: JointTable) -> None:
        payload = rho_m(example4).to_dict()
        assert payload["candidate_counts"] == [2, 2]
        assert payload["tie_sites_x"] == [{"state": 2, "tied": [1, 2]}]
        assert payload["exceeds_unit"] is False


class TestDenominator:
    def test_single_candidates(self) -> None:
        assert denominator_for("definition1", [0.25], [0.64]) == pytest.approx(0.4, abs=1e-15)
        assert denominator_for("example4-compat", [0.25], [0.64]) == pytest.approx(0.4, abs=1e-15)

    def test_compat_exponent(self) -> None:
        d_x, d_y = [0.2, 0.5], [0.3, 0.6]
        expected = np.prod([(a * b) ** 0.25 for a in d_x for b in d_y])
        assert denominator_for("example4-compat", d_x, d_y) == pytest.approx(expected, abs=1e-12)

    def test_compat_is_power_of_definition1_for_equal_counts(self) -> None:
        d_x, d_y = [0.2, 0.5, 0.7], [0.3, 0.6, 0.4]
        defn = denominator_for("definition1", d_x, d_y)
        assert denominator_for("example4-compat", d_x, d_y) == pytest.approx(defn**3, abs=1e-12)

    def test_compat_unequal_counts(self) -> None:
        d_x, d_y = [0.25], [0.3, 0.6]
        expected = np.prod([(a * b) ** (1 / 3) for a in d_x for b in d_y])
        assert denominator_for("example4-compat", d_x, d_y) == pytest.approx(expected, abs=1e-12)

    def test_unknown_variant(self) -> None:
        with pytest.raises(MeasureError):
            denominator_for("other", [0.5], [0.5])


def test_geometric_mean() -> None:
    assert geometric_mean([0.3]) == 0.3
    assert geometric_mean([0.25, 0.64]) == pytest.approx(0.4, abs=1e-15)


class TestComponentDistance:
    def test_example1(self, example1: JointTable) -> None:
        assert phi_style_component_distance(example1) == pytest.approx(0.1, abs=1e-15)

    def test_diagonal(self) -> None:
        p1 = 0.3
        table = from_probs(np.diag([1 - p1, p1]))
        assert phi_style_component_distance(table) == pytest.approx(p1 * (1 - p1), abs=1e-15)

    def test_needs_binary_table(self, example2: JointTable) -> None:
        with pytest.raises(MeasureError, match="2×2"):
            phi_style_component_distance(example2)
