from collections import Counter
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from app.exceptions import CensusParseError, NegativeCount
from app.schema.census_schema import Census, InfeasibilityReason
from app.services.census_service import (
    apply_delta,
    census_add,
    census_difference,
    census_sub,
    check_feasibility,
    euler_sum,
    parse_census,
    pieces,
    total_faces,
    triple_points,
)

censuses = st.dictionaries(st.integers(1, 10), st.integers(0, 40), max_size=6).map(Census.of)


def all_censuses(max_faces: int, max_k: int):
    """Tous les recensements d'au plus max_faces pièces avec k <= max_k."""
    for faces in range(max_faces + 1):
        for combo in combinations_with_replacement(range(1, max_k + 1), faces):
            yield Census.of(Counter(combo))


class TestParseCensus:

    def test_parse_simple(self):
        assert parse_census("8,1") == Census.of({1: 8, 2: 1})

    def test_parse_with_spaces_and_zeros(self):
        assert parse_census(" 11, 0 ,1,1") == Census.of({1: 11, 3: 1, 4: 1})

    def test_parse_zero(self):
        assert parse_census("0") == Census.of()

    @pytest.mark.parametrize("text", ["x", "", "  ", "8,,1", "-1", "2.5", "8;1"])
    def test_parse_errors(self, text):
        with pytest.raises(CensusParseError):
            parse_census(text)


class TestEulerSum:

    @pytest.mark.parametrize("counts,expected", [
        ({1: 2, 2: 1}, 2),
        ({}, 0),
        ({1: 11, 3: 1, 4: 1}, 8),
        ({5: 1}, -3),
    ])
    def test_euler_sum(self, counts, expected):
        assert euler_sum(Census.of(counts)) == expected

    def test_total_faces(self):
        assert total_faces(Census.of({1: 11, 3: 1, 4: 1})) == 13


class TestCheckFeasibility:

    def test_eight_discs(self):
        verdict = check_feasibility(Census.of({1: 8}))
        assert verdict.feasible
        assert verdict.n == 1
        assert triple_points(verdict) == 2

    def test_two_discs_violate_parity(self):
        verdict = check_feasibility(Census.of({1: 2}))
        assert not verdict.feasible
        assert verdict.reason == InfeasibilityReason.P_VIOLATION
        assert triple_points(verdict) == 0

    def test_three_discs_violate_identity(self):
        verdict = check_feasibility(Census.of({1: 3}))
        assert verdict.reason == InfeasibilityReason.E_VIOLATION

    def test_mixed_census(self):
        verdict = check_feasibility(Census.of({1: 11, 3: 1, 4: 1}))
        assert verdict.feasible and verdict.n == 1

    def test_empty_census_violates_identity(self):
        assert check_feasibility(Census.of()).reason == InfeasibilityReason.E_VIOLATION

    def test_negative_excess_violates_identity(self):
        assert check_feasibility(Census.of({1: 1, 5: 1})).reason == InfeasibilityReason.E_VIOLATION

    def test_large_counts(self):
        verdict = check_feasibility(Census.of({1: 2 + 6 * 10**15}))
        assert verdict.n == 10**15

    @given(censuses)
    @settings(max_examples=200, deadline=None)
    def test_verdict_is_pure(self, census):
        assert check_feasibility(census) == check_feasibility(census)

    @given(censuses)
    @settings(max_examples=200, deadline=None)
    def test_feasible_n_matches_euler_sum(self, census):
        verdict = check_feasibility(census)
        if verdict.feasible:
            assert euler_sum(census) == 2 + 6 * verdict.n
            assert verdict.n > 0 or census.total % 2 == 1

    @pytest.mark.slow
    def test_feasible_small_censuses_have_two_discs(self):
        """Tout recensement réalisable d'au plus 12 pièces a au moins deux disques."""
        for census in all_censuses(12, 8):
            if check_feasibility(census).feasible:
                assert census.get(1) >= 2, census.to_text()


class TestCensusArithmetic:

    def test_add(self):
        assert census_add(Census.of({1: 2}), 1, 2) == Census.of({1: 4})

    def test_sub_drops_zero_entry(self):
        assert census_sub(Census.of({1: 2, 2: 1}), 2, -1) == Census.of({1: 2})

    def test_sub_ignores_sign(self):
        assert census_sub(Census.of({1: 2, 2: 1}), 2, 1) == Census.of({1: 2})

    def test_sub_below_zero(self):
        with pytest.raises(NegativeCount) as exc_info:
            census_sub(Census.of({1: 2}), 3, -1)
        assert exc_info.value.k == 3
        assert exc_info.value.count == 0

    def test_apply_delta(self):
        result = apply_delta(Census.of({1: 8, 2: 1}), {1: 2, 2: -1, 4: 1})
        assert result == Census.of({1: 10, 4: 1})

    def test_census_difference(self):
        before = Census.of({1: 8, 2: 1})
        after = Census.of({1: 10, 4: 1})
        assert census_difference(after, before) == {1: 2, 2: -1, 4: 1}

    @given(censuses, st.integers(1, 10), st.integers(0, 50))
    @settings(max_examples=200, deadline=None)
    def test_add_then_sub_restores(self, census, k, delta):
        assert census_sub(census_add(census, k, delta), k, delta) == census

    def test_pieces(self):
        rows = pieces(Census.of({1: 11, 3: 1, 4: 1}))
        assert [(r.k, r.count, r.euler_characteristic) for r in rows] == [(1, 11, 1), (3, 1, -1), (4, 1, -2)]
        assert sum(r.count * r.euler_characteristic for r in rows) == 8
