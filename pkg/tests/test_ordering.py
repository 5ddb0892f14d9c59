"""Comparators, sufficient-condition checkers, and maximizer sets."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decaycent import (
    DeltaGrid,
    Relation,
    TrialSeed,
    centrality_table,
    check_farness_dominance,
    check_high_delta_conditions,
    check_low_delta_conditions,
    check_profile_dominance,
    lex_compare,
    lex_compare_cvec,
    maximizer_sets,
    sample_connected_gnp,
    ud_compare,
)
from decaycent.centrality import fvec_from_counts
from decaycent.graph import profile_matrix

from conftest import CROSSING_PAIR, oracle_decay


class TestLexCompare:
    def test_greater_at_first_index(self):
        v = lex_compare((2, 0), (1, 1))
        assert v.relation is Relation.GREATER
        assert v.detail == 0

    def test_equal(self):
        assert lex_compare((1, 1), (1, 1)).relation is Relation.EQUAL

    def test_greater_at_later_index(self):
        v = lex_compare((1, 2, 0), (1, 1, 5))
        assert v.relation is Relation.GREATER
        assert v.detail == 1

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            lex_compare((1, 2), (1, 2, 3))

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=6))
    @settings(max_examples=40, deadline=None)
    def test_never_incomparable_and_antisymmetric(self, a):
        b = list(reversed(a))
        fwd = lex_compare(a, b).relation
        bwd = lex_compare(b, a).relation
        assert fwd is not Relation.INCOMPARABLE
        flip = {
            Relation.GREATER: Relation.LESS,
            Relation.LESS: Relation.GREATER,
            Relation.EQUAL: Relation.EQUAL,
        }
        assert bwd is flip[fwd]


class TestLexCompareCvec:
    def test_p3_center_beats_endpoint(self, p3):
        t = centrality_table(p3)
        v = lex_compare_cvec(t.fvecs[1], t.fvecs[0])  # (2, 0) vs (3, -1)
        assert v.relation is Relation.GREATER
        assert v.detail == 0

    def test_equal_fvecs(self, star4):
        t = centrality_table(star4)
        assert lex_compare_cvec(t.fvecs[1], t.fvecs[2]).relation is Relation.EQUAL

    def test_negative_entries_reverse(self):
        # reciprocals: -1/2 < -1/3, so the second vector wins at index 1
        v = lex_compare_cvec((5, -2, 0), (5, -3, 0))
        assert v.relation is Relation.LESS
        assert v.detail == 1

    def test_reversal_of_farness_lex_on_random_graphs(self):
        for idx in range(6):
            g, _ = sample_connected_gnp(7 + idx, 0.35, TrialSeed(21, idx))
            t = centrality_table(g)
            for i in range(g.n):
                for j in range(g.n):
                    on_f = lex_compare(t.fvecs[i], t.fvecs[j]).relation
                    on_c = lex_compare_cvec(t.fvecs[i], t.fvecs[j]).relation
                    if on_f is Relation.EQUAL:
                        assert on_c is Relation.EQUAL
                    elif on_f is Relation.GREATER:
                        assert on_c is Relation.LESS
                    else:
                        assert on_c is Relation.GREATER


class TestUdCompare:
    def test_star_center_dominates_leaf(self):
        v = ud_compare((3, 0, 0), (1, 2, 0))
        assert v.relation is Relation.GREATER

    def test_incomparable(self):
        v = ud_compare((2, 0, 1), (1, 2, 0))
        assert v.relation is Relation.INCOMPARABLE

    def test_equal(self):
        assert ud_compare((1, 2, 3), (1, 2, 3)).relation is Relation.EQUAL

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            ud_compare((1,), (1, 2))

    @given(
        a=st.lists(st.integers(-4, 4), min_size=1, max_size=6),
        b=st.lists(st.integers(-4, 4), min_size=1, max_size=6),
    )
    @settings(max_examples=60, deadline=None)
    def test_antisymmetry(self, a, b):
        size = min(len(a), len(b))
        a, b = a[:size], b[:size]
        fwd = ud_compare(a, b).relation
        bwd = ud_compare(b, a).relation
        flip = {
            Relation.GREATER: Relation.LESS,
            Relation.LESS: Relation.GREATER,
            Relation.EQUAL: Relation.EQUAL,
            Relation.INCOMPARABLE: Relation.INCOMPARABLE,
        }
        assert bwd is flip[fwd]

    @given(
        vecs=st.lists(
            st.lists(st.integers(-3, 3), min_size=4, max_size=4),
            min_size=3,
            max_size=3,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_transitivity(self, vecs):
        a, b, c = vecs
        if (
            ud_compare(a, b).relation is Relation.GREATER
            and ud_compare(b, c).relation is Relation.GREATER
        ):
            assert ud_compare(a, c).relation is Relation.GREATER


class TestProfileDominance:
    def test_star_center_vs_leaf_with_decay_spot_check(self, star4):
        t = centrality_table(star4)
        v = check_profile_dominance(t.profiles[0], t.profiles[1])
        assert v.relation is Relation.GREATER
        for delta in (0.1, 0.5, 0.9):
            assert oracle_decay(star4, 0, delta) > oracle_decay(star4, 1, delta)

    def test_identical_profiles_equal(self, star4):
        t = centrality_table(star4)
        v = check_profile_dominance(t.profiles[1], t.profiles[3])
        assert v.relation is Relation.EQUAL

    def test_crossing_pair_incomparable(self, crossing_graph):
        i, j = CROSSING_PAIR
        t = centrality_table(crossing_graph)
        # the curves genuinely cross, so by contraposition the profiles
        # cannot be dominance-ordered
        low = t.decay(i, 0.05) - t.decay(j, 0.05)
        high = t.decay(i, 0.95) - t.decay(j, 0.95)
        assert low > 0 > high
        v = check_profile_dominance(t.profiles[i], t.profiles[j])
        assert v.relation is Relation.INCOMPARABLE


class TestFarnessDominance:
    def test_p3_center_vs_endpoint(self, p3):
        t = centrality_table(p3)
        # prefix sums (3, 2) vs (2, 2): endpoint vector dominates, so the
        # center wins
        v = check_farness_dominance(t.fvecs[1], t.fvecs[0])
        assert v.relation is Relation.GREATER

    def test_equal_fvecs(self, star4):
        t = centrality_table(star4)
        assert (
            check_farness_dominance(t.fvecs[2], t.fvecs[3]).relation
            is Relation.EQUAL
        )

    def test_crossing_pair_incomparable(self, crossing_graph):
        i, j = CROSSING_PAIR
        t = centrality_table(crossing_graph)
        v = check_farness_dominance(t.fvecs[i], t.fvecs[j])
        assert v.relation is Relation.INCOMPARABLE

    def test_greater_implies_decay_order_on_grid(self):
        grid = DeltaGrid.uniform(25)
        for idx in range(6):
            g, _ = sample_connected_gnp(8, 0.35, TrialSeed(22, idx))
            t = centrality_table(g)
            for i in range(g.n):
                for j in range(g.n):
                    if i == j:
                        continue
                    v = check_farness_dominance(t.fvecs[i], t.fvecs[j])
                    if v.relation is Relation.GREATER:
                        for delta in grid.values:
                            assert t.decay(i, delta) > t.decay(j, delta)


class TestLowDeltaConditions:
    def test_star_all_four_fire(self, star4):
        t = centrality_table(star4)
        res = check_low_delta_conditions(t.profiles[0], t.profiles[1])
        assert res.applicable
        assert res.satisfied == frozenset({1, 2, 3, 4})

    def test_zero_degree_gap_not_applicable(self, star4):
        t = centrality_table(star4)
        res = check_low_delta_conditions(t.profiles[1], t.profiles[2])
        assert not res.applicable
        assert res.satisfied == frozenset()
        assert not res.fires

    def test_fired_condition_implies_low_range_order(self):
        deltas = [k / 100 for k in range(1, 51)]  # (0, 0.5]
        for idx in range(8):
            g, _ = sample_connected_gnp(9, 0.3, TrialSeed(23, idx))
            t = centrality_table(g)
            for i in range(g.n):
                for j in range(g.n):
                    if i == j:
                        continue
                    res = check_low_delta_conditions(t.profiles[i], t.profiles[j])
                    if res.fires:
                        for delta in deltas:
                            assert t.decay(i, delta) > t.decay(j, delta)


class TestHighDeltaConditions:
    def test_p3_center_both_fire(self, p3):
        t = centrality_table(p3)
        res = check_high_delta_conditions(t.fvecs[1], t.fvecs[0])
        assert res.applicable
        assert res.satisfied == frozenset({1, 2})

    def test_zero_farness_gap_flagged(self, star4):
        t = centrality_table(star4)
        res = check_high_delta_conditions(t.fvecs[1], t.fvecs[2])
        assert not res.applicable

    def test_positive_farness_gap_flagged(self, p3):
        t = centrality_table(p3)
        # endpoint has larger farness than the center: applies to the
        # swapped pair only
        res = check_high_delta_conditions(t.fvecs[0], t.fvecs[1])
        assert not res.applicable

    def test_fired_condition_implies_high_range_order(self):
        deltas = [k / 100 for k in range(50, 100)]  # [0.5, 1)
        for idx in range(8):
            g, _ = sample_connected_gnp(9, 0.3, TrialSeed(24, idx))
            t = centrality_table(g)
            for i in range(g.n):
                for j in range(g.n):
                    if i == j:
                        continue
                    res = check_high_delta_conditions(t.fvecs[i], t.fvecs[j])
                    if res.fires:
                        for delta in deltas:
                            assert t.decay(i, delta) > t.decay(j, delta)


class TestMaximizerSets:
    def test_star_all_center(self, star4):
        ms = maximizer_sets(star4, DeltaGrid.uniform(19))
        assert ms.by_degree == ms.by_closeness == frozenset({0})
        assert all(s == frozenset({0}) for s in ms.by_decay)

    def test_p3_all_center(self, p3):
        ms = maximizer_sets(p3, DeltaGrid.uniform(19))
        assert ms.by_degree == ms.by_closeness == frozenset({1})
        assert all(s == frozenset({1}) for s in ms.by_decay)

    def test_endpoint_containment_on_random_graphs(self):
        grid = DeltaGrid.uniform(99)
        for idx in range(40):
            n = 5 + idx % 8
            g, _ = sample_connected_gnp(n, 0.4, TrialSeed(2024, idx))
            ms = maximizer_sets(g, grid)
            assert ms.by_decay[0] <= ms.by_degree
            assert ms.by_decay[-1] <= ms.by_closeness

    def test_closeness_ties_are_exact(self, cycle5):
        ms = maximizer_sets(cycle5, DeltaGrid.uniform(9))
        assert ms.by_degree == frozenset(range(5))
        assert ms.by_closeness == frozenset(range(5))
        assert all(s == frozenset(range(5)) for s in ms.by_decay)

    def test_exact_tie_between_distinct_profiles(self):
        # two nodes whose difference polynomial vanishes exactly at 0.5:
        # profiles (2,0,2) and (1,3,0) give delta(1-delta)(1-2delta)
        import numpy as np

        from decaycent.centrality import decay_matrix
        from decaycent.ordering import decay_argmax_sets

        profiles = np.array([[2, 0, 2, 0], [1, 3, 0, 0]], dtype=np.int64)
        grid = DeltaGrid((0.25, 0.5, 0.75))
        dc = decay_matrix(profiles, grid)
        sets = decay_argmax_sets(dc, profiles, grid)
        assert sets[0] == frozenset({0})
        assert sets[1] == frozenset({0, 1})  # exact tie at one half
        assert sets[2] == frozenset({1})
