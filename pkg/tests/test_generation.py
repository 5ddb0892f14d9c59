"""Seeded G(n,p) sampling: determinism, distribution, rejection behavior."""

import math
from itertools import combinations

import numpy as np
import pytest
from scipy import stats

from decaycent import (
    RejectionLimitError,
    TrialSeed,
    is_connected,
    sample_connected_gnp,
    sample_gnp,
)
from decaycent.generation import pairs_connected


class TestTrialSeed:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            TrialSeed(-1, 0)
        with pytest.raises(ValueError):
            TrialSeed(0, -2)

    def test_streams_differ_by_trial(self):
        a = TrialSeed(7, 0).stream(0).integers(0, 2**32, size=4)
        b = TrialSeed(7, 1).stream(0).integers(0, 2**32, size=4)
        assert (a != b).any()

    def test_stream_is_pure_function(self):
        a = TrialSeed(7, 3).stream(2).integers(0, 2**32, size=4)
        b = TrialSeed(7, 3).stream(2).integers(0, 2**32, size=4)
        assert (a == b).all()


class TestSampleGnp:
    def test_p_one_gives_complete_graph(self):
        g = sample_gnp(6, 1.0, TrialSeed(1, 0))
        assert g.num_edges == 15
        assert set(g.edges) == set(combinations(range(6), 2))

    def test_determinism(self):
        g1 = sample_gnp(12, 0.3, TrialSeed(5, 9))
        g2 = sample_gnp(12, 0.3, TrialSeed(5, 9))
        assert g1.edges == g2.edges

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            sample_gnp(1, 0.5, TrialSeed(0, 0))
        with pytest.raises(ValueError):
            sample_gnp(5, 0.0, TrialSeed(0, 0))
        with pytest.raises(ValueError):
            sample_gnp(5, 1.2, TrialSeed(0, 0))

    def test_mean_edge_count_matches_binomial_expectation(self):
        n, p, samples = 50, 0.1, 10_000
        total = sum(
            sample_gnp(n, p, TrialSeed(123, i)).num_edges for i in range(samples)
        )
        mean = total / samples
        expected = math.comb(n, 2) * p  # 122.5
        assert abs(mean - expected) / expected < 0.01


class TestSampleConnectedGnp:
    def test_p_one_accepted_immediately(self):
        g, rejects = sample_connected_gnp(5, 1.0, TrialSeed(2, 0))
        assert rejects == 0
        assert g.num_edges == 10

    def test_determinism_graph_and_reject_count(self):
        a, ra = sample_connected_gnp(10, 0.15, TrialSeed(3, 4))
        b, rb = sample_connected_gnp(10, 0.15, TrialSeed(3, 4))
        assert a.edges == b.edges
        assert ra == rb
        assert is_connected(a)

    def test_sparse_setting_terminates_or_errors_cleanly(self):
        # high rejection regime: either outcome is acceptable, but it must
        # be clean and deterministic
        outcomes = []
        for idx in range(3):
            try:
                g, rejects = sample_connected_gnp(
                    10, 0.05, TrialSeed(4, idx), max_rejects=50_000
                )
                assert is_connected(g)
                outcomes.append(rejects)
            except RejectionLimitError as exc:
                assert exc.rejects == 50_001
                outcomes.append(None)
        assert any(o is None or o > 100 for o in outcomes)

    def test_rejection_limit_error_fields(self):
        with pytest.raises(RejectionLimitError) as err:
            sample_connected_gnp(10, 0.05, TrialSeed(4, 99), max_rejects=10)
        assert err.value.n == 10
        assert err.value.rejects == 11

    def test_order_independence(self):
        indices = [5, 1, 3, 0, 2, 4]
        by_shuffled = {
            i: sample_connected_gnp(9, 0.25, TrialSeed(6, i))[0].edges
            for i in indices
        }
        by_order = {
            i: sample_connected_gnp(9, 0.25, TrialSeed(6, i))[0].edges
            for i in sorted(indices)
        }
        assert by_shuffled == by_order


class TestPairsConnected:
    def test_empty_disconnected(self):
        assert not pairs_connected(3, np.array([], dtype=int), np.array([], dtype=int))

    def test_path_connected(self):
        us = np.array([0, 1, 2])
        vs = np.array([1, 2, 3])
        assert pairs_connected(4, us, vs)

    def test_isolated_node(self):
        us = np.array([0, 1])
        vs = np.array([1, 0])
        assert not pairs_connected(3, us, vs)


@pytest.fixture(scope="session")
def conditional_edge_count_pmf():
    """Exact edge-count distribution of G(6, 0.4) given connectivity, by
    enumerating all 2**15 graphs."""
    n, p = 6, 0.4
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    weights = np.zeros(m + 1)
    for mask in range(2**m):
        edges = [pairs[b] for b in range(m) if mask >> b & 1]
        if len(edges) < n - 1:
            continue
        us = np.array([e[0] for e in edges])
        vs = np.array([e[1] for e in edges])
        if pairs_connected(n, us, vs):
            k = len(edges)
            weights[k] += p**k * (1 - p) ** (m - k)
    return weights / weights.sum()


class TestConditionalLaw:
    def test_edge_count_distribution_chi_squared(self, conditional_edge_count_pmf):
        n, p, samples = 6, 0.4, 4000
        counts = np.zeros(16)
        for i in range(samples):
            g, _ = sample_connected_gnp(n, p, TrialSeed(777, i))
            counts[g.num_edges] += 1
        expected = conditional_edge_count_pmf * samples
        # pool bins until every expected count is at least 5
        obs_bins, exp_bins = [], []
        obs_acc = exp_acc = 0.0
        for o, e in zip(counts, expected):
            obs_acc += o
            exp_acc += e
            if exp_acc >= 5:
                obs_bins.append(obs_acc)
                exp_bins.append(exp_acc)
                obs_acc = exp_acc = 0.0
        obs_bins[-1] += obs_acc
        exp_bins[-1] += exp_acc
        result = stats.chisquare(obs_bins, exp_bins)
        assert result.pvalue > 0.001
