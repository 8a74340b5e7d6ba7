"""Edge randomness: oracle determinism, explicit sampling, file round trips."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hygiant.combin import Params, binomial
from hygiant.sampling import (
    EdgeOracle,
    EdgeSet,
    bernoulli_threshold,
    derive_trial_seed,
    sample_edge_set,
)


class TestThresholdMap:
    def test_endpoints(self):
        assert bernoulli_threshold(0.0) == 0
        assert bernoulli_threshold(1.0) == 1 << 64

    def test_midpoint(self):
        assert bernoulli_threshold(0.5) == 1 << 63

    def test_range_check(self):
        with pytest.raises(ValueError):
            bernoulli_threshold(1.5)


class TestEdgeOracle:
    def test_deterministic_replay(self):
        p = Params.from_eps(20, 3, 2, 0.2)
        a = EdgeOracle(p, seed=42)
        b = EdgeOracle(p, seed=42)
        ranks = list(range(200))
        assert [a.query(r) for r in ranks] == [b.query(r) for r in ranks]
        assert a.t == 200

    def test_scalar_vs_vector(self):
        p = Params.from_eps(20, 3, 2, 0.2)
        oracle = EdgeOracle(p, seed=9)
        ranks = np.arange(500, dtype=np.int64)
        vec = oracle.query_many(ranks)
        scalars = np.array([EdgeOracle(p, seed=9).query(int(r)) for r in ranks])
        assert np.array_equal(vec, scalars)

    def test_empirical_rate(self):
        p = Params(1000, 3, 2, 0.3, 0.0)
        oracle = EdgeOracle(p, seed=1)
        hits = oracle.query_many(np.arange(200_000, dtype=np.int64)).mean()
        assert hits == pytest.approx(0.3, abs=0.01)

    def test_edge_set_matches_queries(self):
        p = Params.from_eps(15, 3, 2, 0.5)
        oracle = EdgeOracle(p, seed=3)
        es = oracle.edge_set()
        total = binomial(15, 3)
        for r in range(total):
            assert (r in es) == oracle.query(r)


class TestEdgeSet:
    def test_save_load_roundtrip(self, tmp_path):
        es = EdgeSet(10, 3, np.array([3, 17, 44], dtype=np.int64), seed=7)
        path = tmp_path / "edges.txt"
        es.save(path)
        back = EdgeSet.load(path)
        assert back.n == 10 and back.k == 3 and back.seed == 7
        assert np.array_equal(back.ranks, es.ranks)

    def test_dedupes_and_sorts(self):
        es = EdgeSet(10, 3, np.array([5, 2, 5, 9]))
        assert np.array_equal(es.ranks, [2, 5, 9])

    def test_vertex_arrays(self):
        es = EdgeSet(10, 3, np.array([0]))
        assert np.array_equal(es.vertex_arrays(), [[0, 1, 2]])


class TestSampleEdgeSet:
    def test_count_near_mean(self):
        p = Params(40, 3, 2, 0.1, 0.0)
        total = binomial(40, 3)
        counts = [len(sample_edge_set(p, s)) for s in range(30)]
        mean = np.mean(counts)
        sigma = np.sqrt(total * 0.1 * 0.9 / 30)
        assert abs(mean - 0.1 * total) <= 4 * sigma

    def test_p_one(self):
        p = Params(8, 3, 2, 1.0, 0.0)
        es = sample_edge_set(p, 0)
        assert len(es) == binomial(8, 3)

    def test_uniformity_no_small_rank_bias(self):
        # regression: a truncated unique() would favour small ranks
        p = Params(30, 2, 1, 0.5, 0.0)
        total = binomial(30, 2)
        low = sum(
            (sample_edge_set(p, s).ranks < total // 2).sum() for s in range(40)
        )
        count = sum(len(sample_edge_set(p, s)) for s in range(40))
        assert low / count == pytest.approx(0.5, abs=0.05)

    @given(st.integers(0, 2**64 - 1))
    @settings(max_examples=25, deadline=None)
    def test_deterministic(self, seed):
        p = Params(12, 3, 2, 0.2, 0.0)
        a = sample_edge_set(p, seed)
        b = sample_edge_set(p, seed)
        assert np.array_equal(a.ranks, b.ranks)


class TestTrialSeeds:
    def test_distinct_and_stable(self):
        seeds = [derive_trial_seed(1, i) for i in range(10_000)]
        assert len(set(seeds)) == 10_000
        assert derive_trial_seed(1, 5) == seeds[5]

    def test_master_separation(self):
        a = {derive_trial_seed(1, i) for i in range(1000)}
        b = {derive_trial_seed(2, i) for i in range(1000)}
        assert not a & b
