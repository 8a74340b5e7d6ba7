"""Combinatorics layer: ranking, binomials, thresholds, parameter types."""

import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from hygiant.combin import (
    CapacityError,
    Params,
    ToleranceSchedule,
    binomial,
    critical_p0,
    critical_p0_fraction,
    default_tolerances,
    rank_subset,
    sub_jsets,
    unrank_subset,
)


class TestBinomial:
    def test_matches_math_comb(self):
        for n in range(0, 40):
            for r in range(0, n + 1):
                assert binomial(n, r) == math.comb(n, r)

    def test_out_of_range(self):
        assert binomial(5, 9) == 0
        assert binomial(5, -1) == 0

    def test_capacity_cap(self):
        with pytest.raises(CapacityError):
            binomial(1000, 500)


class TestColexRank:
    def test_enumeration_order(self):
        # colex rank enumerates r-subsets sorted by reversed tuple
        for n, r in [(8, 3), (10, 2), (7, 4)]:
            subsets = sorted(combinations(range(n), r), key=lambda s: s[::-1])
            for rank, subset in enumerate(subsets):
                assert rank_subset(list(subset)) == rank
                assert unrank_subset(rank, r) == list(subset)

    @given(st.integers(2, 60), st.data())
    def test_roundtrip(self, n, data):
        r = data.draw(st.integers(1, min(n, 6)))
        rank = data.draw(st.integers(0, binomial(n, r) - 1))
        subset = unrank_subset(rank, r)
        assert len(subset) == r
        assert subset == sorted(set(subset))
        assert rank_subset(subset) == rank

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            rank_subset([3, 1, 2])
        with pytest.raises(ValueError):
            rank_subset([1, 1, 2])

    def test_sub_jsets(self):
        # all 2-subsets of the edge {0,1,2}: ranks of (0,1),(0,2),(1,2) = 0,1,2
        assert sorted(sub_jsets([0, 1, 2], 2)) == [0, 1, 2]
        edge = [2, 5, 9]
        expected = sorted(rank_subset(list(s)) for s in combinations(edge, 2))
        assert sorted(sub_jsets(edge, 2)) == expected


class TestThreshold:
    def test_known_value(self):
        # k=3, j=2, n=10: 1 / ((3 - 1) * C(10, 1)) = 1/20
        assert critical_p0(10, 3, 2) == pytest.approx(0.05)

    def test_identity_exact(self):
        # (C(k,j) - 1) * C(n, k-j) * p0 = 1 in rational arithmetic
        for k in range(2, 9):
            for j in range(1, k):
                for n in (k, 10, 37, 100):
                    p0 = critical_p0_fraction(n, k, j)
                    assert (binomial(k, j) - 1) * binomial(n, k - j) * p0 == 1

    def test_graph_case(self):
        assert critical_p0_fraction(100, 2, 1) == Fraction(1, 100)


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            Params(10, 2, 2, 0.5, 0.0)  # j == k
        with pytest.raises(ValueError):
            Params(10, 3, 2, 1.5, 0.0)  # p > 1

    def test_from_eps(self):
        p = Params.from_eps(10, 3, 2, 0.2)
        assert p.p == pytest.approx(1.2 * 0.05)
        assert p.litter == 2
        assert p.n_jsets == 45

    def test_subcritical_eps(self):
        p = Params.from_eps(100, 2, 1, -0.3)
        assert p.p == pytest.approx(0.7 / 100)


class TestTolerances:
    def test_defaults(self):
        tol = default_tolerances(0.2)
        assert tol.rho1 == pytest.approx(0.04)
        assert tol.gamma == pytest.approx(0.002)
        assert tol.delta == 0.1

    def test_delta_ell(self):
        tol = ToleranceSchedule(delta=0.1, rho1=0.01, gamma=0.001, lambda0=0.01, delta0=0.05)
        assert tol.delta_ell(0) == pytest.approx(0.05)
        assert tol.delta_ell(2) == pytest.approx(64 * 0.05)

    def test_delta_range(self):
        with pytest.raises(ValueError):
            ToleranceSchedule(delta=0.2, rho1=0.01, gamma=0.001, lambda0=0.01, delta0=0.05)
