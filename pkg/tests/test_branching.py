"""Branching processes: solver fixed point, dual process, simulations."""

import math

import numpy as np
import pytest

from hygiant.branching import (
    OffspringLaw,
    dual_edge_probability,
    dual_expected_total,
    dual_law,
    large_total_tail,
    lower_law,
    simulate,
    simulate_totals,
    survival_probability,
    upper_law,
)
from hygiant.combin import Params, binomial


class TestSolver:
    def test_subcritical_returns_zero(self):
        assert survival_probability(OffspringLaw(2, 10, 0.04)) == 0.0
        assert survival_probability(OffspringLaw(2, 10, 0.05)) == 0.0  # critical

    def test_graph_limit_value(self):
        # litter=1, mean 1.1 with huge trials: rho = 1 - exp(-1.1 rho),
        # fixed point 0.17613414... (independent bisection oracle)
        law = OffspringLaw(1, 10**6, 1.1e-6)
        assert survival_probability(law) == pytest.approx(0.17613414363, abs=1e-6)

    def test_monotone_in_prob(self):
        trials = 1000
        rhos = [
            survival_probability(OffspringLaw(2, trials, c / (2 * trials)))
            for c in (1.05, 1.1, 1.2, 1.5, 2.0)
        ]
        assert all(a < b for a, b in zip(rhos, rhos[1:]))

    def test_asymptotic_two_eps_over_c(self):
        for k, j in [(2, 1), (3, 2), (4, 2)]:
            for eps in (0.01, 0.05):
                p = Params.from_eps(10_000, k, j, eps)
                law = upper_law(p)
                rho = survival_probability(law)
                assert abs(rho * p.litter / (2 * eps) - 1) <= 2 * eps


class TestDual:
    def test_rho_zero_identity(self):
        # at rho = 0 the conjugate formula collapses to p itself
        assert dual_edge_probability(OffspringLaw(2, 10, 0.04)) == pytest.approx(0.04)

    def test_dual_subcritical_mean(self):
        p = Params.from_eps(300, 3, 2, 0.1)
        law = upper_law(p)
        mu_hat = dual_law(law).mean
        assert mu_hat < 1
        assert mu_hat == pytest.approx(1 - 0.1, abs=0.03)

    def test_expected_total_geometric(self):
        p = Params.from_eps(300, 3, 2, 0.1)
        assert dual_expected_total(upper_law(p)) == pytest.approx(1 / 0.1, rel=0.15)


class TestTailBound:
    def test_clipped_at_one(self):
        p = Params.from_eps(100, 3, 2, 0.2)
        assert large_total_tail(upper_law(p), 1) == 1.0

    def test_limit_is_rho(self):
        p = Params.from_eps(100, 3, 2, 0.2)
        law = upper_law(p)
        assert large_total_tail(law, 1e12) == pytest.approx(survival_probability(law))

    def test_dominates_empirical(self):
        p = Params.from_eps(200, 3, 2, 0.15)
        law = upper_law(p)
        rng = np.random.default_rng(0)
        totals, _ = simulate_totals(law, rng, 20_000, size_cap=100_000)
        for threshold in (10, 100, 1000):
            freq = float((totals >= threshold).mean())
            bound = large_total_tail(law, threshold)
            sigma = math.sqrt(bound * (1 - bound) / 20_000)
            assert freq <= bound + 3 * sigma


class TestSimulate:
    def test_prob_zero(self):
        rng = np.random.default_rng(0)
        traj = simulate(OffspringLaw(2, 10, 0.0), rng)
        assert traj.total == 1 and not traj.survived

    def test_deterministic_line(self):
        rng = np.random.default_rng(0)
        traj = simulate(OffspringLaw(1, 1, 1.0), rng, generation_cap=50)
        assert traj.survived
        assert all(s == 1 for s in traj.sizes)

    def test_subcritical_mean_total(self):
        # mu = 0.9: E(total) = 1 / (1 - 0.9) = 10
        law = OffspringLaw(1, 10, 0.09)
        rng = np.random.default_rng(7)
        totals, survived = simulate_totals(law, rng, 100_000)
        assert not survived.any()
        mean = totals.mean()
        sigma = totals.std(ddof=1) / math.sqrt(len(totals))
        assert abs(mean - 10.0) <= 3 * sigma

    def test_offspring_multiples_of_litter(self):
        law = OffspringLaw(3, 50, 0.02)
        rng = np.random.default_rng(1)
        traj = simulate(law, rng)
        assert all(s % 3 == 0 for s in traj.sizes[1:])


class TestCoupling:
    def test_lower_below_upper_shared_draws(self):
        # coupled draw: X ~ Bi(s_low * size, p) is shared, the upper adds an
        # independent Bi((s_up - s_low) * size, p) on top
        p = Params.from_eps(100, 3, 2, 0.2)
        up = upper_law(p)
        low = lower_law(p, 0.05)
        rng = np.random.default_rng(3)
        size_low, size_up = 1, 1
        for _ in range(60):
            shared = rng.binomial(size_low * low.trials, p.p)
            extra = rng.binomial(size_up * up.trials - size_low * low.trials, p.p)
            nxt_low = low.litter * shared
            nxt_up = up.litter * (shared + extra)
            assert nxt_low <= nxt_up
            size_low, size_up = nxt_low, nxt_up
            if size_up == 0:
                break
            size_low = min(size_low, size_up)

    def test_lower_trials_floor(self):
        p = Params.from_eps(100, 3, 2, 0.2)
        low = lower_law(p, 0.1)
        assert low.trials == int(0.9 * binomial(100, 1))
