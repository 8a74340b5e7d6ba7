"""Litter-valued Galton-Watson processes and their survival analysis.

Individuals are j-sets; one individual's children arrive in litters of
size C = C(k, j) - 1 (one litter per positive edge among its candidate
k-sets), so the offspring count is C * Binomial(trials, p). The upper
process uses all C(n, k-j) candidate k-sets per individual; the lower
process discards a small fraction of them; the dual process is the upper
process conditioned on extinction, which is again of the same form with
a reduced edge probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combin import Params, binomial


@dataclass(frozen=True)
class OffspringLaw:
    """Offspring distribution litter * Binomial(trials, p)."""

    litter: int
    trials: int
    p: float

    def __post_init__(self) -> None:
        if self.litter < 1 or self.trials < 0 or not 0.0 <= self.p <= 1.0:
            raise ValueError("invalid offspring law")

    @property
    def mean(self) -> float:
        return self.litter * self.trials * self.p

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self.litter * rng.binomial(self.trials, self.p, size=size)


def upper_law(params: Params) -> OffspringLaw:
    """The dominating process: every one of the C(n, k-j) k-sets over a
    j-set is available as a candidate query."""
    return OffspringLaw(params.litter, binomial(params.n, params.k - params.j), params.p)


def lower_law(params: Params, eta: float) -> OffspringLaw:
    """The dominated process: a (1 - eta) fraction of the candidate k-sets
    survive the collision discounts near the explored region."""
    if not 0.0 <= eta < 1.0:
        raise ValueError("eta must lie in [0, 1)")
    trials = int((1.0 - eta) * binomial(params.n, params.k - params.j))
    return OffspringLaw(params.litter, trials, params.p)


def dual_edge_probability(law: OffspringLaw) -> float:
    """Edge probability of the duality conjugate (the process conditioned
    on extinction): phat = (1 - rho)^C p / (1 - p (1 - (1 - rho)^C))."""
    rho = survival_probability(law)
    shrink = (1.0 - rho) ** law.litter
    return shrink * law.p / (1.0 - law.p * (1.0 - shrink))


def dual_law(law: OffspringLaw) -> OffspringLaw:
    """The extinction-conditioned conjugate of a supercritical law."""
    return OffspringLaw(law.litter, law.trials, dual_edge_probability(law))


def dual_expected_total(law: OffspringLaw) -> float:
    """Expected total progeny of the dual process, 1 / (1 - mean)."""
    mu = dual_law(law).mean
    if mu >= 1.0:
        raise ValueError("dual process is not subcritical")
    return 1.0 / (1.0 - mu)


def survival_probability(law: OffspringLaw, tol: float = 1e-12) -> float:
    """Survival probability of the litter-valued process.

    Solves the fixed point for rho0 = P(survival of a single litter slot),
        1 - rho0 = (1 - p rho0)^(litter * trials),
    by bisection on (0, 1], then converts to the individual survival
    probability rho = 1 - (1 - rho0)^(1 / litter). Returns 0 for
    subcritical or critical laws.
    """
    c, s, p = law.litter, law.trials, law.p
    if law.mean <= 1.0 or p == 0.0:
        return 0.0

    def g(x: float) -> float:
        # log form keeps precision when p * x is tiny
        return math.exp(c * s * math.log1p(-p * x)) - (1.0 - x)

    # g(0) = 0; supercriticality makes g < 0 just above 0 and g(1) >= 0
    lo, hi = 0.0, 1.0
    if p >= 1.0:
        rho0 = 1.0
    else:
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if g(mid) < 0.0:
                lo = mid
            else:
                hi = mid
            if hi - lo < tol * max(hi, tol):
                break
        rho0 = 0.5 * (lo + hi)
    return -math.expm1(math.log1p(-rho0) / c)


def large_total_tail(law: OffspringLaw, threshold: float) -> float:
    """Upper estimate of P(total progeny >= threshold).

    Survivors always exceed any o(mean-scale) threshold; extinguished
    trajectories follow the dual process, whose total progeny has mean
    1 / (1 - mu_dual), so Markov gives the second term.
    """
    rho = survival_probability(law)
    if threshold <= 1:
        return 1.0
    return min(1.0, rho + dual_expected_total(law) / threshold)


@dataclass
class Trajectory:
    """Generation sizes of one simulated branching run."""

    sizes: list[int]
    total: int
    survived: bool  # hit a cap rather than dying out

    @property
    def generations(self) -> int:
        return len(self.sizes)


def simulate(
    law: OffspringLaw,
    rng: np.random.Generator,
    size_cap: int = 100_000,
    generation_cap: int = 1_000,
) -> Trajectory:
    """Run one trajectory until extinction or a cap; caps mark survival.

    Each generation is drawn in aggregate: the sum of `size` independent
    copies of litter * Bi(trials, p) is litter * Bi(size * trials, p).
    """
    sizes = [1]
    total = 1
    while sizes[-1] > 0:
        if total >= size_cap or len(sizes) >= generation_cap:
            return Trajectory(sizes, total, True)
        nxt = law.litter * int(rng.binomial(sizes[-1] * law.trials, law.p))
        if nxt:
            sizes.append(nxt)
            total += nxt
        else:
            break
    return Trajectory(sizes, total, False)


def simulate_totals(
    law: OffspringLaw,
    rng: np.random.Generator,
    n_trials: int,
    size_cap: int = 100_000,
    generation_cap: int = 1_000,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized totals over many trajectories.

    Returns (totals, survived); totals of surviving runs are truncated at
    the point the cap was hit.
    """
    current = np.ones(n_trials, dtype=np.int64)
    totals = np.ones(n_trials, dtype=np.int64)
    survived = np.zeros(n_trials, dtype=bool)
    for _ in range(generation_cap):
        alive = (current > 0) & ~survived
        if not alive.any():
            break
        draws = rng.binomial(current[alive] * law.trials, law.p)
        nxt = law.litter * draws.astype(np.int64)
        current = current.copy()
        current[alive] = nxt
        totals[alive] += nxt
        survived |= totals >= size_cap
        current[survived] = 0
    else:
        survived |= current > 0
    return totals, survived
