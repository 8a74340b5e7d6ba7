"""End-to-end experiments: giant size, subcritical bound, survival Monte
Carlo, smoothness, sprinkling, shadow degrees, and hypertree search.

Every experiment consumes an ExperimentConfig and emits a Report: one row
of scalars per trial plus an aggregate block, reproducible from (config,
master_seed) alone. Reports serialize to CSV (header, rows, `# aggregate:`
trailer comments) or JSON ({config, trials, aggregate}).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .branching import (
    dual_expected_total,
    dual_law,
    lower_law,
    simulate_totals,
    survival_probability,
    upper_law,
)
from .combin import Params, ToleranceSchedule, binomial, default_tolerances
from .components import census
from .exploration import StopConfig, bfs_component, bfs_tree
from .sampling import EdgeSet, derive_trial_seed, sample_edge_set
from .smoothness import degree_profile, smoothing_schedule

# ---------------------------------------------------------------------------
# configuration and report plumbing


@dataclass(frozen=True)
class ExperimentConfig:
    """Shared experiment settings; p is derived as (1 +/- eps) p0."""

    n: int
    k: int
    j: int
    eps: float
    regime: str = "super"  # "super" or "sub"
    trials: int = 20
    master_seed: int = 0
    tol: ToleranceSchedule | None = None
    alpha: float | None = None  # query budget fraction of n^k; default 4 rho1

    def __post_init__(self) -> None:
        if self.regime not in ("super", "sub"):
            raise ValueError("regime must be 'super' or 'sub'")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0.0 < self.eps:
            raise ValueError("eps must be positive; the regime carries the sign")
        if self.tol is None:
            object.__setattr__(self, "tol", default_tolerances(self.eps))
        if self.alpha is None:
            object.__setattr__(self, "alpha", 4.0 * self.tol.rho1)

    @property
    def signed_eps(self) -> float:
        return self.eps if self.regime == "super" else -self.eps

    def params(self) -> Params:
        return Params.from_eps(self.n, self.k, self.j, self.signed_eps)

    @property
    def large_threshold(self) -> float:
        """Size from which a component counts as large: rho1 * n^j."""
        return self.tol.rho1 * self.n**self.j

    def stop_config(self) -> StopConfig:
        """Default exploration stops: size rho1 n^j, boundary rho1^2 n^j,
        query budget alpha n^k."""
        return StopConfig(
            size_cap=math.ceil(self.large_threshold),
            boundary_cap=math.ceil(self.tol.rho1**2 * self.n**self.j),
            query_budget=math.ceil(self.alpha * self.n**self.k),
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["p"] = self.params().p
        d["p0"] = self.params().p0
        return d


@dataclass
class Report:
    """Per-trial rows plus an aggregate block, tied to the config."""

    experiment: str
    config: dict
    rows: list[dict]
    aggregate: dict

    def write_csv(self, path: str | Path) -> None:
        fields = list(self.rows[0].keys()) if self.rows else []
        with open(path, "w", newline="") as fh:
            fh.write(f"# experiment: {self.experiment}\n")
            fh.write(f"# config: {json.dumps(self.config, sort_keys=True)}\n")
            writer = csv.DictWriter(fh, fieldnames=fields)
            writer.writeheader()
            writer.writerows(self.rows)
            for key in sorted(self.aggregate):
                fh.write(f"# aggregate: {key}={self.aggregate[key]}\n")

    def write_json(self, path: str | Path) -> None:
        payload = {
            "experiment": self.experiment,
            "config": self.config,
            "trials": self.rows,
            "aggregate": self.aggregate,
        }
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True, default=float)
            fh.write("\n")


def chernoff_halfwidth(n_trials: int, p: float, fail_prob: float = 0.01) -> float:
    """Deviation t with P(|Bi(n, p) - np| >= t) <= fail_prob.

    Inverts the Bernstein-form bound 2 exp(-t^2 / (2 (mu + t/3))); the
    returned halfwidth is for the count, divide by n_trials for a
    frequency margin.
    """
    if not 0 < fail_prob < 1:
        raise ValueError("fail_prob must lie in (0, 1)")
    mu = n_trials * p
    big_l = math.log(2.0 / fail_prob)
    return big_l / 3.0 + math.sqrt(big_l * big_l / 9.0 + 2.0 * mu * big_l)


def binomial_sigma(n_trials: int, p: float) -> float:
    return math.sqrt(n_trials * p * (1.0 - p))


def _aggregate_mean_std(rows: list[dict], key: str) -> tuple[float, float]:
    vals = np.array([row[key] for row in rows], dtype=float)
    return float(vals.mean()), float(vals.std(ddof=1)) if len(vals) > 1 else 0.0


# ---------------------------------------------------------------------------
# experiments


def run_giant(config: ExperimentConfig) -> Report:
    """Largest-component experiment: sample, census, compare to the solver.

    Per trial records L1, L2, and X (j-sets in components of size at least
    rho1 n^j); aggregates compare L1 / C(n, j) and X / C(n, j) to both the
    solver survival probability and the asymptotic 2 eps / C.
    """
    if config.regime != "super":
        raise ValueError("giant experiment needs the supercritical regime")
    params = config.params()
    n_jsets = binomial(config.n, config.j)
    rho = survival_probability(upper_law(params))
    rows = []
    for i in range(config.trials):
        seed = derive_trial_seed(config.master_seed, i)
        cs = census(sample_edge_set(params, seed), config.j)
        l1, l2 = cs.largest_two()
        x = cs.count_in_large(config.large_threshold)
        rows.append(
            {
                "trial": i,
                "seed": seed,
                "edges": int(cs.comp_edges.sum()),
                "L1": l1,
                "L2": l2,
                "X": x,
                "L1_frac": l1 / n_jsets,
                "L2_over_L1": l2 / l1 if l1 else 0.0,
                "X_frac": x / n_jsets,
            }
        )
    mean_l1, std_l1 = _aggregate_mean_std(rows, "L1_frac")
    mean_x, _ = _aggregate_mean_std(rows, "X_frac")
    asym = 2.0 * config.eps / params.litter
    aggregate = {
        "rho_solver": rho,
        "asymptotic_frac": asym,
        "mean_L1_frac": mean_l1,
        "std_L1_frac": std_l1,
        "mean_X_frac": mean_x,
        "mean_L1_over_rho": mean_l1 / rho,
        "mean_X_over_rho": mean_x / rho,
        "max_L2_over_L1": max(row["L2_over_L1"] for row in rows),
        "frac_L2_over_L1_le_05": float(
            np.mean([row["L2_over_L1"] <= 0.05 for row in rows])
        ),
    }
    return Report("giant", config.to_dict(), rows, aggregate)


def run_subcritical(config: ExperimentConfig) -> Report:
    """Largest component against the bound 3 C k eps^-2 ln n."""
    if config.regime != "sub":
        raise ValueError("subcritical experiment needs the sub regime")
    params = config.params()
    bound = 3.0 * params.litter * config.k * config.eps**-2 * math.log(config.n)
    rows = []
    for i in range(config.trials):
        seed = derive_trial_seed(config.master_seed, i)
        cs = census(sample_edge_set(params, seed), config.j)
        l1, _ = cs.largest_two()
        rows.append({"trial": i, "seed": seed, "L1": l1, "within_bound": int(l1 <= bound)})
    aggregate = {
        "bound": bound,
        "max_L1": max(row["L1"] for row in rows),
        "all_within_bound": int(all(row["within_bound"] for row in rows)),
    }
    return Report("subcritical", config.to_dict(), rows, aggregate)


def run_survival_mc(
    config: ExperimentConfig,
    mc_trials: int = 100_000,
    size_cap: int = 100_000,
    generation_cap: int = 1_000,
) -> Report:
    """Monte Carlo check of the survival solver and the dual process.

    Empirical survival frequency (proxy: hitting the size or generation
    cap) for the upper and lower laws is compared to the solver values;
    the extinct-run mean total is compared to the dual expectation.
    """
    if config.regime != "super":
        raise ValueError("survival experiment needs the supercritical regime")
    params = config.params()
    laws = {
        "upper": upper_law(params),
        "lower": lower_law(params, config.tol.gamma),
    }
    rng = np.random.default_rng(config.master_seed)
    rows = []
    for name, law in laws.items():
        totals, survived = simulate_totals(law, rng, mc_trials, size_cap, generation_cap)
        rho = survival_probability(law)
        extinct = totals[~survived]
        rows.append(
            {
                "law": name,
                "mu": law.mean,
                "rho_solver": rho,
                "survival_freq": float(survived.mean()),
                "sigma": binomial_sigma(mc_trials, rho) / mc_trials,
                "extinct_mean_total": float(extinct.mean()) if len(extinct) else 0.0,
                "dual_expected_total": dual_expected_total(law),
            }
        )
    rho_up = rows[0]["rho_solver"]
    rho_lo = rows[1]["rho_solver"]
    aggregate = {
        "rho_gap_rel": abs(rho_lo - rho_up) / rho_up if rho_up else 0.0,
        "asymptotic": 2.0 * config.eps / params.litter,
    }
    return Report("survival", config.to_dict(), rows, aggregate)


def run_smoothness(config: ExperimentConfig, max_attempts: int | None = None) -> Report:
    """Degree-profile smoothness along surviving explorations.

    Repeats seeded explorations from random roots until `trials` of them
    stop via the size or boundary cap (runs that exhaust a small component
    are counted and skipped). For each success and each level ell < j the
    full spread trajectory is measured, the smoothing schedule (i_ell,
    s_ell, i_ell+) computed, and spreads at i_ell, i_ell+, i_ell+ + 2 and
    at the stopping generation recorded.
    """
    if config.regime != "super":
        raise ValueError("smoothness experiment needs the supercritical regime")
    if config.j < 2:
        raise ValueError("smoothness needs j >= 2 (no levels below j otherwise)")
    params = config.params()
    n_jsets = binomial(config.n, config.j)
    stop = config.stop_config()
    if max_attempts is None:
        max_attempts = 50 * config.trials
    rows = []
    failures = 0
    attempt = 0
    while len(rows) < config.trials and attempt < max_attempts:
        seed = derive_trial_seed(config.master_seed, attempt)
        root = int(seed % n_jsets)
        attempt += 1
        state = bfs_component(params, root, seed=seed, stop=stop)
        if state.stop_reason in ("exhausted", "query_budget"):
            failures += 1
            continue
        widths = [len(g) for g in state.generations]
        i_stop = len(widths) - 1
        row = {
            "trial": len(rows),
            "seed": seed,
            "root": root,
            "stop_reason": state.stop_reason,
            "i_stop": i_stop,
            "size": state.size,
        }
        for ell in range(1, config.j):
            spreads = []
            for gen in state.generations:
                prof = degree_profile(gen, config.n, config.j, ell)
                spreads.append(prof.spread)
            try:
                sched = smoothing_schedule(widths, params, ell, config.tol)
            except ValueError:
                row.update(
                    {
                        f"i{ell}": -1,
                        f"s{ell}": -1,
                        f"i{ell}_plus": -1,
                        f"spread{ell}_at_i": float("nan"),
                        f"spread{ell}_at_plus": float("nan"),
                        f"spread{ell}_at_plus2": float("nan"),
                        f"spread{ell}_at_stop": spreads[-1],
                        f"schedule{ell}_done": 0,
                    }
                )
                continue

            def at(idx: int) -> float:
                return spreads[idx] if 0 <= idx <= i_stop else float("nan")

            row.update(
                {
                    f"i{ell}": sched.i_start,
                    f"s{ell}": sched.s_smooth,
                    f"i{ell}_plus": sched.i_smooth,
                    f"spread{ell}_at_i": at(sched.i_start),
                    f"spread{ell}_at_plus": at(sched.i_smooth),
                    f"spread{ell}_at_plus2": at(sched.i_smooth + 2),
                    f"spread{ell}_at_stop": spreads[-1],
                    f"schedule{ell}_done": int(i_stop >= sched.i_smooth),
                }
            )
        rows.append(row)

    aggregate: dict = {"attempts": attempt, "small_components": failures}
    if rows:
        for ell in range(1, config.j):
            stop_spreads = np.array([row[f"spread{ell}_at_stop"] for row in rows])
            at_i = np.array([row[f"spread{ell}_at_i"] for row in rows])
            at_plus2 = np.array([row[f"spread{ell}_at_plus2"] for row in rows])
            aggregate[f"frac_spread{ell}_stop_le_05"] = float(
                np.mean(stop_spreads <= 0.5)
            )
            aggregate[f"median_spread{ell}_at_i"] = (
                float(np.nanmedian(at_i)) if not np.all(np.isnan(at_i)) else float("nan")
            )
            aggregate[f"median_spread{ell}_at_plus2"] = (
                float(np.nanmedian(at_plus2))
                if not np.all(np.isnan(at_plus2))
                else float("nan")
            )
            aggregate[f"frac_schedule{ell}_done"] = float(
                np.mean([row[f"schedule{ell}_done"] for row in rows])
            )
    return Report("smoothness", config.to_dict(), rows, aggregate)


def sprinkle_probabilities(config: ExperimentConfig) -> tuple[float, float]:
    """Split p into two exposure rounds with p1 + p2 - p1 p2 = p.

    The asymptotic choice p2 = (ln n)^2 / (rho1^2 n^(k-j+1)) exceeds p
    outright at desk scales, so p2 is capped at eps p / 4, which keeps the
    first round supercritical while leaving a useful second round.
    """
    params = config.params()
    p = params.p
    p2_asym = math.log(config.n) ** 2 / (
        config.tol.rho1**2 * config.n ** (config.k - config.j + 1)
    )
    p2 = min(p2_asym, config.eps * p / 4.0)
    if p2 >= p:
        raise ValueError("sprinkle round p2 >= p; n is too small for this split")
    p1 = (p - p2) / (1.0 - p2)
    return p1, p2


def run_sprinkling(config: ExperimentConfig) -> Report:
    """Two-round exposure: do the large components of round one merge?

    Round one samples at p1, the census marks its large components; round
    two sprinkles independent edges at p2; the union census then checks
    whether all previously-large components landed in a single component.
    """
    if config.regime != "super":
        raise ValueError("sprinkling experiment needs the supercritical regime")
    params = config.params()
    p1, p2 = sprinkle_probabilities(config)
    assert abs((p1 + p2 - p1 * p2) - params.p) <= 1e-12 * params.p
    params1 = Params(config.n, config.k, config.j, p1, config.signed_eps)
    params2 = Params(config.n, config.k, config.j, p2, 0.0)
    rows = []
    for i in range(config.trials):
        seed1 = derive_trial_seed(config.master_seed, 2 * i)
        seed2 = derive_trial_seed(config.master_seed, 2 * i + 1)
        es1 = sample_edge_set(params1, seed1)
        cs1 = census(es1, config.j)
        large = cs1.sizes >= config.large_threshold
        large_ids = cs1.comp_ids[large]
        reps = [int(cs1.members(cid)[0]) for cid in large_ids]
        es2 = sample_edge_set(params2, seed2)
        union = EdgeSet(
            config.n, config.k, np.union1d(es1.ranks, es2.ranks)
        )
        cs2 = census(union, config.j)
        merged_roots = {int(cs2.roots[rep]) for rep in reps}
        l1, l2 = cs2.largest_two()
        rows.append(
            {
                "trial": i,
                "seed1": seed1,
                "seed2": seed2,
                "large_before": int(large.sum()),
                "merged": int(len(merged_roots) <= 1),
                "L1_after": l1,
                "L2_over_L1_after": l2 / l1 if l1 else 0.0,
            }
        )
    aggregate = {
        "p1": p1,
        "p2": p2,
        "frac_merged": float(np.mean([row["merged"] for row in rows])),
        "mean_large_before": float(np.mean([row["large_before"] for row in rows])),
    }
    return Report("sprinkle", config.to_dict(), rows, aggregate)


def run_shadow(config: ExperimentConfig, ell: int | None = None) -> Report:
    """Shadow spread of the largest component.

    For the largest component, measures the minimum over all ell-sets of
    the number of component j-sets containing the ell-set, against the
    bound rho1 n^(j-ell) (2 C(k,j)^2)^(-ell); ell-sets missing from the
    component entirely count as zero.
    """
    if config.regime != "super":
        raise ValueError("shadow experiment needs the supercritical regime")
    from .exploration import ell_degrees

    params = config.params()
    if ell is None:
        ell = config.j - 1 if config.j > 1 else 1
    bound = (
        config.tol.rho1
        * config.n ** (config.j - ell)
        * (2.0 * binomial(config.k, config.j) ** 2) ** -ell
    )
    n_ell = binomial(config.n, ell)
    rows = []
    for i in range(config.trials):
        seed = derive_trial_seed(config.master_seed, i)
        cs = census(sample_edge_set(params, seed), config.j)
        members = cs.members(int(cs.comp_ids[0]))
        ranks, counts = ell_degrees(members, config.n, config.j, ell)
        min_shadow = int(counts.min()) if len(ranks) == n_ell else 0
        assert int(counts.sum()) == binomial(config.j, ell) * len(members)
        rows.append(
            {
                "trial": i,
                "seed": seed,
                "L1": len(members),
                "min_shadow": min_shadow,
                "above_bound": int(min_shadow >= bound),
            }
        )
    aggregate = {
        "ell": ell,
        "bound": bound,
        "frac_above_bound": float(np.mean([row["above_bound"] for row in rows])),
    }
    return Report("shadow", config.to_dict(), rows, aggregate)


def run_hypertree(config: ExperimentConfig) -> Report:
    """Tree-restricted search survival against the lower-law solver.

    Each trial runs bfs_tree from a random root on a fresh hypergraph; the
    fraction of roots whose tree reaches size rho1 n^j estimates the
    survival probability of the lower branching law. The hypertree
    identity size = C e + 1 is asserted on every run.
    """
    if config.regime != "super":
        raise ValueError("hypertree experiment needs the supercritical regime")
    params = config.params()
    n_jsets = binomial(config.n, config.j)
    stop = StopConfig(size_cap=math.ceil(config.large_threshold))
    rows = []
    for i in range(config.trials):
        seed = derive_trial_seed(config.master_seed, i)
        root = int(seed % n_jsets)
        state = bfs_tree(params, root, seed=seed, stop=stop)
        assert state.size == params.litter * len(state.edges) + 1
        rows.append(
            {
                "trial": i,
                "seed": seed,
                "root": root,
                "size": state.size,
                "edges": len(state.edges),
                "reached": int(state.stop_reason == "size"),
            }
        )
    frac = float(np.mean([row["reached"] for row in rows]))
    rho_lower = survival_probability(lower_law(params, config.tol.gamma))
    aggregate = {
        "frac_reached": frac,
        "rho_lower": rho_lower,
        "rho_upper": survival_probability(upper_law(params)),
        "sigma": binomial_sigma(config.trials, rho_lower) / config.trials,
        "asymptotic": 2.0 * config.eps / params.litter,
    }
    return Report("hypertree", config.to_dict(), rows, aggregate)
