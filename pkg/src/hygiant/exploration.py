"""Breadth-first exploration of j-components, generation by generation.

Wraps the kernel BFS in a friendlier API. Exploration from a root j-set
proceeds in generations; generation i+1 collects the j-sets first reached
through positive k-set queries made while processing generation i. The
process can be stopped when the discovered component reaches a size cap,
when the frontier (smooth boundary) reaches a width cap, or when a global
query budget is exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .combin import CapacityError, Params, binomial
from .sampling import EdgeOracle, EdgeSet, bernoulli_threshold

STOP_NAMES = {
    kernels.STOP_EXHAUSTED: "exhausted",
    kernels.STOP_SIZE: "size",
    kernels.STOP_BOUNDARY: "boundary",
    kernels.STOP_BUDGET: "query_budget",
}

INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class StopConfig:
    """Stopping rules for one exploration; 0 disables the corresponding cap."""

    size_cap: int = 0
    boundary_cap: int = 0
    query_budget: int = 0


@dataclass
class ExplorationState:
    """Everything one BFS run produced."""

    params: Params
    root: int
    mode: str
    generations: list[np.ndarray]
    parents: list[np.ndarray] | None
    parent_edges: list[np.ndarray] | None
    edges: np.ndarray
    t: int
    positives: int
    gen_queries: list[int]
    gen_positives: list[int]
    status: np.ndarray
    stop_reason: str
    queries: list[tuple[int, bool]] | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        """Number of discovered j-sets (all generations together)."""
        return sum(len(g) for g in self.generations)

    @property
    def n_generations(self) -> int:
        return len(self.generations)

    def boundary(self, i: int) -> np.ndarray:
        """Generation i as a sorted rank array (the smooth boundary at depth i)."""
        return self.generations[i]

    def component_size(self, i: int) -> int:
        """Size of the component truncated at depth i, |C(i)|."""
        return sum(len(g) for g in self.generations[: i + 1])

    def discovered(self) -> np.ndarray:
        """Sorted ranks of every discovered j-set."""
        return np.sort(np.concatenate(self.generations))


def _run(
    params: Params,
    root: int,
    mode: int,
    seed: int | None,
    edge_set: EdgeSet | None,
    stop: StopConfig,
    forbidden: np.ndarray | None,
    track_parents: bool,
    record_queries: bool,
) -> ExplorationState:
    if (seed is None) == (edge_set is None):
        raise ValueError("provide exactly one of seed or edge_set")
    if binomial(params.n, params.k) > INT64_MAX:
        raise CapacityError("C(n, k) exceeds the kernel's 63-bit rank range")
    if binomial(params.k, params.j) > 4096:
        raise CapacityError("C(k, j) exceeds the kernel's per-edge buffer")
    if params.k > 64:
        raise CapacityError("k exceeds the kernel's per-edge vertex buffer")
    if edge_set is not None:
        if (edge_set.n, edge_set.k) != (params.n, params.k):
            raise ValueError("edge set shape does not match params")
        presampled, threshold, seed_val = edge_set.ranks, 0, 0
    else:
        presampled, threshold, seed_val = None, bernoulli_threshold(params.p), seed
    raw = kernels.explore(
        params.n,
        params.k,
        params.j,
        root,
        mode,
        seed_val,
        threshold,
        presampled,
        stop.size_cap,
        stop.boundary_cap,
        stop.query_budget,
        forbidden,
        track_parents,
        record_queries,
    )
    return ExplorationState(
        params=params,
        root=root,
        mode="tree" if mode == kernels.MODE_TREE else "component",
        generations=raw["generations"],
        parents=raw["parents"],
        parent_edges=raw["parent_edges"],
        edges=raw["edges"],
        t=raw["t"],
        positives=raw["positives"],
        gen_queries=raw["gen_queries"],
        gen_positives=raw["gen_positives"],
        status=raw["status"],
        stop_reason=STOP_NAMES[raw["stop_reason"]],
        queries=raw["queries"],
    )


def bfs_component(
    params: Params,
    root: int,
    seed: int | None = None,
    edge_set: EdgeSet | None = None,
    stop: StopConfig = StopConfig(),
    forbidden: np.ndarray | None = None,
    track_parents: bool = False,
    record_queries: bool = False,
) -> ExplorationState:
    """Explore the j-component of `root`: a k-set is queried while it still
    contains at least one neutral j-set (and no already-explored one other
    than the j-set being processed, which would mean it was queried before).
    """
    return _run(
        params, root, kernels.MODE_COMPONENT, seed, edge_set, stop, forbidden,
        track_parents, record_queries,
    )


def bfs_tree(
    params: Params,
    root: int,
    seed: int | None = None,
    edge_set: EdgeSet | None = None,
    stop: StopConfig = StopConfig(),
    forbidden: np.ndarray | None = None,
    track_parents: bool = False,
    record_queries: bool = False,
) -> ExplorationState:
    """Tree-restricted exploration: a k-set is queried only when all of its
    j-sets other than the one being processed are neutral, so every accepted
    edge contributes exactly C(k, j) - 1 fresh children and the discovered
    structure is a hypertree.
    """
    return _run(
        params, root, kernels.MODE_TREE, seed, edge_set, stop, forbidden,
        track_parents, record_queries,
    )


def oracle_component(oracle: EdgeOracle, root: int, stop: StopConfig = StopConfig(),
                     **kw) -> ExplorationState:
    """BFS through a lazy oracle, keeping its query counter in sync."""
    state = bfs_component(oracle.params, root, seed=oracle.seed, stop=stop, **kw)
    oracle.t += state.t
    return state


def ell_degrees(ranks: np.ndarray, n: int, j: int, ell: int) -> tuple[np.ndarray, np.ndarray]:
    """Degrees of ell-sets in a family of j-sets.

    For each ell-subset L of [n] contained in at least one of the given
    j-sets, counts how many of the j-sets contain L. Returns (ell-set
    ranks, counts), ranks ascending; ell-sets of degree zero are omitted.
    """
    if not 1 <= ell <= j:
        raise ValueError("need 1 <= ell <= j")
    ranks = np.asarray(ranks, dtype=np.int64)
    if len(ranks) == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    rows = kernels.unrank_batch(ranks, j, n)
    pieces = []
    for sel in combinations(range(j), ell):
        sub = rows[:, list(sel)]
        acc = np.zeros(len(rows), dtype=np.int64)
        for pos in range(ell):
            acc += _binom_vec(sub[:, pos], pos + 1)
        pieces.append(acc)
    all_ranks = np.concatenate(pieces) if pieces else np.empty(0, dtype=np.int64)
    return np.unique(all_ranks, return_counts=True)


def _binom_vec(values: np.ndarray, r: int) -> np.ndarray:
    """C(v, r) elementwise for int64 v, exact."""
    vmax = int(values.max()) if len(values) else 0
    if vmax and vmax**r > INT64_MAX:
        # the falling-factorial intermediate would overflow int64
        import math

        return np.fromiter(
            (math.comb(int(v), r) for v in values), dtype=np.int64, count=len(values)
        )
    out = np.ones(len(values), dtype=np.int64)
    for i in range(r):
        out *= values - i
    for i in range(2, r + 1):
        out //= i
    return out


def max_ell_degree(ranks: np.ndarray, n: int, j: int, ell: int) -> int:
    """Largest ell-set degree within a family of j-sets."""
    _, counts = ell_degrees(ranks, n, j, ell)
    return int(counts.max()) if len(counts) else 0


def check_bounded_degree(state: ExplorationState, i: int, ell: int, cap: float) -> bool:
    """Is every ell-set degree in boundary i at most `cap`?"""
    return max_ell_degree(state.boundary(i), state.params.n, state.params.j, ell) <= cap


def check_expansion(state: ExplorationState, lam: float, start: int = 0) -> bool:
    """Do successive boundary widths grow by (1 + eps) within relative slack lam?

    Checks |gen(i+1)| / |gen(i)| against (1 - lam) mu .. (1 + lam) mu with
    mu = 1 + eps, from generation `start` up to the last full generation.
    """
    mu = 1.0 + state.params.eps
    widths = [len(g) for g in state.generations]
    for i in range(start, len(widths) - 1):
        if widths[i] == 0:
            return False
        ratio = widths[i + 1] / widths[i]
        if not (1 - lam) * mu <= ratio <= (1 + lam) * mu:
            return False
    return True
