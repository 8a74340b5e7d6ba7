"""Edge randomness: lazy Bernoulli oracles, presampled edge sets, seeds.

A random hypergraph is represented either lazily (each k-set rank maps to
a deterministic Bernoulli(p) draw through a splitmix64 hash of the seed
and the rank, so the full graph never needs to be materialized) or as an
explicit sorted array of positive edge ranks. Both views of the same
(seed, p) pair agree query for query.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .combin import Params, binomial

TWO64 = 1 << 64


def bernoulli_threshold(p: float) -> int:
    """Map a probability to the 64-bit threshold used by the hash oracle.

    A query is positive when its hash word is < threshold, so p=0 maps to
    0 (never) and p=1 to 2**64 (always; every word is below it).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    if p >= 1.0:
        return TWO64
    return min(int(round(p * TWO64)), TWO64 - 1)


def derive_trial_seed(master_seed: int, index: int) -> int:
    """Independent per-trial seed from a master seed and a trial index."""
    return kernels.splitmix_word(master_seed & (TWO64 - 1), (index * 0x100000001B3) & (TWO64 - 1))


@dataclass
class EdgeOracle:
    """Lazy Bernoulli(p) oracle over the k-sets of [n], keyed by colex rank."""

    params: Params
    seed: int
    t: int = field(default=0, init=False)

    def __post_init__(self) -> None:
        self.threshold = bernoulli_threshold(self.params.p)

    def query(self, rank: int) -> bool:
        """Answer for one k-set rank; counts toward the query total t."""
        self.t += 1
        return kernels.splitmix_word(self.seed, rank) < self.threshold

    def query_many(self, ranks: np.ndarray) -> np.ndarray:
        """Vectorized answers for an array of k-set ranks."""
        ranks = np.asarray(ranks, dtype=np.int64)
        self.t += len(ranks)
        if self.threshold >= TWO64:
            return np.ones(len(ranks), dtype=bool)
        words = kernels.splitmix_words(self.seed, ranks)
        return words < np.uint64(self.threshold)

    def edge_set(self) -> "EdgeSet":
        """Materialize every positive k-set (feasible only at small C(n,k))."""
        total = binomial(self.params.n, self.params.k)
        ranks = np.arange(total, dtype=np.int64)
        if self.threshold >= TWO64:
            positive = ranks
        else:
            words = kernels.splitmix_words(self.seed, ranks)
            positive = ranks[words < np.uint64(self.threshold)]
        return EdgeSet(self.params.n, self.params.k, np.sort(positive), seed=self.seed)


@dataclass
class EdgeSet:
    """Explicit hypergraph: sorted colex ranks of the present k-sets."""

    n: int
    k: int
    ranks: np.ndarray
    seed: int | None = None

    def __post_init__(self) -> None:
        self.ranks = np.asarray(self.ranks, dtype=np.int64)
        if len(self.ranks) > 1 and not np.all(np.diff(self.ranks) > 0):
            self.ranks = np.unique(self.ranks)

    def __len__(self) -> int:
        return len(self.ranks)

    def __contains__(self, rank: int) -> bool:
        i = int(np.searchsorted(self.ranks, rank))
        return i < len(self.ranks) and self.ranks[i] == rank

    def vertex_arrays(self) -> np.ndarray:
        """Edges as an (m, k) array of ascending vertex labels."""
        return kernels.unrank_batch(self.ranks, self.k, self.n)

    def save(self, path: str | Path) -> None:
        """Write `n k seed` header plus one edge rank per line."""
        with open(path, "w") as fh:
            seed = -1 if self.seed is None else self.seed
            fh.write(f"{self.n} {self.k} {seed}\n")
            for r in self.ranks:
                fh.write(f"{int(r)}\n")

    @classmethod
    def load(cls, path: str | Path) -> "EdgeSet":
        with open(path) as fh:
            n, k, seed = (int(x) for x in fh.readline().split())
            ranks = np.loadtxt(fh, dtype=np.int64, ndmin=1)
        return cls(n, k, ranks, seed=None if seed < 0 else seed)


def sample_edge_set(params: Params, seed: int) -> EdgeSet:
    """Draw H^k(n, p) as an explicit edge set, without enumerating all k-sets.

    The edge count is Binomial(C(n, k), p); that many distinct ranks are
    then drawn uniformly, topping up after duplicate removal so the final
    set is exchangeable (a truncated np.unique would bias toward small
    ranks, since unique sorts).
    """
    total = binomial(params.n, params.k)
    rng = np.random.default_rng(seed)
    m = int(rng.binomial(total, params.p))
    if m >= total:
        return EdgeSet(params.n, params.k, np.arange(total, dtype=np.int64), seed=seed)
    chosen = np.empty(0, dtype=np.int64)
    while len(chosen) < m:
        extra = rng.integers(0, total, size=2 * (m - len(chosen)) + 16, dtype=np.int64)
        chosen = np.unique(np.concatenate([chosen, extra]))
        if len(chosen) > m:
            drop = rng.choice(len(chosen), size=len(chosen) - m, replace=False)
            chosen = np.delete(chosen, drop)
    return EdgeSet(params.n, params.k, chosen, seed=seed)
