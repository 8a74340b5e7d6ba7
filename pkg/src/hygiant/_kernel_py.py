"""Pure-Python kernels: BFS exploration over j-sets and union-find census.

This is the fallback backend; `hygiant._kernel_c` implements the same
functions (bit-for-bit identical results) in Cython for the large runs.
Both backends share the exploration semantics:

  * statuses: 0 neutral, 1 active, 2 explored, 3 pending (next frontier),
    4 forbidden;
  * actives are processed in ascending rank; a j-set is marked explored at
    the start of its processing;
  * from an active j-set J, candidate k-sets E >= J are enumerated in
    ascending k-set rank (equivalently, colex order of E \\ J);
  * E is skipped without a query when it contains a forbidden j-set, when
    another j-subset of E is already explored (that j-set scanned E
    earlier, so E is not "previously unqueried"), or when the neutrality
    requirement fails (component mode: at least one neutral j-subset;
    tree mode: all non-parent j-subsets neutral);
  * a query draws a deterministic Bernoulli answer from a splitmix64 hash
    of (seed, k-set rank), so replays and shared-hypergraph explorations
    agree without storing the answer map.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from itertools import combinations

import numpy as np

BACKEND = "python"

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

STATUS_NEUTRAL = 0
STATUS_ACTIVE = 1
STATUS_EXPLORED = 2
STATUS_PENDING = 3
STATUS_FORBIDDEN = 4

STOP_EXHAUSTED = 0
STOP_SIZE = 1
STOP_BOUNDARY = 2
STOP_BUDGET = 3

MODE_COMPONENT = 0
MODE_TREE = 1


def splitmix_word(seed: int, index: int) -> int:
    """64-bit output of the splitmix64 stream `seed` at position `index`."""
    z = (seed + (index + 1) * GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64


def splitmix_words(seed: int, indices: np.ndarray) -> np.ndarray:
    """Vectorized :func:`splitmix_word` over an int64/uint64 index array."""
    z = np.uint64(seed & MASK64) + (indices.astype(np.uint64) + np.uint64(1)) * np.uint64(GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _comb_table(n: int, rmax: int) -> list[list[int]]:
    """table[v][r] = C(v, r) for 0 <= v <= n, 0 <= r <= rmax."""
    table = [[0] * (rmax + 1) for _ in range(n + 1)]
    for v in range(n + 1):
        table[v][0] = 1
        for r in range(1, rmax + 1):
            table[v][r] = math.comb(v, r)
    return table


def unrank_batch(ranks, r: int, n: int) -> np.ndarray:
    """Colex-unrank an array of subset ranks into an (m, r) vertex array."""
    ranks = np.asarray(ranks, dtype=np.int64)
    out = np.empty((len(ranks), r), dtype=np.int64)
    comb = math.comb
    for row, rank in enumerate(ranks):
        rem = int(rank)
        for i in range(r, 0, -1):
            lo, hi = i - 1, n
            while lo < hi - 1:
                mid = (lo + hi) // 2
                if comb(mid, i) <= rem:
                    lo = mid
                else:
                    hi = mid
            out[row, i - 1] = lo
            rem -= comb(lo, i)
    return out


def rank_batch(rows) -> np.ndarray:
    """Colex-rank each row (strictly increasing vertices) of a 2-D array."""
    rows = np.asarray(rows, dtype=np.int64)
    m, r = rows.shape
    out = np.zeros(m, dtype=np.int64)
    comb = math.comb
    for row in range(m):
        acc = 0
        for i in range(r):
            acc += comb(int(rows[row, i]), i + 1)
        out[row] = acc
    return out


def explore(
    n: int,
    k: int,
    j: int,
    root: int,
    mode: int,
    seed: int,
    threshold: int,
    presampled: np.ndarray | None,
    size_cap: int,
    boundary_cap: int,
    query_budget: int,
    forbidden: np.ndarray | None,
    track_parents: bool,
    record_queries: bool,
) -> dict:
    """Run BFS over j-sets from `root`. Caps of 0 mean "no cap".

    Returns a dict with generations (sorted rank arrays), optional parent /
    parent-edge arrays aligned with them, accepted edge ranks, query count
    t, positives, per-generation query/positive counts, the final status
    array, the stop reason code, and (optionally) the query log.
    """
    n_jsets = math.comb(n, j)
    table = _comb_table(n, k)
    status = np.zeros(n_jsets, dtype=np.uint8)
    if forbidden is not None:
        status[np.asarray(forbidden, dtype=np.int64)] = STATUS_FORBIDDEN
    if status[root] == STATUS_FORBIDDEN:
        raise ValueError("root j-set is forbidden")

    presampled_list = (
        None if presampled is None else np.asarray(presampled, dtype=np.int64)
    )

    combos_idx = list(combinations(range(k), j))
    litter_plus_1 = len(combos_idx)  # C(k, j)

    status[root] = STATUS_ACTIVE
    generations = [np.array([root], dtype=np.int64)]
    parents = [np.array([-1], dtype=np.int64)]
    parent_edges = [np.array([-1], dtype=np.int64)]
    edges: list[int] = []
    gen_queries = [0]
    gen_positives = [0]
    queries_log: list[tuple[int, bool]] | None = [] if record_queries else None

    t = 0
    positives = 0
    discovered = 1
    stop_reason = STOP_EXHAUSTED
    stopped = False

    frontier = [int(root)]
    while True:
        next_gen: list[int] = []
        next_parents: list[int] = []
        next_parent_edges: list[int] = []
        n_queries = 0
        n_positives = 0

        for J_rank in frontier:
            status[J_rank] = STATUS_EXPLORED
            J = _unrank_one(J_rank, j, n, table)
            compl = [v for v in range(n) if v not in J]
            m = n - j
            r = k - j
            # colex enumeration of r-subsets of compl (by index)
            idx = list(range(r))
            while True:
                E = sorted(J + [compl[i] for i in idx])
                E_rank = 0
                for pos in range(k):
                    E_rank += table[E[pos]][pos + 1]
                sub_ranks = []
                for sel in combos_idx:
                    sr = 0
                    for pos, ei in enumerate(sel):
                        sr += table[E[ei]][pos + 1]
                    sub_ranks.append(sr)

                ok = True
                neutral = []
                handled = False
                for sr in sub_ranks:
                    st = status[sr]
                    if st == STATUS_FORBIDDEN:
                        ok = False
                        break
                    if st == STATUS_NEUTRAL:
                        neutral.append(sr)
                    elif st == STATUS_EXPLORED and sr != J_rank:
                        handled = True
                if ok and not handled:
                    if mode == MODE_TREE:
                        ok = len(neutral) == litter_plus_1 - 1
                    else:
                        ok = len(neutral) > 0
                else:
                    ok = False

                if ok:
                    t += 1
                    n_queries += 1
                    if presampled_list is not None:
                        pos_idx = bisect_left(presampled_list, E_rank)
                        ans = (
                            pos_idx < len(presampled_list)
                            and presampled_list[pos_idx] == E_rank
                        )
                    else:
                        ans = splitmix_word(seed, E_rank) < threshold
                    if queries_log is not None:
                        queries_log.append((E_rank, bool(ans)))
                    if ans:
                        positives += 1
                        n_positives += 1
                        edges.append(E_rank)
                        for sr in neutral:
                            status[sr] = STATUS_PENDING
                            next_gen.append(sr)
                            next_parents.append(J_rank)
                            next_parent_edges.append(E_rank)
                        discovered += len(neutral)
                    if query_budget and t >= query_budget:
                        stop_reason = STOP_BUDGET
                        stopped = True
                        break

                # colex successor
                i = 0
                while i < r - 1 and idx[i] + 1 == idx[i + 1]:
                    i += 1
                if idx[i] + 1 >= m:
                    break
                idx[i] += 1
                for z in range(i):
                    idx[z] = z
            if stopped:
                break

        gen_queries.append(n_queries)
        gen_positives.append(n_positives)
        if next_gen:
            order = np.argsort(np.array(next_gen, dtype=np.int64), kind="stable")
            gen_arr = np.array(next_gen, dtype=np.int64)[order]
            generations.append(gen_arr)
            parents.append(np.array(next_parents, dtype=np.int64)[order])
            parent_edges.append(np.array(next_parent_edges, dtype=np.int64)[order])
            status[gen_arr] = STATUS_ACTIVE
            frontier = [int(x) for x in gen_arr]
        else:
            frontier = []

        if stopped:
            break
        if not frontier:
            stop_reason = STOP_EXHAUSTED
            break
        if size_cap and discovered >= size_cap:
            stop_reason = STOP_SIZE
            break
        if boundary_cap and len(frontier) >= boundary_cap:
            stop_reason = STOP_BOUNDARY
            break

    if not track_parents:
        parents = None
        parent_edges = None
    return {
        "generations": generations,
        "parents": parents,
        "parent_edges": parent_edges,
        "edges": np.array(edges, dtype=np.int64),
        "t": t,
        "positives": positives,
        "gen_queries": gen_queries[1:],
        "gen_positives": gen_positives[1:],
        "status": status,
        "stop_reason": stop_reason,
        "queries": queries_log,
    }


def _unrank_one(rank: int, r: int, n: int, table) -> list[int]:
    out = [0] * r
    rem = int(rank)
    for i in range(r, 0, -1):
        lo, hi = i - 1, n
        while lo < hi - 1:
            mid = (lo + hi) // 2
            if table[mid][i] <= rem:
                lo = mid
            else:
                hi = mid
        out[i - 1] = lo
        rem -= table[lo][i]
    return out


def census_kernel(n: int, k: int, j: int, edge_ranks) -> tuple[np.ndarray, np.ndarray]:
    """Union-find partition of all C(n, j) j-sets under the given edges.

    Returns (roots, comp_edges): per-j-set component root index, and the
    number of edges in each component (indexed by root, zero elsewhere).
    """
    n_jsets = math.comb(n, j)
    table = _comb_table(n, k)
    parent = list(range(n_jsets))
    size = [1] * n_jsets

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    combos_idx = list(combinations(range(k), j))
    edge_roots = []
    for e_rank in np.asarray(edge_ranks, dtype=np.int64):
        E = _unrank_one(int(e_rank), k, n, table)
        first = None
        for sel in combos_idx:
            sr = 0
            for pos, ei in enumerate(sel):
                sr += table[E[ei]][pos + 1]
            if first is None:
                first = sr
                continue
            ra, rb = find(first), find(sr)
            if ra != rb:
                if size[ra] < size[rb]:
                    ra, rb = rb, ra
                parent[rb] = ra
                size[ra] += size[rb]
            first = sr
        edge_roots.append(first)

    roots = np.fromiter((find(i) for i in range(n_jsets)), dtype=np.int64, count=n_jsets)
    comp_edges = np.zeros(n_jsets, dtype=np.int64)
    for er in edge_roots:
        comp_edges[roots[er]] += 1
    return roots, comp_edges
