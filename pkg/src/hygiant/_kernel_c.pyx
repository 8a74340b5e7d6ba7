# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: BFS exploration over j-sets and union-find census.

Mirror of `hygiant._kernel_py` (same function signatures, bit-for-bit
identical results); see that module for the exploration semantics.
"""

import math

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t, uint64_t

cnp.import_array()

BACKEND = "c"

MASK64 = (1 << 64) - 1

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

cdef uint64_t GOLDEN_C = 0x9E3779B97F4A7C15u


cdef inline uint64_t _splitmix(uint64_t seed, uint64_t index) nogil:
    cdef uint64_t z = seed + (index + 1) * GOLDEN_C
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9u
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBu
    return z ^ (z >> 31)


def splitmix_word(seed, index):
    """64-bit output of the splitmix64 stream `seed` at position `index`."""
    return int(_splitmix(seed & MASK64, index & MASK64))


def splitmix_words(seed, indices):
    """Vectorized :func:`splitmix_word` over an int64/uint64 index array."""
    z = np.uint64(seed & MASK64) + (indices.astype(np.uint64) + np.uint64(1)) * np.uint64(GOLDEN_C)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


cdef cnp.ndarray _build_comb_table(int n, int rmax):
    # table[v, r] = C(v, r); caller must keep C(n, rmax) < 2**63
    table = np.zeros((n + 1, rmax + 1), dtype=np.int64)
    cdef int64_t[:, :] tv = table
    cdef int v, r
    for v in range(n + 1):
        tv[v, 0] = 1
        for r in range(1, rmax + 1):
            if r > v:
                tv[v, r] = 0
            elif r == v:
                tv[v, r] = 1
            else:
                tv[v, r] = tv[v - 1, r - 1] + tv[v - 1, r]
    return table


cdef inline void _unrank_into(int64_t rank, int r, int n,
                              int64_t[:, :] table, int64_t* out) nogil:
    cdef int64_t rem = rank
    cdef int i, lo, hi, mid
    for i in range(r, 0, -1):
        lo = i - 1
        hi = n
        while lo < hi - 1:
            mid = (lo + hi) >> 1
            if table[mid, i] <= rem:
                lo = mid
            else:
                hi = mid
        out[i - 1] = lo
        rem -= table[lo, i]


def unrank_batch(ranks, int r, int n):
    """Colex-unrank an array of subset ranks into an (m, r) vertex array."""
    cdef cnp.ndarray ranks_arr = np.ascontiguousarray(ranks, dtype=np.int64)
    cdef Py_ssize_t m = ranks_arr.shape[0]
    out = np.empty((m, r), dtype=np.int64)
    cdef int64_t[:, :] ov = out
    cdef int64_t[:] rv = ranks_arr
    table = _build_comb_table(n, r)
    cdef int64_t[:, :] tv = table
    cdef Py_ssize_t row
    cdef int64_t buf[64]
    cdef int i
    for row in range(m):
        _unrank_into(rv[row], r, n, tv, buf)
        for i in range(r):
            ov[row, i] = buf[i]
    return out


def rank_batch(rows):
    """Colex-rank each row (strictly increasing vertices) of a 2-D array."""
    cdef cnp.ndarray rows_arr = np.ascontiguousarray(rows, dtype=np.int64)
    cdef Py_ssize_t m = rows_arr.shape[0]
    cdef int r = rows_arr.shape[1]
    cdef int n = int(np.max(rows_arr)) + 1 if m else r
    out = np.zeros(m, dtype=np.int64)
    cdef int64_t[:] ov = out
    cdef int64_t[:, :] xv = rows_arr
    table = _build_comb_table(n, r)
    cdef int64_t[:, :] tv = table
    cdef Py_ssize_t row
    cdef int i
    cdef int64_t acc
    for row in range(m):
        acc = 0
        for i in range(r):
            acc += tv[xv[row, i], i + 1]
        ov[row] = acc
    return out


cdef inline bint _presampled_hit(int64_t[:] arr, int64_t key) nogil:
    cdef Py_ssize_t lo = 0, hi = arr.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo < arr.shape[0] and arr[lo] == key


cdef inline bint _bit(uint64_t* bits, int64_t i) nogil:
    return (bits[i >> 6] >> (i & 63)) & 1u


cdef inline void _bit_set(uint64_t* bits, int64_t i) nogil:
    bits[i >> 6] |= (<uint64_t> 1u) << (i & 63)


cdef inline void _bit_clear(uint64_t* bits, int64_t i) nogil:
    bits[i >> 6] &= ~((<uint64_t> 1u) << (i & 63))


def explore(int n, int k, int j, int64_t root, int mode, seed, threshold,
            presampled, int64_t size_cap, int64_t boundary_cap,
            int64_t query_budget, forbidden, bint track_parents,
            bint record_queries):
    """Run BFS over j-sets from `root`. Caps of 0 mean "no cap".

    The hot loop never touches the per-j-set status byte array; it reads
    three bit-packed views (neutral, explored, forbidden) that fit in
    cache, and the byte array is updated only on the rare state changes.
    """
    cdef int64_t n_jsets = math.comb(n, j)
    table = _build_comb_table(n, k)
    cdef int64_t[:, :] tv = table
    status = np.zeros(n_jsets, dtype=np.uint8)
    cdef uint8_t[:] sv = status

    cdef int64_t n_words = (n_jsets + 63) >> 6
    neut_np = np.full(n_words, np.uint64(0xFFFFFFFFFFFFFFFF), dtype=np.uint64)
    expl_np = np.zeros(n_words, dtype=np.uint64)
    forb_np = np.zeros(n_words, dtype=np.uint64)
    cdef uint64_t[:] neut_v = neut_np
    cdef uint64_t[:] expl_v = expl_np
    cdef uint64_t[:] forb_v = forb_np
    cdef uint64_t* neut = &neut_v[0]
    cdef uint64_t* expl = &expl_v[0]
    cdef uint64_t* forb = &forb_v[0]

    cdef bint has_forbidden = False
    cdef cnp.ndarray forb_arr
    cdef int64_t[:] forb_view
    cdef Py_ssize_t fj
    if forbidden is not None:
        forb_arr = np.ascontiguousarray(forbidden, dtype=np.int64)
        status[forb_arr] = STATUS_FORBIDDEN
        forb_view = forb_arr
        for fj in range(forb_view.shape[0]):
            _bit_set(forb, forb_view[fj])
            _bit_clear(neut, forb_view[fj])
        has_forbidden = forb_view.shape[0] > 0
    if sv[root] == STATUS_FORBIDDEN:
        raise ValueError("root j-set is forbidden")

    cdef bint has_presampled = presampled is not None
    cdef cnp.ndarray pres_arr
    cdef int64_t[:] pres_view
    if has_presampled:
        pres_arr = np.ascontiguousarray(presampled, dtype=np.int64)
        pres_view = pres_arr
    else:
        pres_view = np.empty(0, dtype=np.int64)

    cdef uint64_t seed_u = seed & MASK64
    cdef bint always_true = threshold > MASK64
    cdef uint64_t thr_u = threshold & MASK64

    # index selections for the C(k, j) j-subsets of a k-set, in one flat array
    from itertools import combinations
    combos_py = list(combinations(range(k), j))
    cdef int n_sub = len(combos_py)
    combos = np.array(combos_py, dtype=np.int64).reshape(n_sub, j)
    cdef int64_t[:, :] cv = combos

    cdef int m = n - j
    cdef int r = k - j
    cdef int64_t J_buf[64]
    cdef int64_t E_buf[64]
    cdef int64_t neutral_buf[4096]
    cdef int64_t pre_buf[65]
    cdef int64_t drop_buf[4096]
    cdef int idx_buf[64]
    cdef cnp.ndarray compl_np = np.empty(n, dtype=np.int64)
    cdef int64_t[:] compl = compl_np

    sv[root] = STATUS_ACTIVE
    _bit_clear(neut, root)
    generations = [np.array([root], dtype=np.int64)]
    parents = [np.array([-1], dtype=np.int64)]
    parent_edges = [np.array([-1], dtype=np.int64)]
    edges = []
    gen_queries = []
    gen_positives = []
    queries_log = [] if record_queries else None

    cdef int64_t t = 0, positives = 0, discovered = 1
    cdef int stop_reason = STOP_EXHAUSTED
    cdef bint stopped = False, ok, handled, ans
    cdef bint rec = record_queries
    cdef int64_t J_rank, E_rank, sr
    cdef int i, z, pos, s, n_neutral, d, q, v
    cdef int64_t n_queries, n_positives
    cdef Py_ssize_t fi, halt
    cdef cnp.ndarray frontier = np.array([root], dtype=np.int64)
    cdef int64_t[:] fv = frontier

    while True:
        next_gen = []
        next_parents = []
        next_parent_edges = []
        n_queries = 0
        n_positives = 0

        for fi in range(fv.shape[0]):
            J_rank = fv[fi]
            sv[J_rank] = STATUS_EXPLORED
            _bit_set(expl, J_rank)
            _unrank_into(J_rank, j, n, tv, J_buf)

            if r == 1:
                # Fast path: E = J + one vertex v.  Precompute the rank
                # contribution of the J vertices for every insertion
                # position of v, both for E itself (pre_buf) and for the
                # j-subsets of E that contain v (drop_buf: J minus one
                # vertex, plus v at position q).
                for q in range(j + 1):
                    sr = 0
                    for i in range(j):
                        sr += tv[J_buf[i], i + 1 + (1 if i >= q else 0)]
                    pre_buf[q] = sr
                for d in range(j):
                    for q in range(j):
                        sr = 0
                        z = 0
                        for i in range(j):
                            if i == d:
                                continue
                            sr += tv[J_buf[i], z + 1 + (1 if z >= q else 0)]
                            z += 1
                        drop_buf[d * j + q] = sr
                pos = 0
                for v in range(n):
                    if pos < j and J_buf[pos] == v:
                        pos += 1
                        continue
                    ok = True
                    handled = False
                    n_neutral = 0
                    for d in range(j):
                        q = pos - 1 if d < pos else pos
                        sr = drop_buf[d * j + q] + tv[v, q + 1]
                        if has_forbidden and _bit(forb, sr):
                            ok = False
                            break
                        if _bit(neut, sr):
                            neutral_buf[n_neutral] = sr
                            n_neutral += 1
                        elif _bit(expl, sr):
                            handled = True
                    if ok and not handled:
                        if mode == MODE_TREE:
                            ok = n_neutral == j
                        else:
                            ok = n_neutral > 0
                    else:
                        ok = False

                    if ok:
                        E_rank = pre_buf[pos] + tv[v, pos + 1]
                        t += 1
                        n_queries += 1
                        if has_presampled:
                            ans = _presampled_hit(pres_view, E_rank)
                        else:
                            ans = always_true or _splitmix(seed_u, <uint64_t> E_rank) < thr_u
                        if rec:
                            queries_log.append((int(E_rank), bool(ans)))
                        if ans:
                            positives += 1
                            n_positives += 1
                            edges.append(int(E_rank))
                            for s in range(n_neutral):
                                sr = neutral_buf[s]
                                sv[sr] = STATUS_PENDING
                                _bit_clear(neut, sr)
                                next_gen.append(int(sr))
                                next_parents.append(int(J_rank))
                                next_parent_edges.append(int(E_rank))
                            discovered += n_neutral
                        if query_budget and t >= query_budget:
                            stop_reason = STOP_BUDGET
                            stopped = True
                            break
                if stopped:
                    break
                continue

            # complement of J in [n], ascending
            z = 0
            pos = 0
            for i in range(n):
                if pos < j and J_buf[pos] == i:
                    pos += 1
                else:
                    compl[z] = i
                    z += 1
            for i in range(r):
                idx_buf[i] = i
            while True:
                # E = J union mapped R, merged ascending
                pos = 0
                z = 0
                for i in range(k):
                    if z < r and (pos >= j or compl[idx_buf[z]] < J_buf[pos]):
                        E_buf[i] = compl[idx_buf[z]]
                        z += 1
                    else:
                        E_buf[i] = J_buf[pos]
                        pos += 1
                E_rank = 0
                for i in range(k):
                    E_rank += tv[E_buf[i], i + 1]

                ok = True
                handled = False
                n_neutral = 0
                for s in range(n_sub):
                    sr = 0
                    for pos in range(j):
                        sr += tv[E_buf[cv[s, pos]], pos + 1]
                    if has_forbidden and _bit(forb, sr):
                        ok = False
                        break
                    if _bit(neut, sr):
                        neutral_buf[n_neutral] = sr
                        n_neutral += 1
                    elif _bit(expl, sr) and sr != J_rank:
                        handled = True
                if ok and not handled:
                    if mode == MODE_TREE:
                        ok = n_neutral == n_sub - 1
                    else:
                        ok = n_neutral > 0
                else:
                    ok = False

                if ok:
                    t += 1
                    n_queries += 1
                    if has_presampled:
                        ans = _presampled_hit(pres_view, E_rank)
                    else:
                        ans = always_true or _splitmix(seed_u, <uint64_t> E_rank) < thr_u
                    if rec:
                        queries_log.append((int(E_rank), bool(ans)))
                    if ans:
                        positives += 1
                        n_positives += 1
                        edges.append(int(E_rank))
                        for s in range(n_neutral):
                            sr = neutral_buf[s]
                            sv[sr] = STATUS_PENDING
                            _bit_clear(neut, sr)
                            next_gen.append(int(sr))
                            next_parents.append(int(J_rank))
                            next_parent_edges.append(int(E_rank))
                        discovered += n_neutral
                    if query_budget and t >= query_budget:
                        stop_reason = STOP_BUDGET
                        stopped = True
                        break

                # colex successor of idx_buf among r-subsets of [m]
                i = 0
                while i < r - 1 and idx_buf[i] + 1 == idx_buf[i + 1]:
                    i += 1
                if idx_buf[i] + 1 >= m:
                    break
                idx_buf[i] += 1
                for z in range(i):
                    idx_buf[z] = z
            if stopped:
                break

        gen_queries.append(int(n_queries))
        gen_positives.append(int(n_positives))
        if next_gen:
            gen_arr = np.array(next_gen, dtype=np.int64)
            order = np.argsort(gen_arr, kind="stable")
            gen_arr = gen_arr[order]
            generations.append(gen_arr)
            parents.append(np.array(next_parents, dtype=np.int64)[order])
            parent_edges.append(np.array(next_parent_edges, dtype=np.int64)[order])
            status[gen_arr] = STATUS_ACTIVE
            frontier = gen_arr
            fv = frontier
        else:
            frontier = np.empty(0, dtype=np.int64)
            fv = frontier

        if stopped:
            break
        if fv.shape[0] == 0:
            stop_reason = STOP_EXHAUSTED
            break
        if size_cap and discovered >= size_cap:
            stop_reason = STOP_SIZE
            break
        if boundary_cap and fv.shape[0] >= boundary_cap:
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
        "t": int(t),
        "positives": int(positives),
        "gen_queries": gen_queries,
        "gen_positives": gen_positives,
        "status": status,
        "stop_reason": stop_reason,
        "queries": queries_log,
    }


cdef inline int64_t _find(int64_t[:] parent, int64_t x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def census_kernel(int n, int k, int j, edge_ranks):
    """Union-find partition of all C(n, j) j-sets under the given edges.

    Returns (roots, comp_edges): per-j-set component root index, and the
    number of edges in each component (indexed by root, zero elsewhere).
    """
    cdef int64_t n_jsets = math.comb(n, j)
    table = _build_comb_table(n, k)
    cdef int64_t[:, :] tv = table
    cdef cnp.ndarray edges_arr = np.ascontiguousarray(edge_ranks, dtype=np.int64)
    cdef int64_t[:] ev = edges_arr
    parent_np = np.arange(n_jsets, dtype=np.int64)
    size_np = np.ones(n_jsets, dtype=np.int64)
    cdef int64_t[:] parent = parent_np
    cdef int64_t[:] size = size_np

    from itertools import combinations
    combos_py = list(combinations(range(k), j))
    cdef int n_sub = len(combos_py)
    combos = np.array(combos_py, dtype=np.int64).reshape(n_sub, j)
    cdef int64_t[:, :] cv = combos

    cdef int64_t E_buf[64]
    edge_roots_np = np.empty(ev.shape[0], dtype=np.int64)
    cdef int64_t[:] edge_roots = edge_roots_np
    cdef Py_ssize_t e
    cdef int s, pos
    cdef int64_t sr, first, ra, rb
    for e in range(ev.shape[0]):
        _unrank_into(ev[e], k, n, tv, E_buf)
        first = -1
        for s in range(n_sub):
            sr = 0
            for pos in range(j):
                sr += tv[E_buf[cv[s, pos]], pos + 1]
            if first < 0:
                first = sr
                continue
            ra = _find(parent, first)
            rb = _find(parent, sr)
            if ra != rb:
                if size[ra] < size[rb]:
                    ra, rb = rb, ra
                parent[rb] = ra
                size[ra] += size[rb]
            first = sr
        edge_roots[e] = first

    roots_np = np.empty(n_jsets, dtype=np.int64)
    cdef int64_t[:] roots = roots_np
    cdef int64_t i2
    for i2 in range(n_jsets):
        roots[i2] = _find(parent, i2)
    comp_edges_np = np.zeros(n_jsets, dtype=np.int64)
    cdef int64_t[:] comp_edges = comp_edges_np
    for e in range(ev.shape[0]):
        comp_edges[roots[edge_roots[e]]] += 1
    return roots_np, comp_edges_np
