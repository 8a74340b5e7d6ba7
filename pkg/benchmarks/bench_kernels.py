"""Compare the compiled and pure-Python kernel backends.

Run:  python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from hygiant import _kernel_py
from hygiant.combin import Params, binomial
from hygiant.sampling import bernoulli_threshold

try:
    from hygiant import _kernel_c
except ImportError:
    _kernel_c = None


def time_call(fn, *args, repeat: int = 3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_explore(backend, n, k, j, seed):
    params = Params.from_eps(n, k, j, 0.2)
    thr = bernoulli_threshold(params.p)
    return backend.explore(n, k, j, 0, 0, seed, thr, None, 0, 0, 0, None, False, False)


def bench_census(backend, n, k, j, seed):
    rng = np.random.default_rng(seed)
    total = binomial(n, k)
    m = total // 50
    ranks = np.unique(rng.integers(0, total, size=m, dtype=np.int64))
    return backend.census_kernel(n, k, j, ranks)


def main() -> None:
    backends = [("python", _kernel_py)]
    if _kernel_c is not None:
        backends.append(("c", _kernel_c))

    print(f"{'task':<28}{'backend':<10}{'best (s)':>10}")
    baselines: dict[str, float] = {}
    for task, fn, args in [
        ("explore n=120 k=3 j=2", bench_explore, (120, 3, 2, 11)),
        ("explore n=60 k=4 j=2", bench_explore, (60, 4, 2, 11)),
        ("census n=40 k=3 j=2", bench_census, (40, 3, 2, 11)),
        ("unrank 2e5 ranks", None, None),
    ]:
        if task.startswith("unrank"):
            ranks = np.arange(200_000, dtype=np.int64)
            for name, backend in backends:
                t, _ = time_call(backend.unrank_batch, ranks, 3, 300)
                _report(task, name, t, baselines)
            continue
        for name, backend in backends:
            t, _ = time_call(fn, backend, *args)
            _report(task, name, t, baselines)

    # cross-check: identical outputs on the first workload
    ra = bench_explore(_kernel_py, 60, 3, 2, 11)
    if _kernel_c is not None:
        rb = bench_explore(_kernel_c, 60, 3, 2, 11)
        same = ra["t"] == rb["t"] and all(
            np.array_equal(a, b) for a, b in zip(ra["generations"], rb["generations"])
        )
        print(f"\nbackends agree on shared workload: {same}")


def _report(task: str, name: str, t: float, baselines: dict) -> None:
    line = f"{task:<28}{name:<10}{t:>10.4f}"
    if name == "python":
        baselines[task] = t
    elif task in baselines and t > 0:
        line += f"   ({baselines[task] / t:.0f}x speedup)"
    print(line)


if __name__ == "__main__":
    main()
