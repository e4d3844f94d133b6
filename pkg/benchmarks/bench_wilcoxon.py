"""Time the two exact Wilcoxon null-distribution kernels against each other.

    python benchmarks/bench_wilcoxon.py [--repeat 5] [--max-n 25]

The numba kernel enumerates all 2^n sign vectors; the numpy kernel convolves
the rank distribution in O(n * sum(ranks)). Both must return the same count.
"""

import argparse
import time

import numpy as np

from timexnorm import _kernels


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--min-n", type=int, default=10)
    p.add_argument("--max-n", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = np.random.default_rng(args.seed)
    if _kernels.HAVE_NUMBA:
        _kernels.count_extreme_numba(np.array([2, 4]), 2)  # compile outside the timings
    print(f"{'n':>3} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for n in range(args.min_n, args.max_n + 1):
        ranks = 2 * np.arange(1, n + 1)  # doubled ranks, no ties
        w = int(rng.integers(0, ranks.sum() // 2))
        t_np, c_np = best_of(lambda: _kernels.count_extreme_numpy(ranks, w), args.repeat)
        if _kernels.HAVE_NUMBA:
            t_nb, c_nb = best_of(lambda: _kernels.count_extreme_numba(ranks, w), args.repeat)
            assert c_nb == c_np, (n, c_nb, c_np)
            print(f"{n:>3} {t_np:>10.6f} {t_nb:>10.6f} {t_np / t_nb:>8.2f}")
        else:
            print(f"{n:>3} {t_np:>10.6f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
