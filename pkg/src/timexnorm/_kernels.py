"""Exact null-distribution kernel for the Wilcoxon signed-rank test.

Given integer (doubled) ranks r_1..r_n and an observed statistic w, count the
sign assignments s in {+,-}^n for which min(W+, W-) <= w, where W+ is the sum
of ranks with a + sign and W- = sum(r) - W+.

Both production kernels build the exact distribution of W+ by adding one rank
at a time (integer counts, no floating point) and then sum the extreme tail:

* ``count_extreme_numba``: the recurrence as scalar loops, updated in place and
  compiled with numba.
* ``count_extreme_numpy``: the same recurrence with one shifted-array add per rank.

``count_extreme_python`` walks all 2^n assignments in Gray-code order instead.
It shares no code with the other two and serves as a cross-check for small n.

Set ``TIMEXNORM_DISABLE_NUMBA=1`` to force the numpy path.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

DISABLED = os.environ.get("TIMEXNORM_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")
HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not DISABLED


def count_extreme_numpy(ranks, w_obs):
    ranks = np.asarray(ranks, dtype=np.int64)
    total = int(ranks.sum())
    dist = np.zeros(total + 1, dtype=np.int64)
    dist[0] = 1
    for r in ranks:
        shifted = np.zeros_like(dist)
        shifted[r:] = dist[:total + 1 - r]
        dist = dist + shifted
    w_plus = np.arange(total + 1)
    extreme = np.minimum(w_plus, total - w_plus) <= w_obs
    return int(dist[extreme].sum())


def _count_extreme_loop(ranks, w_obs):
    n = ranks.shape[0]
    total = 0
    for i in range(n):
        total += ranks[i]
    # start with every sign negative: W+ = 0
    w_plus = 0
    count = 1 if 0 <= w_obs else 0
    signs = np.zeros(n, dtype=np.uint8)
    for k in range(1, 1 << n):
        # bit flipped between Gray codes k-1 and k is the lowest set bit of k
        j = 0
        while not (k >> j) & 1:
            j += 1
        if signs[j]:
            signs[j] = 0
            w_plus -= ranks[j]
        else:
            signs[j] = 1
            w_plus += ranks[j]
        w_minus = total - w_plus
        if min(w_plus, w_minus) <= w_obs:
            count += 1
    return count


def _count_extreme_dp(ranks, w_obs):
    total = 0
    for i in range(ranks.shape[0]):
        total += ranks[i]
    dist = np.zeros(total + 1, dtype=np.int64)
    dist[0] = 1
    reach = 0
    for i in range(ranks.shape[0]):
        r = ranks[i]
        reach += r
        # descending, so each rank is added at most once
        for w in range(reach, r - 1, -1):
            dist[w] += dist[w - r]
    count = 0
    for w in range(total + 1):
        if min(w, total - w) <= w_obs:
            count += dist[w]
    return count


if HAVE_NUMBA:
    _count_extreme_jit = numba.njit(cache=True)(_count_extreme_dp)


def count_extreme_numba(ranks, w_obs):
    if not HAVE_NUMBA:  # pragma: no cover
        raise RuntimeError("numba is not installed")
    return int(_count_extreme_jit(np.asarray(ranks, dtype=np.int64), np.int64(w_obs)))


def count_extreme_python(ranks, w_obs):
    """Uncompiled Gray-code walk; only practical for small n."""
    return int(_count_extreme_loop(np.asarray(ranks, dtype=np.int64), int(w_obs)))


def count_extreme(ranks, w_obs):
    if USE_NUMBA:
        return count_extreme_numba(ranks, w_obs)
    return count_extreme_numpy(ranks, w_obs)
