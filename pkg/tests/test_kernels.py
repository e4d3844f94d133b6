import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from timexnorm import _kernels

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def _brute(ranks, w):
    n = len(ranks)
    total = sum(ranks)
    hits = 0
    for mask in range(1 << n):
        wp = sum(r for i, r in enumerate(ranks) if mask >> i & 1)
        hits += min(wp, total - wp) <= w
    return hits


ranks_st = st.lists(st.integers(1, 30), min_size=1, max_size=10)


@settings(max_examples=100, deadline=None)
@given(ranks_st, st.integers(0, 150))
def test_numpy_matches_brute(ranks, w):
    assert _kernels.count_extreme_numpy(ranks, w) == _brute(ranks, w)


@settings(max_examples=100, deadline=None)
@given(ranks_st, st.integers(0, 150))
def test_python_loop_matches_brute(ranks, w):
    assert _kernels.count_extreme_python(ranks, w) == _brute(ranks, w)


@needs_numba
@settings(max_examples=100, deadline=None)
@given(ranks_st, st.integers(0, 150))
def test_numba_matches_numpy(ranks, w):
    assert _kernels.count_extreme_numba(ranks, w) == _kernels.count_extreme_numpy(ranks, w)


@needs_numba
def test_numba_matches_numpy_at_n20():
    rng = np.random.default_rng(11)
    for _ in range(5):
        ranks = rng.integers(1, 41, size=20)
        w = int(rng.integers(0, ranks.sum() // 2))
        assert _kernels.count_extreme_numba(ranks, w) == _kernels.count_extreme_numpy(ranks, w)


def test_whole_space_when_w_is_large():
    ranks = [2, 4, 6, 8]
    assert _kernels.count_extreme(ranks, 100) == 16


def test_env_flag_forces_numpy():
    code = "from timexnorm import _kernels as k; print(k.DISABLED, k.USE_NUMBA)"
    env = dict(os.environ, TIMEXNORM_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True).stdout.split()
    assert out == ["True", "False"]


def test_dispatch_follows_flag(monkeypatch):
    calls = []
    monkeypatch.setattr(_kernels, "USE_NUMBA", False)
    monkeypatch.setattr(_kernels, "count_extreme_numpy", lambda r, w: calls.append("np") or 0)
    _kernels.count_extreme([2], 0)
    assert calls == ["np"]
