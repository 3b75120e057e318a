"""Suffix array and LCP array construction over small integer alphabets.

Suffixes are ordered by symbol code with the end of the text acting as an
implicit sentinel smaller than every symbol, so a proper prefix sorts before
its extensions. All positions are 0-based.
"""

import numba
import numpy as np


def suffix_array(text) -> np.ndarray:
    """Sort all suffixes of ``text`` by prefix doubling.

    O(N log N) sorting rounds, each round ordering by (rank[i], rank[i + h]).
    """
    s = np.asarray(text, dtype=np.int64)
    n = len(s)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    # initial ranks are dense symbol ranks
    _, rank = np.unique(s, return_inverse=True)
    rank = rank.astype(np.int64)
    h = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if h < n:
            second[: n - h] = rank[h:]
        key = rank * (n + 1) + (second + 1)
        sa = np.argsort(key, kind="stable")
        sorted_key = key[sa]
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.concatenate(([0], np.cumsum(sorted_key[1:] != sorted_key[:-1])))
        rank = new_rank
        if rank[sa[-1]] == n - 1:
            return sa
        h *= 2


@numba.njit(cache=True)
def _kasai(s, sa, rank):
    n = len(s)
    lcp = np.zeros(n, dtype=np.int32)
    k = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            k = 0
            continue
        j = sa[r - 1]
        while i + k < n and j + k < n and s[i + k] == s[j + k]:
            k += 1
        lcp[r] = k
        if k > 0:
            k -= 1
    return lcp


def inverse(sa: np.ndarray) -> np.ndarray:
    rank = np.empty(len(sa), dtype=np.int64)
    rank[sa] = np.arange(len(sa), dtype=np.int64)
    return rank


def lcp_array(text, sa: np.ndarray, rank: np.ndarray | None = None) -> np.ndarray:
    """``lcp[i]`` is the common prefix length of suffixes ``sa[i-1]`` and ``sa[i]``; ``lcp[0] = 0``."""
    s = np.ascontiguousarray(text, dtype=np.int64)
    sa = np.ascontiguousarray(sa, dtype=np.int64)
    if rank is None:
        rank = inverse(sa)
    return _kasai(s, sa, np.ascontiguousarray(rank, dtype=np.int64))
