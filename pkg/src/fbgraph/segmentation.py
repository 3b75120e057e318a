"""Optimal segmentation of an MSA into repeat-free blocks.

Columns are 1-based throughout. Per-column arrays (``v``, ``s``, ``x``) have
length ``n + 1`` and are indexed by column directly; slot 0 stands for the
empty prefix. ``UNDEFINED`` marks a missing valid range or predecessor and
``INF`` an infeasible score.

A segment ``[a..b]`` is valid when, for every row, the row's substring over
``[a..b]`` occurs in the rows only at column ``a``. Validity is closed under
extending a segment to the left or right, so for each ending column ``j``
the valid starts form a prefix ``1..v[j]+1`` and ``v`` is non-decreasing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numba
import numpy as np

from .errors import NoValidSegmentation, OutOfBounds, TooLarge
from .msa import MSA
from .text_index import TextIndex, _all_at_column, _expand, build_text_index

UNDEFINED = -1
INF = 1 << 62
BRUTE_FORCE_MAX_N = 20


@dataclass(frozen=True, eq=False)
class ScoreTable:
    s: np.ndarray
    x: np.ndarray

    @property
    def n(self) -> int:
        return len(self.s) - 1

    @property
    def score(self) -> int:
        return int(self.s[-1])

    def __eq__(self, other):
        if not isinstance(other, ScoreTable):
            return NotImplemented
        return np.array_equal(self.s, other.s) and np.array_equal(self.x, other.x)


@dataclass(frozen=True)
class Segmentation:
    blocks: tuple[tuple[int, int], ...]

    @property
    def widths(self) -> list[int]:
        return [b - a + 1 for a, b in self.blocks]

    @property
    def n(self) -> int:
        return self.blocks[-1][1]

    @property
    def max_width(self) -> int:
        return max(self.widths)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def covers(self, n: int) -> bool:
        if not self.blocks or self.blocks[0][0] != 1 or self.blocks[-1][1] != n:
            return False
        return all(
            a <= b and (i == 0 or a == self.blocks[i - 1][1] + 1)
            for i, (a, b) in enumerate(self.blocks)
        )


def _kernel_args(idx: TextIndex):
    return (
        idx.rank_of,
        idx.lcp_rmq.values,
        idx.lcp_rmq.table,
        idx.col_min_rmq.values,
        idx.col_min_rmq.table,
        idx.col_max_rmq.values,
        idx.col_max_rmq.table,
    )


@numba.njit(cache=True)
def _valid(m, n, rank_of, lcp, tlcp, cmin, tmin, cmax, tmax, a, b):
    length = b - a + 1
    for t in range(m):
        r = rank_of[t * (n + 1) + a - 1]
        lo, hi = _expand(lcp, tlcp, r, length)
        if not _all_at_column(cmin, tmin, cmax, tmax, lo, hi, a):
            return False
    return True


@numba.njit(cache=True)
def _sweep(m, n, rank_of, lcp, tlcp, cmin, tmin, cmax, tmax):
    v = np.full(n + 1, -1, dtype=np.int64)
    p = 0
    defined = False
    for j in range(1, n + 1):
        if not defined:
            if not _valid(m, n, rank_of, lcp, tlcp, cmin, tmin, cmax, tmax, 1, j):
                continue
            defined = True
        # [p+1..j] is valid here; move p right while the shorter segment stays valid
        while p < j - 1 and _valid(m, n, rank_of, lcp, tlcp, cmin, tmin, cmax, tmax, p + 2, j):
            p += 1
        v[j] = p
    return v


def is_valid_segment(idx: TextIndex, a: int, b: int) -> bool:
    """True iff every row's substring over ``[a..b]`` occurs only at column ``a``."""
    m, n = idx.msa.m, idx.msa.n
    if not 1 <= a <= b <= n:
        raise OutOfBounds(f"segment [{a}..{b}] outside 1..{n}")
    return bool(_valid(m, n, *_kernel_args(idx), a, b))


def compute_valid_ranges(idx: TextIndex) -> np.ndarray:
    """``v[j]`` = largest ``j'`` with ``[j'+1..j]`` valid, ``UNDEFINED`` if none.

    Two-pointer sweep: at most ``2n`` validity tests of ``m`` interval lookups each.
    """
    return _sweep(idx.msa.m, idx.msa.n, *_kernel_args(idx))


def compute_scores_reference(v: np.ndarray) -> ScoreTable:
    """Direct quadratic evaluation of the min-max-width recurrence.

    ``s[j] = min over j' in 0..v[j] of max(j - j', s[j'])`` with ``s[0] = 0``;
    ``x[j]`` is the largest minimizer.
    """
    v = np.asarray(v, dtype=np.int64)
    n = len(v) - 1
    s = np.full(n + 1, INF, dtype=np.int64)
    x = np.full(n + 1, UNDEFINED, dtype=np.int64)
    s[0] = 0
    for j in range(1, n + 1):
        if v[j] == UNDEFINED:
            continue
        cand = np.arange(v[j] + 1)
        cost = np.maximum(j - cand, s[: v[j] + 1])
        best = cost.min()
        if best >= INF:
            continue
        s[j] = best
        x[j] = int(np.flatnonzero(cost == best)[-1])
    return ScoreTable(s, x)


def compute_scores(v: np.ndarray) -> ScoreTable:
    """Linear-time evaluation of the same recurrence as :func:`compute_scores_reference`.

    The optimal predecessor ``x[j]`` never moves left as ``j`` grows, so one
    pointer sweeps the columns. A candidate ``c`` is the largest minimizer of
    ``[c..v[j]]`` iff ``max(j - c, s[c])`` is strictly below ``min(s[c+1..v[j]])``.
    That window minimum comes from a monotone deque because both window ends
    only advance.
    """
    v = np.asarray(v, dtype=np.int64)
    n = len(v) - 1
    s = [INF] * (n + 1)
    x = [UNDEFINED] * (n + 1)
    s[0] = 0
    window: deque[int] = deque()  # indices with increasing s, covering (c, right]
    right = 0
    c = 0
    for j in range(1, n + 1):
        vj = int(v[j])
        if vj == UNDEFINED:
            continue
        while right < vj:
            right += 1
            sr = s[right]
            while window and s[window[-1]] >= sr:
                window.pop()
            window.append(right)
        while window and window[0] <= c:
            window.popleft()
        while c < vj:
            k = max(j - c, s[c])
            if k < (s[window[0]] if window else INF):
                break
            c += 1
            while window and window[0] <= c:
                window.popleft()
        k = max(j - c, s[c])
        if k < INF:
            s[j] = k
            x[j] = c
    return ScoreTable(np.array(s, dtype=np.int64), np.array(x, dtype=np.int64))


def traceback(table: ScoreTable) -> Segmentation:
    n = table.n
    if n < 1 or table.s[n] >= INF:
        raise NoValidSegmentation("no valid segmentation covers the alignment")
    blocks = []
    j = n
    while j > 0:
        p = int(table.x[j])
        blocks.append((p + 1, j))
        j = p
    return Segmentation(tuple(reversed(blocks)))


def segment(msa: MSA, idx: TextIndex | None = None) -> tuple[Segmentation, ScoreTable, np.ndarray]:
    """Full segmentation pipeline: valid ranges, scores, traceback."""
    if idx is None:
        idx = build_text_index(msa)
    v = compute_valid_ranges(idx)
    table = compute_scores(v)
    return traceback(table), table, v


def validity_matrix(idx: TextIndex) -> np.ndarray:
    """``ok[a, b]`` for all ``1 <= a <= b <= n`` (other entries False)."""
    n = idx.msa.n
    ok = np.zeros((n + 2, n + 1), dtype=bool)
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            ok[a, b] = is_valid_segment(idx, a, b)
    return ok


def brute_force_optimal(msa: MSA, idx: TextIndex | None = None) -> int:
    """Exhaustive minimum over all ``2^(n-1)`` segmentations of the max block width.

    Returns ``INF`` when no segmentation has only valid blocks.
    """
    n = msa.n
    if n > BRUTE_FORCE_MAX_N:
        raise TooLarge(f"n={n} exceeds the brute-force limit {BRUTE_FORCE_MAX_N}")
    if idx is None:
        idx = build_text_index(msa)
    ok = validity_matrix(idx)
    masks = np.arange(1 << (n - 1), dtype=np.int64)
    start = np.ones(len(masks), dtype=np.int64)
    good = np.ones(len(masks), dtype=bool)
    width = np.zeros(len(masks), dtype=np.int64)
    for c in range(1, n + 1):
        # bit c-1 set means a block boundary after column c
        cut = np.ones(len(masks), dtype=bool) if c == n else ((masks >> (c - 1)) & 1).astype(bool)
        good[cut] &= ok[start[cut], c]
        width[cut] = np.maximum(width[cut], c - start[cut] + 1)
        start[cut] = c + 1
    if not good.any():
        return INF
    return int(width[good].min())
