"""Range-minimum queries with a sparse table over fixed-size block minima.

The sparse table is built over per-block minima (block size 32), which keeps
memory at O((N / 32) log N) words; queries scan at most two partial blocks
and combine two table entries. Besides plain range minima the kernels answer
"nearest position left/right of r whose value is below a threshold", which
is what suffix-interval expansion over an LCP array needs.
"""

import numba
import numpy as np

BLOCK = 32


@numba.njit(cache=True)
def _build(values):
    n = len(values)
    nb = (n + BLOCK - 1) // BLOCK
    levels = 1
    while (1 << levels) <= nb:
        levels += 1
    table = np.empty((levels, max(nb, 1)), dtype=values.dtype)
    for b in range(nb):
        lo = b * BLOCK
        hi = min(n, lo + BLOCK)
        m = values[lo]
        for i in range(lo + 1, hi):
            if values[i] < m:
                m = values[i]
        table[0, b] = m
    for lv in range(1, levels):
        half = 1 << (lv - 1)
        for b in range(nb - (1 << lv) + 1):
            a = table[lv - 1, b]
            c = table[lv - 1, b + half]
            table[lv, b] = a if a < c else c
    return table


@numba.njit(cache=True)
def _block_range_min(table, b0, b1):
    span = b1 - b0 + 1
    lv = 0
    while (1 << (lv + 1)) <= span:
        lv += 1
    a = table[lv, b0]
    c = table[lv, b1 - (1 << lv) + 1]
    return a if a < c else c


@numba.njit(cache=True)
def range_min(values, table, lo, hi):
    """Minimum of ``values[lo..hi]`` (inclusive, 0-based, lo <= hi)."""
    blo = lo // BLOCK
    bhi = hi // BLOCK
    if blo == bhi or bhi - blo == 1:
        m = values[lo]
        for i in range(lo + 1, hi + 1):
            if values[i] < m:
                m = values[i]
        return m
    m = values[lo]
    for i in range(lo + 1, (blo + 1) * BLOCK):
        if values[i] < m:
            m = values[i]
    for i in range(bhi * BLOCK, hi + 1):
        if values[i] < m:
            m = values[i]
    inner = _block_range_min(table, blo + 1, bhi - 1)
    return inner if inner < m else m


@numba.njit(cache=True)
def prev_less(values, table, r, thr):
    """Largest ``i <= r`` with ``values[i] < thr``, or -1."""
    start = (r // BLOCK) * BLOCK
    for i in range(r, start - 1, -1):
        if values[i] < thr:
            return i
    e = r // BLOCK - 1
    if e < 0:
        return -1
    lv = table.shape[0] - 1
    while lv >= 0:
        w = 1 << lv
        if e - w + 1 >= 0 and table[lv, e - w + 1] >= thr:
            e -= w
        lv -= 1
    if e < 0:
        return -1
    for i in range(min(len(values), (e + 1) * BLOCK) - 1, e * BLOCK - 1, -1):
        if values[i] < thr:
            return i
    return -1


@numba.njit(cache=True)
def next_less(values, table, r, thr):
    """Smallest ``i >= r`` with ``values[i] < thr``, or ``len(values)``."""
    n = len(values)
    end = min(n, (r // BLOCK + 1) * BLOCK)
    for i in range(r, end):
        if values[i] < thr:
            return i
    s = r // BLOCK + 1
    nb = (n + BLOCK - 1) // BLOCK
    if s >= nb:
        return n
    lv = table.shape[0] - 1
    while lv >= 0:
        w = 1 << lv
        if s + w <= nb and table[lv, s] >= thr:
            s += w
        lv -= 1
    if s >= nb:
        return n
    for i in range(s * BLOCK, min(n, (s + 1) * BLOCK)):
        if values[i] < thr:
            return i
    return n


class RangeMin:
    """Static range-minimum structure over an integer array."""

    def __init__(self, values):
        self.values = np.ascontiguousarray(values, dtype=np.int64)
        if len(self.values) == 0:
            raise ValueError("empty array")
        self.table = _build(self.values)

    def __len__(self):
        return len(self.values)

    def query(self, lo: int, hi: int) -> int:
        """Minimum over the inclusive 0-based range ``[lo, hi]``."""
        if not 0 <= lo <= hi < len(self.values):
            raise IndexError(f"bad range [{lo}, {hi}]")
        return int(range_min(self.values, self.table, lo, hi))

    def prev_less(self, r: int, thr: int) -> int:
        return int(prev_less(self.values, self.table, r, thr))

    def next_less(self, r: int, thr: int) -> int:
        return int(next_less(self.values, self.table, r, thr))
