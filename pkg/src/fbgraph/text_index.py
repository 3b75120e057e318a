"""Generalized suffix array over the concatenated rows of an MSA.

The indexed text is ``R_1 0 R_2 0 ... R_m 0``. Text positions, suffix-array
ranks and SA intervals are exposed 1-based (as in the rest of the public
API); the arrays themselves are 0-based numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numba
import numpy as np

from . import rmq
from .errors import EmptyInterval, OutOfBounds
from .msa import MSA
from .suffix import inverse, lcp_array, suffix_array


class SaInterval(NamedTuple):
    """Inclusive 1-based suffix-array interval; empty when ``lo > hi``."""

    lo: int
    hi: int

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    @property
    def size(self) -> int:
        return max(0, self.hi - self.lo + 1)


@dataclass(frozen=True, eq=False)
class TextIndex:
    msa: MSA
    text: np.ndarray = field(repr=False)
    sa: np.ndarray = field(repr=False)
    rank_of: np.ndarray = field(repr=False)
    lcp: np.ndarray = field(repr=False)
    lcp_rmq: rmq.RangeMin = field(repr=False)
    col_min_rmq: rmq.RangeMin = field(repr=False)
    col_max_rmq: rmq.RangeMin = field(repr=False)  # stores negated columns

    @property
    def row_stride(self) -> int:
        return self.msa.n + 1

    def __len__(self):
        return len(self.text)

    def pos_map(self, pos: int) -> tuple[int, int] | None:
        """(row, column) of 1-based text position ``pos``; None on a separator."""
        if not 1 <= pos <= len(self.text):
            raise OutOfBounds(f"text position {pos} outside 1..{len(self.text)}")
        row, off = divmod(pos - 1, self.row_stride)
        if off == self.msa.n:
            return None
        return row + 1, off + 1

    def position(self, row: int, col: int) -> int:
        """Inverse of :meth:`pos_map`."""
        if not (1 <= row <= self.msa.m and 1 <= col <= self.msa.n):
            raise OutOfBounds(f"cell ({row}, {col}) outside the alignment")
        return (row - 1) * self.row_stride + col

    def find(self, pattern) -> SaInterval:
        """SA interval of an arbitrary code sequence by binary search over the suffixes."""
        pat = bytes(pattern)
        if not pat:
            return SaInterval(1, len(self.text))
        raw = self._raw
        k = len(pat)
        sa = self.sa

        def key(i):
            p = sa[i]
            return raw[p : p + k]

        lo, hi = 0, len(sa)
        while lo < hi:
            mid = (lo + hi) // 2
            if key(mid) < pat:
                lo = mid + 1
            else:
                hi = mid
        first = lo
        hi = len(sa)
        while lo < hi:
            mid = (lo + hi) // 2
            if key(mid) <= pat:
                lo = mid + 1
            else:
                hi = mid
        return SaInterval(first + 1, lo)

    @cached_property
    def _raw(self) -> bytes:
        return self.text.tobytes()


def build_text_index(msa: MSA) -> TextIndex:
    m, n = msa.m, msa.n
    text = np.zeros((m, n + 1), dtype=np.uint8)
    text[:, :n] = msa.codes
    text = text.ravel()
    sa = suffix_array(text)
    rank_of = inverse(sa)
    lcp = lcp_array(text, sa, rank_of)
    # lcp gets a trailing 0 so next_less always terminates inside the array
    lcp_ext = np.append(lcp, 0)
    cols = sa % (n + 1) + 1
    sep = cols == n + 1
    col_lo = np.where(sep, n + 2, cols)
    col_hi = np.where(sep, 0, cols)
    return TextIndex(
        msa=msa,
        text=text,
        sa=sa,
        rank_of=rank_of,
        lcp=lcp,
        lcp_rmq=rmq.RangeMin(lcp_ext),
        col_min_rmq=rmq.RangeMin(col_lo),
        col_max_rmq=rmq.RangeMin(-col_hi),
    )


@numba.njit(cache=True)
def _expand(lcp, table, r, length):
    """0-based inclusive SA range around rank r whose suffixes share ``length`` symbols."""
    lo = rmq.prev_less(lcp, table, r, length)
    hi = rmq.next_less(lcp, table, r + 1, length) - 1
    return lo, hi


@numba.njit(cache=True)
def _all_at_column(cmin, tmin, cmax, tmax, lo, hi, col):
    return (
        rmq.range_min(cmin, tmin, lo, hi) == col
        and -rmq.range_min(cmax, tmax, lo, hi) == col
    )


def suffix_interval(idx: TextIndex, row: int, col: int, length: int) -> SaInterval:
    """Maximal SA interval of the suffixes starting with ``MSA[row, col..col+length-1]``."""
    n = idx.msa.n
    if length < 1 or not 1 <= col or col + length - 1 > n or not 1 <= row <= idx.msa.m:
        raise OutOfBounds(f"pattern (row={row}, col={col}, len={length}) outside the alignment")
    r = int(idx.rank_of[idx.position(row, col) - 1])
    lo, hi = _expand(idx.lcp_rmq.values, idx.lcp_rmq.table, r, length)
    return SaInterval(int(lo) + 1, int(hi) + 1)


def occurrences_all_at_column(idx: TextIndex, iv: SaInterval, col: int) -> bool:
    """True iff every suffix in ``iv`` starts at column ``col``."""
    if iv.empty:
        raise EmptyInterval(f"empty interval {iv}")
    if not 1 <= iv.lo <= iv.hi <= len(idx.text):
        raise OutOfBounds(f"interval {iv} outside 1..{len(idx.text)}")
    return bool(
        _all_at_column(
            idx.col_min_rmq.values,
            idx.col_min_rmq.table,
            idx.col_max_rmq.values,
            idx.col_max_rmq.table,
            iv.lo - 1,
            iv.hi - 1,
            col,
        )
    )
