"""Rank/select bitvector over 64-bit words with cumulative per-word counts."""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable

import numpy as np

from .errors import OutOfBounds

WORD = 64


class RankSelectBitvector:
    """Static bitvector with 1-based ``rank`` and ``select``.

    ``rank(i)`` counts the ones in ``bits[1..i]``; ``select(j)`` returns the
    position of the j-th one. Both are O(1) word operations plus a binary
    search over word counts for select.
    """

    __slots__ = ("length", "_words", "_cum", "ones")

    def __init__(self, bits: Iterable[int] | np.ndarray):
        arr = np.asarray(bits if isinstance(bits, np.ndarray) else list(bits), dtype=np.uint8)
        self.length = len(arr)
        padded = np.zeros(-(-self.length // WORD) * WORD, dtype=np.uint8)
        padded[: self.length] = arr != 0
        words = np.packbits(padded.reshape(-1, WORD), axis=1, bitorder="little")
        # bit k of word w is position w*64 + k (0-based)
        self._words = [int.from_bytes(row.tobytes(), "little") for row in words]
        counts = [w.bit_count() for w in self._words]
        cum = [0]
        for c in counts:
            cum.append(cum[-1] + c)
        self._cum = cum
        self.ones = cum[-1]

    @classmethod
    def from_positions(cls, length: int, positions: Iterable[int]) -> "RankSelectBitvector":
        """Build from 1-based positions of the set bits."""
        arr = np.zeros(length, dtype=np.uint8)
        for p in positions:
            if not 1 <= p <= length:
                raise OutOfBounds(f"position {p} outside 1..{length}")
            arr[p - 1] = 1
        return cls(arr)

    def __len__(self):
        return self.length

    def __getitem__(self, i: int) -> int:
        """1-based bit access."""
        if not 1 <= i <= self.length:
            raise OutOfBounds(f"bit {i} outside 1..{self.length}")
        q, r = divmod(i - 1, WORD)
        return (self._words[q] >> r) & 1

    def rank(self, i: int) -> int:
        if not 0 <= i <= self.length:
            raise OutOfBounds(f"rank argument {i} outside 0..{self.length}")
        q, r = divmod(i, WORD)
        if r == 0:
            return self._cum[q]
        return self._cum[q] + (self._words[q] & ((1 << r) - 1)).bit_count()

    def select(self, j: int) -> int:
        if not 1 <= j <= self.ones:
            raise OutOfBounds(f"select argument {j} outside 1..{self.ones}")
        q = bisect_left(self._cum, j) - 1
        word = self._words[q]
        need = j - self._cum[q]
        for _ in range(need - 1):
            word &= word - 1
        return q * WORD + (word & -word).bit_length()

    def to_array(self) -> np.ndarray:
        out = np.zeros(len(self._words) * WORD, dtype=np.uint8)
        for q, w in enumerate(self._words):
            if w:
                bits = np.frombuffer(w.to_bytes(8, "little"), dtype=np.uint8)
                out[q * WORD : (q + 1) * WORD] = np.unpackbits(bits, bitorder="little")
        return out[: self.length]

    def to_bytes(self) -> bytes:
        return np.packbits(self.to_array(), bitorder="little").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes, length: int) -> "RankSelectBitvector":
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
        return cls(bits[:length])

    def __eq__(self, other):
        if not isinstance(other, RankSelectBitvector):
            return NotImplemented
        return self.length == other.length and self._words == other._words

    def __repr__(self):
        bits = "".join(map(str, self.to_array()[:64]))
        tail = "..." if self.length > 64 else ""
        return f"RankSelectBitvector({bits}{tail})"
