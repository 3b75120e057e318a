"""BWT index over the edge concatenation of a segment repeat-free founder graph.

The indexed text ``C`` concatenates ``label(v) label(w) 0`` over every edge
``(v, w)``. Node labels cannot occur in ``C`` anywhere but at their own node,
so the suffixes starting with a label form one SA interval per node; those
intervals are flagged with the ``mark_b`` / ``mark_e`` bitvectors. Backward
search that widens the current interval to an enclosing node interval before
each step ("expanded backward search") then decides whether a query spells a
substring of some path, for queries spanning any number of nodes.

SA intervals are 1-based and inclusive.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .bitvector import RankSelectBitvector
from .errors import BadMagic, FBGError, NotRepeatFree, TruncatedStream, VersionMismatch
from .graph import FounderBlockGraph
from .suffix import suffix_array

MAGIC = b"FBGI"
FORMAT_VERSION = 1
OCC_BLOCK = 64
_HEADER = struct.Struct("<4sBIQIQ")  # magic, version, sigma, |C|, occ block, stream size


@dataclass(frozen=True)
class QueryState:
    lo: int
    hi: int
    matched: int = 0
    expanded: int = 0

    @property
    def alive(self) -> bool:
        return self.lo <= self.hi

    @property
    def size(self) -> int:
        return max(0, self.hi - self.lo + 1)


@dataclass(eq=False)
class FBGIndex:
    alphabet: str
    bwt: bytes = field(repr=False)
    mark_b: RankSelectBitvector = field(repr=False)
    mark_e: RankSelectBitvector = field(repr=False)
    c_text: bytes | None = field(default=None, repr=False)  # not kept by deserialize
    occ_block: int = OCC_BLOCK
    version: int = FORMAT_VERSION

    def __post_init__(self):
        sigma = len(self.alphabet)
        bwt = self.bwt
        step = self.occ_block
        arr = np.frombuffer(bwt, dtype=np.uint8)
        totals = np.bincount(arr, minlength=sigma + 1)
        if len(totals) > sigma + 1:
            raise FBGError("BWT symbol outside the alphabet")
        # count[a] = number of symbols smaller than a
        self.count = [0] + np.cumsum(totals).tolist()
        nsamples = len(bwt) // step + 1
        # samples[k][a] = occurrences of a in bwt[0 : k*step]
        samples = np.zeros((nsamples, sigma + 1), dtype=np.int64)
        for a in range(sigma + 1):
            running = np.concatenate(([0], np.cumsum(arr == a)))
            samples[:, a] = running[::step]
        self._samples = samples.tolist()
        self._codes = {ch: k for k, ch in enumerate(self.alphabet, start=1)}

    def __len__(self):
        return len(self.bwt)

    @property
    def sigma(self) -> int:
        return len(self.alphabet)

    @property
    def num_nodes(self) -> int:
        return self.mark_b.ones

    def occ(self, a: int, i: int) -> int:
        """Occurrences of symbol ``a`` in ``bwt[1..i]``."""
        k, r = divmod(i, self.occ_block)
        base = self._samples[k][a]
        if r == 0:
            return base
        start = k * self.occ_block
        return base + self.bwt.count(a, start, start + r)

    def encode(self, q: str) -> list[int] | None:
        codes = self._codes
        out = []
        for ch in q.upper():
            a = codes.get(ch)
            if a is None:
                return None
            out.append(a)
        return out

    def marked_intervals(self) -> list[tuple[int, int]]:
        return [
            (self.mark_b.select(r), self.mark_e.select(r)) for r in range(1, self.mark_b.ones + 1)
        ]

    def full_state(self) -> QueryState:
        return QueryState(1, len(self.bwt))

    def __eq__(self, other):
        if not isinstance(other, FBGIndex):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.bwt == other.bwt
            and self.mark_b == other.mark_b
            and self.mark_e == other.mark_e
            and self.occ_block == other.occ_block
        )


def concatenation(g: FounderBlockGraph) -> str:
    """Text ``C`` as characters with ``\\0`` separators, in canonical edge order."""
    labels = g.labels
    if not g.edges:
        return "".join(label + "\0" for label in labels)
    return "".join(labels[u] + labels[w] + "\0" for u, w in g.edges)


def _backward_search(ix: FBGIndex, codes) -> tuple[int, int]:
    lo, hi = 1, len(ix.bwt)
    for a in reversed(codes):
        lo = ix.count[a] + ix.occ(a, lo - 1) + 1
        hi = ix.count[a] + ix.occ(a, hi)
        if lo > hi:
            break
    return lo, hi


def build_index(g: FounderBlockGraph) -> FBGIndex:
    alphabet = g.alphabet
    codes = {ch: k for k, ch in enumerate(alphabet, start=1)}
    c_chars = concatenation(g)
    c_text = bytes(codes.get(ch, 0) for ch in c_chars)
    sa = suffix_array(np.frombuffer(c_text, dtype=np.uint8))
    c_arr = np.frombuffer(c_text, dtype=np.uint8)
    bwt = c_arr[sa - 1].tobytes()  # sa == 0 wraps to the final separator

    bare = FBGIndex(
        alphabet,
        bwt,
        RankSelectBitvector([]),
        RankSelectBitvector([]),
        c_text=c_text,
    )
    intervals = []
    for v, label in enumerate(g.labels):
        lo, hi = _backward_search(bare, [codes[ch] for ch in label])
        if lo > hi:
            raise NotRepeatFree(f"label {label!r} of node {v + 1} does not occur in C")
        expected = len(g.in_adj[v]) + len(g.out_adj[v]) if g.edges else 1
        if hi - lo + 1 != expected:
            raise NotRepeatFree(
                f"label {label!r} of node {v + 1} occurs {hi - lo + 1} times in C, expected {expected}"
            )
        intervals.append((lo, hi))
    intervals.sort()
    for (_, h1), (l2, _) in zip(intervals, intervals[1:]):
        if l2 <= h1:
            raise NotRepeatFree("node label intervals overlap")
    n = len(c_text)
    mark_b = RankSelectBitvector.from_positions(n, (lo for lo, _ in intervals))
    mark_e = RankSelectBitvector.from_positions(n, (hi for _, hi in intervals))
    return FBGIndex(alphabet, bwt, mark_b, mark_e, c_text=c_text)


def backward_extend(ix: FBGIndex, st: QueryState, a: int) -> QueryState:
    """Prepend symbol ``a`` to the matched string; a dead result means no occurrence."""
    if not st.alive:
        return st
    if not 1 <= a <= ix.sigma:
        return QueryState(1, 0, st.matched + 1, st.expanded)
    c = ix.count[a]
    return QueryState(c + ix.occ(a, st.lo - 1) + 1, c + ix.occ(a, st.hi), st.matched + 1, st.expanded)


def expand(ix: FBGIndex, st: QueryState) -> QueryState:
    """Widen ``st`` to the node-label interval enclosing it, if there is one."""
    if not st.alive:
        return st
    r = ix.mark_b.rank(st.lo)
    if r < 1:
        return st
    i = ix.mark_b.select(r)
    k = ix.mark_e.select(r)
    if i <= st.lo and st.hi <= k and (i, k) != (st.lo, st.hi):
        return QueryState(i, k, st.matched, st.expanded + 1)
    return st


def search(ix: FBGIndex, q: str) -> QueryState:
    """Expanded backward search of ``q``; returns the final (possibly dead) state."""
    codes = ix.encode(q)
    if codes is None:
        return QueryState(1, 0)
    st = ix.full_state()
    for a in reversed(codes):
        st = backward_extend(ix, expand(ix, st), a)
        if not st.alive:
            break
    return st


def query(ix: FBGIndex, q: str) -> bool:
    """True iff ``q`` occurs on some path of the indexed graph (empty ``q`` does)."""
    return search(ix, q).alive


def _pack_2bit(bwt: bytes) -> tuple[bytes, bytes]:
    arr = np.frombuffer(bwt, dtype=np.uint8)
    sep = (arr == 0).astype(np.uint8)
    vals = np.where(arr == 0, 0, arr - 1).astype(np.uint8)
    pad = (-len(vals)) % 4
    vals = np.concatenate([vals, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 4)
    packed = vals[:, 0] | (vals[:, 1] << 2) | (vals[:, 2] << 4) | (vals[:, 3] << 6)
    return np.packbits(sep, bitorder="little").tobytes(), packed.astype(np.uint8).tobytes()


def _unpack_2bit(sep: bytes, packed: bytes, n: int) -> bytes:
    p = np.frombuffer(packed, dtype=np.uint8)
    vals = np.stack([p & 3, (p >> 2) & 3, (p >> 4) & 3, (p >> 6) & 3], axis=1).ravel()[:n]
    isep = np.unpackbits(np.frombuffer(sep, dtype=np.uint8), bitorder="little")[:n].astype(bool)
    return np.where(isep, 0, vals + 1).astype(np.uint8).tobytes()


def _bit_bytes(n: int) -> int:
    return (n + 7) // 8


def serialize(ix: FBGIndex) -> bytes:
    """Versioned little-endian binary form of the index.

    Layout: header (magic, version u8, sigma u32, |C| u64, occ block u32,
    stream size u64), alphabet (sigma bytes), BWT (separator bitvector plus
    2-bit codes when sigma <= 4, else one byte per symbol), mark_b, mark_e.
    """
    n = len(ix.bwt)
    parts = [ix.alphabet.encode("latin-1")]
    if ix.sigma <= 4:
        parts.extend(_pack_2bit(ix.bwt))
    else:
        parts.append(ix.bwt)
    parts.append(ix.mark_b.to_bytes())
    parts.append(ix.mark_e.to_bytes())
    body = b"".join(parts)
    header = _HEADER.pack(MAGIC, ix.version, ix.sigma, n, ix.occ_block, _HEADER.size + len(body))
    return header + body


def deserialize(data: bytes) -> FBGIndex:
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic("not an FBG index stream")
    if len(data) < _HEADER.size:
        raise TruncatedStream("stream ends inside the header")
    _, version, sigma, n, occ_block, size = _HEADER.unpack_from(data)
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"format version {version}, expected {FORMAT_VERSION}")
    if len(data) < size:
        raise TruncatedStream(f"stream has {len(data)} bytes, header declares {size}")
    if len(data) > size:
        raise FBGError(f"{len(data) - size} trailing bytes after the index")
    pos = _HEADER.size

    def take(k: int) -> bytes:
        nonlocal pos
        if pos + k > size:
            raise TruncatedStream("stream shorter than its sections")
        chunk = data[pos : pos + k]
        pos += k
        return chunk

    alphabet = take(sigma).decode("latin-1")
    if sigma <= 4:
        sep = take(_bit_bytes(n))
        bwt = _unpack_2bit(sep, take((n + 3) // 4), n)
    else:
        bwt = take(n)
    mark_b = RankSelectBitvector.from_bytes(take(_bit_bytes(n)), n)
    mark_e = RankSelectBitvector.from_bytes(take(_bit_bytes(n)), n)
    if pos != size:
        raise FBGError("section sizes disagree with the declared stream size")
    return FBGIndex(alphabet, bwt, mark_b, mark_e, occ_block=occ_block, version=version)


def save(ix: FBGIndex, path) -> int:
    data = serialize(ix)
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def load(path) -> FBGIndex:
    with open(path, "rb") as fh:
        return deserialize(fh.read())
