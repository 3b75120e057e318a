"""Aligned FASTA input and the row-filtering policy applied before segmentation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

from .errors import AllRowsFiltered, EmptyInput, InvalidFasta, NonUniformRowLength

GAP = "-"
AMBIGUOUS = "N"


@dataclass(frozen=True, eq=False)
class MSA:
    """Gapless alignment of ``m`` rows of equal length ``n``.

    ``codes`` holds the rows as a ``(m, n)`` uint8 matrix with symbols coded
    ``1..sigma`` following the order of ``alphabet``; code 0 is reserved for
    row separators in downstream text indexes.
    """

    names: tuple[str, ...]
    alphabet: str
    codes: np.ndarray = field(repr=False)

    def __post_init__(self):
        codes = self.codes
        if codes.ndim != 2 or codes.shape[0] < 1 or codes.shape[1] < 1:
            raise EmptyInput("alignment must have at least one row and one column")
        if len(self.names) != codes.shape[0]:
            raise ValueError("one name per row required")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet characters must be distinct")
        if codes.min() < 1 or codes.max() > len(self.alphabet):
            raise ValueError("row codes must lie in 1..sigma")
        codes.setflags(write=False)

    @classmethod
    def from_rows(cls, rows: Iterable[str], names: Iterable[str] | None = None) -> "MSA":
        rows = [r.upper() for r in rows]
        if not rows:
            raise EmptyInput("no rows")
        if names is None:
            names = [f"r{i + 1}" for i in range(len(rows))]
        names = tuple(names)
        n = len(rows[0])
        for name, row in zip(names, rows):
            if len(row) != n:
                raise NonUniformRowLength(
                    f"row {name!r} has length {len(row)}, expected {n}"
                )
        if n == 0:
            raise EmptyInput("rows are empty")
        alphabet = "".join(sorted(set("".join(rows))))
        if any(ord(ch) > 255 or not ch.isprintable() for ch in alphabet):
            raise InvalidFasta(f"unsupported characters in rows: {alphabet!r}")
        table = np.zeros(256, dtype=np.uint8)
        for code, ch in enumerate(alphabet, start=1):
            table[ord(ch)] = code
        raw = np.frombuffer("".join(rows).encode("latin-1"), dtype=np.uint8)
        codes = table[raw].reshape(len(rows), n)
        return cls(names, alphabet, codes)

    @property
    def m(self) -> int:
        return self.codes.shape[0]

    @property
    def n(self) -> int:
        return self.codes.shape[1]

    @property
    def sigma(self) -> int:
        return len(self.alphabet)

    @property
    def rows(self) -> list[str]:
        lut = np.frombuffer(("\0" + self.alphabet).encode("latin-1"), dtype=np.uint8)
        return [lut[r].tobytes().decode("latin-1") for r in self.codes]

    def encode(self, text: str) -> list[int] | None:
        """Map characters to codes; None if any character is outside the alphabet."""
        out = []
        for ch in text.upper():
            k = self.alphabet.find(ch)
            if k < 0:
                return None
            out.append(k + 1)
        return out

    def __eq__(self, other):
        if not isinstance(other, MSA):
            return NotImplemented
        return (
            self.names == other.names
            and self.alphabet == other.alphabet
            and np.array_equal(self.codes, other.codes)
        )

    def __hash__(self):
        return hash((self.names, self.alphabet, self.codes.tobytes()))


@dataclass(frozen=True)
class FilterReport:
    kept: int
    dropped: list[tuple[str, str]]

    def as_dict(self) -> dict:
        return {
            "kept": self.kept,
            "dropped": [{"name": n, "reason": r} for n, r in self.dropped],
        }


def read_records(text: str):
    """Yield (name, sequence) pairs from FASTA text."""
    name = None
    chunks: list[str] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            if name is not None:
                yield name, "".join(chunks)
            name = line[1:].strip()
            if not name:
                raise InvalidFasta(f"line {lineno}: empty header")
            name = name.split()[0]
            chunks = []
        elif line.startswith(";"):
            continue
        else:
            if name is None:
                raise InvalidFasta(f"line {lineno}: sequence data before first header")
            chunks.append("".join(line.split()))
    if name is not None:
        yield name, "".join(chunks)


def parse_aligned_fasta(text: str | TextIO) -> MSA:
    """Parse aligned FASTA (sequence lines may be folded) into an :class:`MSA`.

    Characters are upper-cased and the alphabet is every observed character in
    lexicographic order.
    """
    if not isinstance(text, str):
        text = text.read()
    records = list(read_records(text))
    if not records:
        raise EmptyInput("no FASTA records")
    names, rows = zip(*records)
    return MSA.from_rows(rows, names)


def read_fasta(path) -> MSA:
    with open(path) as fh:
        return parse_aligned_fasta(fh)


def to_fasta(msa: MSA, width: int = 0) -> str:
    out = []
    for name, row in zip(msa.names, msa.rows):
        out.append(f">{name}")
        if width > 0:
            out.extend(row[i : i + width] for i in range(0, len(row), width))
        else:
            out.append(row)
    return "\n".join(out) + "\n"


def filter_rows(
    msa: MSA, drop_gaps: bool = True, drop_ambiguous: bool = True
) -> tuple[MSA, FilterReport]:
    """Drop rows containing gaps and/or ambiguous bases, keeping row order.

    The alphabet of the returned MSA is rebuilt from the surviving rows.
    """
    kept_names, kept_rows, dropped = [], [], []
    for name, row in zip(msa.names, msa.rows):
        if drop_gaps and GAP in row:
            dropped.append((name, "contains-gap"))
        elif drop_ambiguous and AMBIGUOUS in row:
            dropped.append((name, "contains-ambiguous"))
        else:
            kept_names.append(name)
            kept_rows.append(row)
    if not kept_rows:
        raise AllRowsFiltered(f"all {msa.m} rows were filtered out")
    report = FilterReport(kept=len(kept_rows), dropped=dropped)
    if not dropped:
        return msa, report
    return MSA.from_rows(kept_rows, kept_names), report
