"""Synthetic gapless alignments for benchmarks and property tests."""

from __future__ import annotations

import numpy as np

from .msa import MSA


def random_msa(
    m: int,
    n: int,
    mutation_rate: float,
    alphabet: str = "ACGT",
    seed: int | np.random.Generator | None = None,
) -> MSA:
    """Rows derived from one random ancestor by independent point substitutions.

    Each cell of each row is replaced, with probability ``mutation_rate``, by
    a different symbol drawn uniformly from ``alphabet``.
    """
    rng = np.random.default_rng(seed)
    sigma = len(alphabet)
    ancestor = rng.integers(0, sigma, size=n)
    rows = np.tile(ancestor, (m, 1))
    if sigma > 1:
        hit = rng.random((m, n)) < mutation_rate
        shift = rng.integers(1, sigma, size=(m, n))
        rows = np.where(hit, (rows + shift) % sigma, rows)
    lut = np.frombuffer(alphabet.encode("ascii"), dtype=np.uint8)
    text = [lut[r].tobytes().decode("ascii") for r in rows]
    return MSA.from_rows(text, [f"s{i + 1}" for i in range(m)])


def sample_substrings(msa: MSA, length: int, count: int, seed=None) -> list[str]:
    """``count`` substrings of the given length drawn uniformly from the rows."""
    rng = np.random.default_rng(seed)
    length = min(length, msa.n)
    rows = msa.rows
    out = []
    for _ in range(count):
        t = int(rng.integers(msa.m))
        a = int(rng.integers(msa.n - length + 1))
        out.append(rows[t][a : a + length])
    return out


def coalescent_msa(
    m: int,
    n: int,
    divergence: float,
    alphabet: str = "ACGT",
    seed: int | np.random.Generator | None = None,
) -> MSA:
    """Rows evolved from a random ancestor down a Kingman coalescent genealogy.

    Substitutions happen on tree branches and are inherited by every row
    below them, so rows share variation the way real strain collections do.
    ``divergence`` is the expected per-site substitution probability along a
    root-to-leaf path.
    """
    rng = np.random.default_rng(seed)
    sigma = len(alphabet)
    # leaves are 0..m-1, internal nodes m..2m-2 in merge order (root last)
    height = np.zeros(2 * m - 1)
    parent = np.full(2 * m - 1, -1, dtype=np.int64)
    lineages = list(range(m))
    t = 0.0
    nxt = m
    while len(lineages) > 1:
        k = len(lineages)
        t += rng.exponential(2.0 / (k * (k - 1)))
        i, j = sorted(rng.choice(k, size=2, replace=False), reverse=True)
        a, b = lineages.pop(i), lineages.pop(j)
        parent[a] = parent[b] = nxt
        height[nxt] = t
        lineages.append(nxt)
        nxt += 1
    root = lineages[0]
    total = height[root] if height[root] > 0 else 1.0

    seqs = np.empty((2 * m - 1, n), dtype=np.int64)
    seqs[root] = rng.integers(0, sigma, size=n)
    # internal ids increase with height, so walk them downward
    for node in range(2 * m - 2, -1, -1):
        if node == root:
            continue
        p = parent[node]
        prob = divergence * (height[p] - height[node]) / total
        row = seqs[p].copy()
        if sigma > 1:
            hit = rng.random(n) < prob
            row[hit] = (row[hit] + rng.integers(1, sigma, size=int(hit.sum()))) % sigma
        seqs[node] = row
    lut = np.frombuffer(alphabet.encode("ascii"), dtype=np.uint8)
    text = [lut[r].tobytes().decode("ascii") for r in seqs[:m]]
    return MSA.from_rows(text, [f"s{i + 1}" for i in range(m)])
