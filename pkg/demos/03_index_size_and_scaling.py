"""How big the index gets, and how query time behaves.

Part one compares the serialized index with a 2-bit packing of the alignment
under two mutation models. Shared (tree-structured) variation compresses well.
Independent per-row substitutions give every row private variants, so many
more founder strings survive.

Part two times queries of several lengths against indexes built from 50 and
400 rows.

    python demos/03_index_size_and_scaling.py
"""

import time

from fbgraph import build_graph, build_index, query, segment, serialize
from fbgraph.simulate import coalescent_msa, random_msa, sample_substrings


def pipeline(msa):
    seg, table, _ = segment(msa)
    graph = build_graph(msa, seg)
    return graph, build_index(graph), table.score


print("index size, 100 rows x 10000 columns at 0.5%")
for label, maker in [("coalescent", coalescent_msa), ("independent", random_msa)]:
    msa = maker(100, 10_000, 0.005, seed=1)
    graph, ix, width = pipeline(msa)
    size = len(serialize(ix))
    packed = msa.m * msa.n // 4
    print(
        f"  {label:11s}: {graph.num_nodes:6d} nodes, max width {width:3d}, "
        f"index {size:7d} B = {size / packed:6.1%} of {packed} B"
    )

print("\nmean query time (ms), n=5000 at 1%")
print("  rows   |q|=100  |q|=500  |q|=1000")
for m in (50, 400):
    msa = coalescent_msa(m, 5000, 0.01, seed=m)
    _, ix, _ = pipeline(msa)
    cells = []
    for length in (100, 500, 1000):
        patterns = sample_substrings(msa, length, 50, seed=length)
        start = time.perf_counter()
        for p in patterns:
            query(ix, p)
        cells.append((time.perf_counter() - start) / len(patterns) * 1e3)
    print(f"  {m:4d}   " + "  ".join(f"{c:7.2f}" for c in cells))
