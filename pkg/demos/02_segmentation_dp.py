"""The min-max block width recurrence, checked and timed.

Computes valid ranges for a simulated alignment, solves the recurrence with
both the quadratic reference and the linear-time solver, and confirms the
optimum against exhaustive search on a prefix small enough to enumerate.

    python demos/02_segmentation_dp.py
"""

import time

import numpy as np

from fbgraph import (
    MSA,
    brute_force_optimal,
    build_text_index,
    compute_scores,
    compute_scores_reference,
    compute_valid_ranges,
    traceback,
)
from fbgraph.simulate import coalescent_msa

msa = coalescent_msa(40, 3000, 0.02, seed=7)
idx = build_text_index(msa)
v = compute_valid_ranges(idx)

undefined = int((v[1:] < 0).sum())
print(f"{msa.m} rows x {msa.n} columns; the first {undefined} columns cannot end a valid segment")

for name, solver in [("reference", compute_scores_reference), ("linear", compute_scores)]:
    start = time.perf_counter()
    table = solver(v)
    print(f"{name:9s}: s[n] = {table.score}, {time.perf_counter() - start:.3f}s")

assert compute_scores(v) == compute_scores_reference(v)
seg = traceback(compute_scores(v))
widths = np.array(seg.widths)
print(f"{len(seg)} blocks, widths min/median/max = {widths.min()}/{int(np.median(widths))}/{widths.max()}")

# exhaustive search is exponential, so only a 14-column slice
small = MSA.from_rows([row[:14] for row in msa.rows[:6]])
small_v = compute_valid_ranges(build_text_index(small))
print(
    "14-column slice: linear solver",
    compute_scores(small_v).score,
    "vs exhaustive",
    brute_force_optimal(small),
)
