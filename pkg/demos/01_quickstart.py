"""Walk a two-row alignment through every stage of the pipeline.

    python demos/01_quickstart.py
"""

from fbgraph import (
    build_graph,
    build_index,
    build_text_index,
    compute_scores,
    compute_valid_ranges,
    parse_aligned_fasta,
    search,
    traceback,
    write_gfa,
)
from fbgraph.index import concatenation

FASTA = """\
>first
ACGT
>second
AGGT
"""

msa = parse_aligned_fasta(FASTA)
print(f"alignment: {msa.m} rows x {msa.n} columns, alphabet {''.join(msa.alphabet)}")

# v[j] is the largest j' such that columns j'+1..j form a valid segment:
# every string in that window occurs only at that column across all rows.
idx = build_text_index(msa)
v = compute_valid_ranges(idx)
print("valid ranges v[1..n]:", v[1:].tolist())

# s[j] is the smallest achievable maximum block width for columns 1..j.
table = compute_scores(v)
seg = traceback(table)
print("scores s[0..n]:     ", table.s.tolist())
print("segmentation:       ", " ".join(f"[{a}..{b}]" for a, b in seg))

graph = build_graph(msa, seg)
print("\nfounder graph as GFA:")
print(write_gfa(graph))

ix = build_index(graph)
print("edge concatenation C:", concatenation(graph).replace("\0", "0"))
print("marked label intervals:", ix.marked_intervals())

# ACGT spells a path across three blocks. The backward search has to widen
# its interval once it crosses a block boundary, which shows up as an expansion.
for pattern in ["ACGT", "AGT", "GG", "CGGT"]:
    st = search(ix, pattern)
    print(f"  {pattern:5s} found={st.alive!s:5s} expansions={st.expanded}")
