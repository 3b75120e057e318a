"""Segment repeat-free founder block graphs and their BWT path index.

Typical use::

    from fbgraph import parse_aligned_fasta, segment, build_graph, build_index, query

    msa = parse_aligned_fasta(open("aln.fa").read())
    seg, scores, _ = segment(msa)
    graph = build_graph(msa, seg)
    ix = build_index(graph)
    query(ix, "ACGT")
"""

from .bitvector import RankSelectBitvector
from .errors import *  # noqa: F401,F403
from .graph import (
    FounderBlockGraph,
    GraphStats,
    build_graph,
    graph_match_oracle,
    graph_stats,
    read_gfa,
    verify_repeat_free,
    write_gfa,
)
from .index import (
    FBGIndex,
    QueryState,
    backward_extend,
    build_index,
    deserialize,
    expand,
    query,
    search,
    serialize,
)
from .msa import MSA, FilterReport, filter_rows, parse_aligned_fasta, to_fasta
from .segmentation import (
    INF,
    UNDEFINED,
    ScoreTable,
    Segmentation,
    brute_force_optimal,
    compute_scores,
    compute_scores_reference,
    compute_valid_ranges,
    is_valid_segment,
    segment,
    traceback,
)
from .text_index import (
    SaInterval,
    TextIndex,
    build_text_index,
    occurrences_all_at_column,
    suffix_interval,
)

__version__ = "0.1.0"
