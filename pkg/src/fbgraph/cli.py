"""Command-line front end: build, index, query, stats."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import index as fbg_index
from .errors import FBGError, NoValidSegmentation, NotRepeatFree
from .graph import build_graph, graph_stats, read_gfa, verify_repeat_free, write_gfa
from .msa import filter_rows, read_fasta, read_records
from .segmentation import Segmentation, segment
from .text_index import build_text_index

log = logging.getLogger("fbgraph")

STATS_SCHEMA = 1


def _load_msa(path, gaps: bool, ambiguous: bool):
    msa = read_fasta(path)
    msa, report = filter_rows(msa, drop_gaps=gaps, drop_ambiguous=ambiguous)
    log.info("alignment: %d rows kept, %d dropped, %d columns", report.kept, len(report.dropped), msa.n)
    return msa, report


def cmd_build(args) -> int:
    start = time.perf_counter()
    msa, report = _load_msa(args.msa, args.filter_gaps, args.filter_ambiguous)
    idx = build_text_index(msa)
    seg, table, _ = segment(msa, idx)
    graph = build_graph(msa, seg)
    if not verify_repeat_free(graph, idx, seg):
        raise NotRepeatFree("constructed graph failed the repeat-free check")
    elapsed = time.perf_counter() - start
    Path(args.out).write_text(write_gfa(graph))
    stats = {
        "schema": STATS_SCHEMA,
        "rows": msa.m,
        "columns": msa.n,
        "filter": report.as_dict(),
        "max_block_width": table.score,
        "segments": len(seg),
        "graph": graph_stats(graph).as_dict(),
        "seconds": round(elapsed, 3),
    }
    if args.stats:
        Path(args.stats).write_text(json.dumps(stats, indent=2) + "\n")
    log.info("built %d blocks, max width %d in %.2fs", len(seg), table.score, elapsed)
    return 0


def cmd_index(args) -> int:
    graph = read_gfa(Path(args.graph).read_text())
    if args.msa:
        msa, _ = _load_msa(args.msa, args.filter_gaps, args.filter_ambiguous)
        widths = [len(block[0]) for block in graph.blocks]
        ends = [sum(widths[: i + 1]) for i in range(len(widths))]
        seg = Segmentation(tuple((e - w + 1, e) for w, e in zip(widths, ends)))
        if not seg.covers(msa.n) or not verify_repeat_free(graph, build_text_index(msa), seg):
            raise NotRepeatFree("graph is not a repeat-free founder graph of the given alignment")
    ix = fbg_index.build_index(graph)
    size = fbg_index.save(ix, args.out)
    report = {"index_bytes": size, "text_length": len(ix), "nodes": ix.num_nodes}
    if args.msa:
        msa_bytes = (msa.m * msa.n * 2 + 7) // 8
        report["msa_2bit_bytes"] = msa_bytes
        report["ratio"] = round(size / msa_bytes, 6)
    print(json.dumps(report))
    return 0


def _patterns(args):
    if args.pattern is not None:
        return [(str(k), p) for k, p in enumerate(args.pattern, start=1)]
    return list(read_records(Path(args.patterns).read_text()))


def cmd_query(args) -> int:
    ix = fbg_index.load(args.index)
    results = [(name, fbg_index.query(ix, seq)) for name, seq in _patterns(args)]
    if args.format == "json":
        print(json.dumps([{"pattern": name, "found": hit} for name, hit in results]))
    else:
        for name, hit in results:
            print(f"{name}\t{'FOUND' if hit else 'NOT_FOUND'}")
    return 0


def cmd_stats(args) -> int:
    graph = read_gfa(Path(args.graph).read_text())
    print(json.dumps(graph_stats(graph).as_dict(), indent=2))
    return 0


def _add_filter_flags(p):
    p.add_argument("--no-filter-gaps", dest="filter_gaps", action="store_false",
                   help="keep rows that contain '-'")
    p.add_argument("--no-filter-ambiguous", dest="filter_ambiguous", action="store_false",
                   help="keep rows that contain 'N'")


class _Parser(argparse.ArgumentParser):
    # exit status 2 is reserved for segmentation / repeat-freeness failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fbgraph", description=__doc__)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="segment an aligned FASTA and write the founder graph as GFA")
    p.add_argument("--msa", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--stats", help="write construction statistics as JSON")
    _add_filter_flags(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("index", help="build the binary query index of a GFA founder graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--msa", help="source alignment, for verification and the size ratio")
    _add_filter_flags(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("query", help="test patterns for occurrence on graph paths")
    p.add_argument("--index", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pattern", action="append")
    src.add_argument("--patterns", help="FASTA file of patterns")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("stats", help="print graph statistics as JSON")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (NoValidSegmentation, NotRepeatFree) as exc:
        print(f"fbgraph: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (FBGError, OSError, UnicodeDecodeError) as exc:
        print(f"fbgraph: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
