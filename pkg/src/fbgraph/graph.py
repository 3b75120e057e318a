"""Founder block graphs: construction from a segmentation, GFA I/O, statistics."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import cached_property
from typing import Iterable

from .errors import MalformedGfa, MissingBlockTag, SegmentationMismatch
from .msa import MSA
from .segmentation import Segmentation
from .text_index import TextIndex, occurrences_all_at_column


@dataclass(frozen=True)
class FounderBlockGraph:
    """Block DAG whose nodes are the distinct row substrings of each block.

    ``blocks[i]`` lists the labels of block ``i`` in lexicographic order.
    Nodes carry global 0-based ids in (block, label) order, and ``edges`` is
    the sorted tuple of ``(from_id, to_id)`` pairs between consecutive blocks.
    """

    blocks: tuple[tuple[str, ...], ...]
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def labels(self) -> list[str]:
        return [label for block in self.blocks for label in block]

    @cached_property
    def block_of(self) -> list[int]:
        return [i for i, block in enumerate(self.blocks) for _ in block]

    @cached_property
    def offsets(self) -> list[int]:
        out = [0]
        for block in self.blocks:
            out.append(out[-1] + len(block))
        return out

    @cached_property
    def out_adj(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.labels]
        for u, w in self.edges:
            adj[u].append(w)
        return adj

    @cached_property
    def in_adj(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.labels]
        for u, w in self.edges:
            adj[w].append(u)
        return adj

    @cached_property
    def alphabet(self) -> str:
        return "".join(sorted(set("".join(self.labels))))

    @property
    def num_nodes(self) -> int:
        return self.offsets[-1]

    def node_id(self, block: int, label: str) -> int:
        """Global id of ``label`` in 0-based ``block``."""
        return self.offsets[block] + self.blocks[block].index(label)

    def nodes_in(self, block: int) -> range:
        return range(self.offsets[block], self.offsets[block + 1])


@dataclass(frozen=True)
class GraphStats:
    blocks: int
    nodes: int
    edges: int
    max_label_length: int
    total_label_length: int
    max_nodes_per_block: int

    def as_dict(self) -> dict:
        return asdict(self)


def _make_graph(blocks: list[list[str]], edges: Iterable[tuple[int, str, str]]) -> FounderBlockGraph:
    """Canonicalize blocks of labels and (block, from_label, to_label) edges."""
    blocks = [sorted(set(b)) for b in blocks]
    offsets = [0]
    for b in blocks:
        offsets.append(offsets[-1] + len(b))
    lookup = [{label: offsets[i] + k for k, label in enumerate(b)} for i, b in enumerate(blocks)]
    ids = {(lookup[i][u], lookup[i + 1][w]) for i, u, w in edges}
    return FounderBlockGraph(tuple(tuple(b) for b in blocks), tuple(sorted(ids)))


def build_graph(msa: MSA, seg: Segmentation) -> FounderBlockGraph:
    """Founder block graph induced by ``seg`` over the rows of ``msa``."""
    if not seg.covers(msa.n):
        raise SegmentationMismatch(f"segmentation {seg.blocks} does not cover columns 1..{msa.n}")
    rows = msa.rows
    pieces = [[row[a - 1 : b] for a, b in seg.blocks] for row in rows]
    blocks = [[p[i] for p in pieces] for i in range(len(seg))]
    edges = {(i, p[i], p[i + 1]) for p in pieces for i in range(len(seg) - 1)}
    return _make_graph(blocks, edges)


def row_path(g: FounderBlockGraph, row: str) -> list[int] | None:
    """Node ids spelling ``row`` block by block, or None if some piece is missing."""
    path, pos = [], 0
    for i, block in enumerate(g.blocks):
        width = len(block[0])
        piece = row[pos : pos + width]
        if piece not in block:
            return None
        path.append(g.node_id(i, piece))
        pos += width
    return path if pos == len(row) else None


def verify_repeat_free(g: FounderBlockGraph, idx: TextIndex, seg: Segmentation) -> bool:
    """True iff every node label occurs in the MSA rows only at its block's first column."""
    if len(g.blocks) != len(seg):
        return False
    msa = idx.msa
    for block, (a, b) in zip(g.blocks, seg.blocks):
        for label in block:
            if len(label) != b - a + 1:
                return False
            codes = msa.encode(label)
            if codes is None:
                return False
            iv = idx.find(codes)
            if iv.empty or not occurrences_all_at_column(idx, iv, a):
                return False
    return True


def graph_match_oracle(g: FounderBlockGraph, q: str) -> bool:
    """True iff ``q`` spells a substring of some path label (empty ``q`` always matches).

    Dynamic programming over (node, offset) states; no path enumeration.
    """
    if not q:
        return True
    labels = g.labels
    out = g.out_adj
    states = {(v, p) for v, label in enumerate(labels) for p in range(len(label))}
    last = len(q) - 1
    for i, ch in enumerate(q):
        nxt = set()
        hit = False
        for v, p in states:
            label = labels[v]
            if label[p] != ch:
                continue
            hit = True
            if p + 1 < len(label):
                nxt.add((v, p + 1))
            else:
                nxt.update((w, 0) for w in out[v])
        if not hit:
            return False
        if i == last:
            return True
        states = nxt
    return True


def graph_stats(g: FounderBlockGraph) -> GraphStats:
    return GraphStats(
        blocks=len(g.blocks),
        nodes=g.num_nodes,
        edges=len(g.edges),
        max_label_length=max((len(x) for x in g.labels), default=0),
        total_label_length=sum(len(x) for x in g.labels),
        max_nodes_per_block=max((len(b) for b in g.blocks), default=0),
    )


def write_gfa(g: FounderBlockGraph) -> str:
    lines = ["H\tVN:Z:1.1"]
    for v, (label, block) in enumerate(zip(g.labels, g.block_of)):
        lines.append(f"S\t{v + 1}\t{label}\tBL:i:{block + 1}")
    for u, w in g.edges:
        lines.append(f"L\t{u + 1}\t+\t{w + 1}\t+\t0M")
    return "\n".join(lines) + "\n"


def read_gfa(text: str) -> FounderBlockGraph:
    segments: dict[str, tuple[str, int]] = {}
    links: list[tuple[str, str, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        kind = fields[0]
        if kind == "S":
            if len(fields) < 3:
                raise MalformedGfa(f"line {lineno}: S line needs an id and a sequence")
            sid, seq = fields[1], fields[2].upper()
            if sid in segments:
                raise MalformedGfa(f"line {lineno}: duplicate segment id {sid!r}")
            if not seq or seq == "*":
                raise MalformedGfa(f"line {lineno}: segment {sid!r} has no sequence")
            block = None
            for tag in fields[3:]:
                if tag.startswith("BL:i:"):
                    try:
                        block = int(tag[5:])
                    except ValueError:
                        raise MalformedGfa(f"line {lineno}: bad BL tag {tag!r}") from None
            if block is None:
                raise MissingBlockTag(f"line {lineno}: segment {sid!r} lacks a BL:i tag")
            segments[sid] = (seq, block)
        elif kind == "L":
            if len(fields) < 6:
                raise MalformedGfa(f"line {lineno}: L line needs 6 fields")
            if fields[2] != "+" or fields[4] != "+":
                raise MalformedGfa(f"line {lineno}: only forward orientations are supported")
            if fields[5] not in ("0M", "*"):
                raise MalformedGfa(f"line {lineno}: overlaps are not supported")
            links.append((fields[1], fields[3], lineno))
        elif kind == "H":
            continue
        else:
            # P/W/C lines and other record types carry nothing we model
            continue
    if not segments:
        raise MalformedGfa("no segments")

    nblocks = max(b for _, b in segments.values())
    if min(b for _, b in segments.values()) < 1:
        raise MalformedGfa("block indices must start at 1")
    blocks: list[list[str]] = [[] for _ in range(nblocks)]
    for seq, b in segments.values():
        blocks[b - 1].append(seq)
    for i, labels in enumerate(blocks, start=1):
        if not labels:
            raise MalformedGfa(f"block {i} has no segments")
        if len({len(x) for x in labels}) != 1:
            raise MalformedGfa(f"block {i} mixes label lengths")
        if len(set(labels)) != len(labels):
            raise MalformedGfa(f"block {i} repeats a label")

    edges = []
    for src, dst, lineno in links:
        if src not in segments or dst not in segments:
            raise MalformedGfa(f"line {lineno}: link references unknown segment")
        (u, bu), (w, bw) = segments[src], segments[dst]
        if bw != bu + 1:
            raise MalformedGfa(f"line {lineno}: link must join consecutive blocks")
        edges.append((bu - 1, u, w))
    return _make_graph(blocks, edges)
