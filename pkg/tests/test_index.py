import random

import pytest

from fbgraph import index as fbg
from fbgraph.errors import BadMagic, FBGError, NotRepeatFree, TruncatedStream, VersionMismatch
from fbgraph.graph import FounderBlockGraph, build_graph, graph_match_oracle
from fbgraph.index import (
    QueryState,
    backward_extend,
    build_index,
    concatenation,
    deserialize,
    expand,
    query,
    search,
    serialize,
)
from fbgraph.msa import MSA
from fbgraph.segmentation import Segmentation, segment
from oracles import naive_suffix_array, random_instances

SEG_A = Segmentation(((1, 1), (2, 3), (4, 4)))
SEG_B = Segmentation(((1, 2), (3, 4), (5, 6)))


@pytest.fixture
def graph_a(msa_a):
    return build_graph(msa_a, SEG_A)


@pytest.fixture
def index_a(graph_a):
    return build_index(graph_a)


@pytest.fixture
def index_b(msa_b):
    return build_index(build_graph(msa_b, SEG_B))


def naive_interval(c: bytes, pattern: bytes) -> tuple[int, int]:
    sa = naive_suffix_array(c)
    hits = [r + 1 for r, p in enumerate(sa) if c[p : p + len(pattern)] == pattern]
    return (hits[0], hits[-1]) if hits else (1, 0)


def state_of(ix, pattern: str) -> QueryState:
    lo, hi = naive_interval(ix.c_text, bytes(ix.encode(pattern)))
    return QueryState(lo, hi, len(pattern))


def test_concatenation_msa_a(graph_a, index_a):
    assert concatenation(graph_a) == "ACG\0AGG\0CGT\0GGT\0"
    assert len(index_a) == 16
    assert len(index_a) == sum(
        len(graph_a.labels[u]) + len(graph_a.labels[w]) + 1 for u, w in graph_a.edges
    )


def test_marked_intervals_msa_a(index_a):
    intervals = index_a.marked_intervals()
    assert len(intervals) == 4
    assert all(k - i + 1 == 2 for i, k in intervals)
    labels = ["A", "CG", "GG", "T"]
    expected = sorted(naive_interval(index_a.c_text, bytes(index_a.encode(x))) for x in labels)
    assert intervals == expected


def test_edgeless_fallback():
    g = build_graph(MSA.from_rows(["ACGT", "AGGT"]), Segmentation(((1, 4),)))
    ix = build_index(g)
    assert concatenation(g) == "ACGT\0AGGT\0"
    assert query(ix, "CGT") and not query(ix, "TA") and query(ix, "AGGT")


def test_bwt_matches_definition(index_a):
    c = index_a.c_text
    sa = naive_suffix_array(c)
    assert index_a.bwt == bytes(c[p - 1] for p in sa)


def test_backward_extend_examples(index_a):
    st_t = state_of(index_a, "T")
    g = index_a.encode("G")[0]
    st_gt = backward_extend(index_a, st_t, g)
    gt = state_of(index_a, "GT")
    assert (st_gt.lo, st_gt.hi) == (gt.lo, gt.hi)
    assert st_gt.size == 2
    dead = backward_extend(index_a, st_gt, index_a.encode("A")[0])
    assert not dead.alive
    assert not backward_extend(index_a, index_a.full_state(), 9).alive
    assert not backward_extend(index_a, index_a.full_state(), 0).alive


def test_expand_examples(index_a):
    cg = state_of(index_a, "CG")
    cgt = state_of(index_a, "CGT")
    grown = expand(index_a, cgt)
    assert (grown.lo, grown.hi) == (cg.lo, cg.hi) and grown.size == 2
    assert grown.expanded == 1
    gt = state_of(index_a, "GT")
    assert expand(index_a, gt) == gt
    assert expand(index_a, cg) == cg
    assert expand(index_a, grown) == grown


@pytest.mark.parametrize("q,expected", [("ACGT", True), ("AGT", False), ("G", True), ("", True)])
def test_query_examples(graph_a, index_a, q, expected):
    assert query(index_a, q) is expected
    assert graph_match_oracle(graph_a, q) is expected


def test_query_expands_across_three_nodes(index_a, index_b):
    assert search(index_a, "ACGT").expanded == 1
    st = search(index_b, "ACCATG")
    assert st.alive and st.expanded > 0


def test_query_outside_alphabet(index_a):
    assert not query(index_a, "ACXT")
    assert query(index_a, "acgt")


def test_not_repeat_free_rejected():
    g = build_graph(MSA.from_rows(["AA", "AA"]), Segmentation(((1, 1), (2, 2))))
    with pytest.raises(NotRepeatFree):
        build_index(g)
    # "A" hides inside another block's label
    g = FounderBlockGraph((("A",), ("CA",)), ((0, 1),))
    with pytest.raises(NotRepeatFree):
        build_index(g)


def test_serialize_round_trip(index_a, index_b):
    rng = random.Random(2)
    for ix in (index_a, index_b):
        data = serialize(ix)
        back = deserialize(data)
        assert back == ix
        assert back.c_text is None
        for _ in range(1000):
            q = "".join(rng.choice("ACGT") for _ in range(rng.randint(0, 8)))
            assert query(back, q) == query(ix, q)


def test_serialize_header(index_a):
    data = serialize(index_a)
    assert data[:4] == b"FBGI"
    assert data[4] == fbg.FORMAT_VERSION
    _, _, sigma, n, block, size = fbg._HEADER.unpack_from(data)
    assert (sigma, n, block, size) == (4, 16, fbg.OCC_BLOCK, len(data))
    # header + alphabet + separator bits + 2-bit BWT + two mark bitvectors
    assert size == fbg._HEADER.size + 4 + 2 + 4 + 2 + 2


def test_serialize_wide_alphabet():
    g = build_graph(MSA.from_rows(["MKVLA", "MRVLA", "MKWLA"]), Segmentation(((1, 5),)))
    ix = build_index(g)
    assert ix.sigma > 4
    assert deserialize(serialize(ix)) == ix


def test_deserialize_errors(index_a):
    data = serialize(index_a)
    with pytest.raises(BadMagic):
        deserialize(b"XXXX" + data[4:])
    with pytest.raises(BadMagic):
        deserialize(b"")
    with pytest.raises(VersionMismatch):
        deserialize(data[:4] + bytes([99]) + data[5:])
    with pytest.raises(TruncatedStream):
        deserialize(data[:-1])
    with pytest.raises(TruncatedStream):
        deserialize(data[:10])
    with pytest.raises(FBGError):
        deserialize(data + b"\0")


def test_occ_sampling_boundaries():
    rng = random.Random(9)
    rows = ["".join(rng.choice("ACGT") for _ in range(60)) for _ in range(5)]
    msa = MSA.from_rows(rows)
    seg, _, _ = segment(msa)
    ix = build_index(build_graph(msa, seg))
    assert len(ix) > 2 * fbg.OCC_BLOCK
    for a in range(ix.sigma + 1):
        running = 0
        for i in range(len(ix) + 1):
            assert ix.occ(a, i) == running
            if i < len(ix):
                running += ix.bwt[i] == a


def test_operation_count(monkeypatch, index_b):
    calls = {"n": 0}
    real_expand, real_extend = fbg.expand, fbg.backward_extend

    def counting_expand(ix, st):
        calls["n"] += 1
        return real_expand(ix, st)

    def counting_extend(ix, st, a):
        calls["n"] += 1
        return real_extend(ix, st, a)

    monkeypatch.setattr(fbg, "expand", counting_expand)
    monkeypatch.setattr(fbg, "backward_extend", counting_extend)
    for q in ["ACCATG", "GATT", "AAAA", "ACGATGX", "CAT"]:
        calls["n"] = 0
        search(index_b, q)
        assert calls["n"] <= 2 * len(q)


def test_index_invariants_random():
    for msa in random_instances(150, seed=61):
        seg, _, _ = segment(msa)
        g = build_graph(msa, seg)
        ix = build_index(g)
        intervals = ix.marked_intervals()
        assert ix.mark_b.ones == ix.mark_e.ones == g.num_nodes == len(intervals)
        assert all(k1 < i2 for (_, k1), (i2, _) in zip(intervals, intervals[1:]))
        by_label = {
            naive_interval(ix.c_text, bytes(ix.encode(label))): v for v, label in enumerate(g.labels)
        }
        assert sorted(by_label) == intervals
        for (i, k), v in by_label.items():
            degree = len(g.in_adj[v]) + len(g.out_adj[v]) if g.edges else 1
            assert k - i + 1 == degree
        for row in msa.rows:
            for i in range(len(row)):
                for j in range(i + 1, len(row) + 1):
                    assert query(ix, row[i:j])
