import random

import numpy as np
import pytest

from fbgraph.errors import NoValidSegmentation, OutOfBounds, TooLarge
from fbgraph.msa import MSA
from fbgraph.segmentation import (
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
from fbgraph.text_index import build_text_index
from oracles import random_instances, scan_optimal_score, scan_valid_ranges, scan_valid_segment


def v_of(rows):
    return compute_valid_ranges(build_text_index(MSA.from_rows(rows)))[1:].tolist()


def random_monotone_v(rng: random.Random, n: int) -> np.ndarray:
    v = np.full(n + 1, UNDEFINED, dtype=np.int64)
    undefined = rng.choice([0, 0, rng.randint(0, n)])
    prev = 0
    for j in range(undefined + 1, n + 1):
        step = rng.choice([0, 0, 1, rng.randint(0, j)])
        prev = min(j - 1, prev + step)
        v[j] = prev
    return v


# --- validity ---------------------------------------------------------------


@pytest.mark.parametrize("a,b,expected", [(1, 1, True), (2, 2, False), (1, 4, True)])
def test_is_valid_segment_examples(msa_a, a, b, expected):
    assert is_valid_segment(build_text_index(msa_a), a, b) is expected


def test_is_valid_segment_bounds(msa_a):
    idx = build_text_index(msa_a)
    with pytest.raises(OutOfBounds):
        is_valid_segment(idx, 0, 1)
    with pytest.raises(OutOfBounds):
        is_valid_segment(idx, 3, 2)
    with pytest.raises(OutOfBounds):
        is_valid_segment(idx, 1, 5)


@pytest.mark.parametrize(
    "rows,expected",
    [
        (["ACGT", "AGGT"], [0, 0, 1, 3]),
        (["ACGT"], [0, 1, 2, 3]),
        # "A" occurs at columns 1 and 2, so only the full segment [1..2] is valid
        (["AA"], [UNDEFINED, 0]),
        (["AC"], [0, 1]),
    ],
)
def test_valid_range_examples(rows, expected):
    assert scan_valid_ranges(rows)[1:] == expected
    assert v_of(rows) == expected


def test_closure_and_validity_on_random():
    for msa in random_instances(150, seed=21, max_n=12):
        idx = build_text_index(msa)
        rows = msa.rows
        n = msa.n
        ok = {(a, b): is_valid_segment(idx, a, b) for a in range(1, n + 1) for b in range(a, n + 1)}
        for (a, b), valid in ok.items():
            assert valid == scan_valid_segment(rows, a, b)
            if valid:
                assert all(ok[(a2, b)] for a2 in range(1, a))
                if b < n:
                    assert ok[(a, b + 1)]
        # the full-width segment is always valid
        assert ok[(1, n)]


def test_valid_ranges_random_against_scan():
    for msa in random_instances(200, seed=22):
        v = compute_valid_ranges(build_text_index(msa))
        assert v.tolist() == scan_valid_ranges(msa.rows)


# --- scores -------------------------------------------------------------------


def test_reference_scores_msa_a():
    t = compute_scores_reference(np.array([UNDEFINED, 0, 0, 1, 3]))
    assert t.s.tolist() == [0, 1, 2, 2, 2]
    assert t.x[1:].tolist() == [0, 0, 1, 3]


def test_reference_infinite():
    t = compute_scores_reference(np.array([UNDEFINED, UNDEFINED, 0]))
    assert t.s[1] == INF and t.x[1] == UNDEFINED
    assert t.s[2] == 2 and t.x[2] == 0


def test_linear_scores_msa_a():
    v = np.array([UNDEFINED, 0, 0, 1, 3])
    assert compute_scores(v) == compute_scores_reference(v)


def test_all_single_columns():
    n = 9
    v = np.array([UNDEFINED] + list(range(n)))
    t = compute_scores(v)
    assert t.s[1:].tolist() == [1] * n
    assert t.x[1:].tolist() == list(range(n))


def test_single_column():
    t = compute_scores(np.array([UNDEFINED, 0]))
    assert t.s.tolist() == [0, 1] and t.x[1] == 0


def test_linear_equals_reference_synthetic():
    rng = random.Random(31)
    for _ in range(300):
        n = rng.choice([1, 2, 5, 20, 100, rng.randint(1, 2000)])
        v = random_monotone_v(rng, n)
        fast, ref = compute_scores(v), compute_scores_reference(v)
        assert fast == ref


def test_score_invariants():
    rng = random.Random(32)
    for _ in range(200):
        n = rng.randint(1, 300)
        t = compute_scores(random_monotone_v(rng, n))
        finite = t.s < INF
        js = np.arange(n + 1)
        assert np.all(t.s[finite] <= np.maximum(js[finite], 0))
        xs = t.x[t.x != UNDEFINED]
        assert np.all(np.diff(xs) >= 0)


# --- traceback ----------------------------------------------------------------


def test_traceback_msa_a(msa_a):
    t = compute_scores(compute_valid_ranges(build_text_index(msa_a)))
    seg = traceback(t)
    assert seg.blocks == ((1, 1), (2, 3), (4, 4))
    assert seg.max_width == t.score == 2


def test_traceback_single_block():
    t = ScoreTable(np.array([0, INF, INF, 3]), np.array([UNDEFINED, UNDEFINED, UNDEFINED, 0]))
    assert traceback(t).blocks == ((1, 3),)


def test_traceback_infeasible():
    t = ScoreTable(np.array([0, INF]), np.array([UNDEFINED, UNDEFINED]))
    with pytest.raises(NoValidSegmentation):
        traceback(t)


def test_segmentation_covers():
    assert Segmentation(((1, 2), (3, 5))).covers(5)
    assert not Segmentation(((1, 2), (4, 5))).covers(5)
    assert not Segmentation(((1, 2), (3, 4))).covers(5)
    assert not Segmentation(()).covers(1)


# --- brute force --------------------------------------------------------------


def test_brute_force_examples(msa_a):
    assert brute_force_optimal(msa_a) == 2
    assert brute_force_optimal(MSA.from_rows(["ACGT"])) == 1
    assert brute_force_optimal(MSA.from_rows(["AA", "AA"])) == 2


def test_brute_force_matches_scanning_oracle():
    for msa in random_instances(60, seed=41, max_n=9):
        expected = scan_optimal_score(msa.rows)
        got = brute_force_optimal(msa)
        assert (got >= INF and expected == float("inf")) or got == expected


def test_brute_force_too_large():
    with pytest.raises(TooLarge):
        brute_force_optimal(MSA.from_rows(["A" * 21]))


def test_pipeline_segments_are_valid():
    for msa in random_instances(100, seed=42):
        idx = build_text_index(msa)
        seg, table, v = segment(msa, idx)
        assert seg.covers(msa.n)
        assert seg.max_width == table.score
        assert all(is_valid_segment(idx, a, b) for a, b in seg)
