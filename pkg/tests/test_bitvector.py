import itertools
import random

import pytest

from fbgraph.bitvector import RankSelectBitvector
from fbgraph.errors import OutOfBounds


def bv(s: str) -> RankSelectBitvector:
    return RankSelectBitvector([int(c) for c in s])


def test_rank_example():
    assert bv("00101").rank(3) == 1


def test_select_example():
    assert bv("00101").select(2) == 5


def test_empty_case():
    b = bv("00000")
    assert b.rank(5) == 0
    with pytest.raises(OutOfBounds):
        b.select(1)


def test_bounds():
    b = bv("101")
    assert b.rank(0) == 0
    with pytest.raises(OutOfBounds):
        b.rank(4)
    with pytest.raises(OutOfBounds):
        b.select(0)
    with pytest.raises(OutOfBounds):
        b.select(3)


def check_all(bits):
    b = RankSelectBitvector(bits)
    ones = [i + 1 for i, x in enumerate(bits) if x]
    assert b.ones == len(ones) == b.rank(len(bits))
    for i in range(len(bits) + 1):
        assert b.rank(i) == sum(bits[:i])
    for j, pos in enumerate(ones, start=1):
        assert b.select(j) == pos
        assert b.rank(b.select(j)) == j
    for i in range(1, len(bits) + 1):
        assert b[i] == bits[i - 1]
        if bits[i - 1]:
            assert b.select(b.rank(i)) <= i


@pytest.mark.parametrize("length", range(0, 17))
def test_exhaustive_small(length):
    for bits in itertools.product((0, 1), repeat=length):
        check_all(list(bits))


def test_randomized_long():
    rng = random.Random(5)
    for length in (63, 64, 65, 127, 128, 129, 1000, 5000):
        for density in (0.01, 0.5, 0.97):
            check_all([int(rng.random() < density) for _ in range(length)])


def test_bytes_round_trip():
    rng = random.Random(1)
    for length in (0, 1, 7, 8, 9, 200):
        b = RankSelectBitvector([rng.randint(0, 1) for _ in range(length)])
        assert RankSelectBitvector.from_bytes(b.to_bytes(), length) == b


def test_from_positions():
    b = RankSelectBitvector.from_positions(6, [2, 6])
    assert b.to_array().tolist() == [0, 1, 0, 0, 0, 1]
    with pytest.raises(OutOfBounds):
        RankSelectBitvector.from_positions(3, [4])
