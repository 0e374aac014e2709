import random

from hypothesis import given
from hypothesis import strategies as st
import pytest

from helpers import bs, interval, node_names, prefix_free_sets, toy_strings
from weakprefix.bitcore import BitString
from weakprefix.rlocator import (BASELINE, LENGTH_SPLIT, MonotoneHash, RangeLocator, build_P,
                                 build_length_split_mmph, build_range_locator, stripped_successor)
from weakprefix.serial import Reader, Writer
from weakprefix.trie import build_trie

TOY_P = ["001001", "0010011", "001001101", "00100110101", "0010011011", "00101"]


def test_toy_P_and_marks():
    keys, marks = build_P(build_trie(toy_strings()))
    assert [str(k) for k in keys] == TOY_P
    assert marks == [1, 0, 1, 1, 0, 0]


def test_two_leaf_P():
    keys, marks = build_P(build_trie([bs("0"), bs("1")]))
    assert [str(k) for k in keys] == ["", "1"]
    assert marks == [1, 1]


def test_stripped_successor():
    assert str(stripped_successor(bs("0010011"))) == "00101"
    assert str(stripped_successor(bs("00100110101"))) == "0010011011"
    assert stripped_successor(bs("111")) is None


@pytest.mark.parametrize("variant", [BASELINE, LENGTH_SPLIT])
def test_toy_locate(variant):
    loc = build_range_locator(build_trie(toy_strings()), variant, seed=2, hash_seed=3)
    assert loc.locate(bs("0010011")) == (1, 3)
    assert loc.locate(BitString()) == (0, 3)
    assert loc.locate(bs("00100110100")) == (1, 2)
    assert loc.locate(bs("0010010")) == (0, 1)
    h = loc.h
    assert [h.eval(bs(x)) for x in TOY_P] == list(range(6))


@given(prefix_free_sets.filter(lambda xs: len(xs) > 1), st.integers(0, 2**64 - 1))
def test_locate_matches_oracle_on_node_names(texts, seed):
    trie = build_trie([bs(t) for t in texts])
    base = build_range_locator(trie, BASELINE, seed, seed + 1)
    split = build_range_locator(trie, LENGTH_SPLIT, seed, seed + 1)
    keys, marks = build_P(trie)
    assert len(keys) <= 3 * (len(texts) - 1)
    for x in node_names(texts):
        want = interval(texts, x)
        assert base.locate(bs(x)) == want
        assert split.locate(bs(x)) == want


def test_length_split_long_side():
    rng = random.Random(4)
    short = {BitString(20, rng.getrandbits(20)) for _ in range(1000)}
    long_ = {BitString(10_000, rng.getrandbits(10_000)) for _ in range(10)}
    keys = sorted(short | long_)
    h = build_length_split_mmph(keys, seed=5, hash_seed=6)
    assert h.long_key_count() == 10
    assert [h.eval(k) for k in keys] == list(range(len(keys)))


def test_length_split_degenerate_cases():
    toy_keys = [bs(x) for x in TOY_P]
    h = build_length_split_mmph(toy_keys, 1, 2)
    assert h.long_key_count() == 0
    base = MonotoneHash.build(toy_keys, BASELINE, 1, 2)
    assert [h.eval(k) for k in toy_keys] == [base.eval(k) for k in toy_keys]
    one = build_length_split_mmph([bs("0110")], 1, 2)
    assert one.eval(bs("0110")) == 0


def test_dump_load():
    loc = build_range_locator(build_trie(toy_strings()), LENGTH_SPLIT, 7, 8)
    w = Writer()
    loc.dump(w)
    again = RangeLocator.load(Reader(w.getvalue()))
    assert again.locate(bs("0010011")) == (1, 3)
