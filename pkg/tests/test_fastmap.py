from hypothesis import given
from hypothesis import strategies as st
import pytest

from helpers import bs, exit_name, prefix_free_sets, toy_strings
from weakprefix.errors import InvalidC
from weakprefix.fastmap import ConstTimeMap, LookupCount, build_const_map, cut_lengths, level_base
from weakprefix.serial import Reader, Writer
from weakprefix.trie import build_trie


@pytest.fixture
def toy_map():
    return build_const_map(build_trie(toy_strings()), c=2, seed=8, hash_seed=21)


def test_level_base():
    assert level_base(11, 2) == 4
    for avg in range(1, 300):
        for c in (2, 3, 4):
            t = level_base(avg, c)
            assert t ** c >= avg and (t == 1 or (t - 1) ** c < avg)


def test_cut_lengths_toy():
    assert cut_lengths(0, 6, 4, 2) == [1, 2, 3, 4]
    assert cut_lengths(6, 10, 4, 2) == [7, 8]
    assert cut_lengths(10, 13, 4, 2) == [11, 12]


@given(st.integers(0, 500), st.integers(0, 500), st.integers(2, 6), st.integers(2, 4))
def test_cut_lengths_cover_level_multiples(i, d, t, c):
    j = i + d
    cuts = cut_lengths(i, j, t, c)
    assert all(i < v <= j for v in cuts) and cuts == sorted(set(cuts))
    top = t ** (c - 1)
    for v in range(i + 1, j + 1):
        if v % top == 0:
            assert v in cuts
    first = -(-(i + 1) // t) * t
    assert all(v in cuts for v in range(i + 1, min(first, j) + 1))


def test_toy_F_and_G(toy_map):
    F, G = toy_map.F, toy_map.G
    assert toy_map.t == 4
    assert F.get(bs("0010011")) == 0 and F.get(bs("00100110")) == 1
    for k in range(1, 5):
        assert F.get(bs("0010"[:k])) == k
    g = {"": 6, "0010010": 2, "0010011": 3, "00100110100": 2, "00100110101": 0}
    for name, v in g.items():
        assert G.get(bs(name)) == v


def test_toy_exit_names(toy_map):
    for p, want in (("001001101", "0010011"), ("00100110100", "00100110100"), ("001001", "")):
        cnt = LookupCount()
        assert str(toy_map.find_exit_name(bs(p), cnt)) == want
        assert cnt.f <= 2 and cnt.g <= 2


def test_invalid_c():
    with pytest.raises(InvalidC):
        build_const_map(build_trie(toy_strings()), c=1)


@given(prefix_free_sets.filter(lambda xs: len(xs) > 1), st.integers(2, 4), st.integers(0, 2**64 - 1))
def test_exit_names_match_oracle(texts, c, seed):
    trie = build_trie([bs(t) for t in texts])
    cmap = build_const_map(trie, c, seed, seed ^ 0x1234)
    for t in texts:
        for k in range(len(t) + 1):
            p = t[:k]
            cnt = LookupCount()
            assert str(cmap.find_exit_name(bs(p), cnt)) == exit_name(texts, p)
            assert cnt.f <= c and cnt.g <= c


def test_dump_load(toy_map):
    w = Writer()
    toy_map.dump(w)
    again = ConstTimeMap.load(Reader(w.getvalue()))
    assert str(again.find_exit_name(bs("001001101"))) == "0010011"
