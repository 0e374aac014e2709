from fractions import Fraction

from hypothesis import given
import pytest

from helpers import TOY, bs, internal_extents, interval, prefix_free_sets, toy_strings
from weakprefix.bitcore import BitString
from weakprefix.errors import Duplicate, EmptyInput, NotPrefixFree
from weakprefix.trie import build_trie

GOLDEN_DUMP = """\
0 6 [0..6) handle=0010 pseudo={0,00}
7 9 [6..9) handle=00100101 pseudo={0010010}
7 10 [6..10) handle=00100110 pseudo={0010011}
11 13 [10..13) handle=001001101001 pseudo={00100110100}
11 11 [10..11) handle=00100110101 pseudo={}"""


@pytest.fixture
def toy():
    return build_trie(toy_strings())


def test_toy_golden_dump(toy):
    assert toy.dump() == GOLDEN_DUMP


def test_toy_internal_extents(toy):
    assert [str(toy.extent(k)) for k in toy.internal_nodes()] == ["001001", "0010011010"]


def test_single_and_pair():
    t = build_trie([bs("101")])
    assert t.internal_nodes() == [] and len(t.leaves()) == 1
    t = build_trie([bs("1"), bs("0")])
    assert [str(t.extent(k)) for k in t.internal_nodes()] == [""]
    assert [str(t.strings[t.nodes[k].lo]) for k in t.leaves()] == ["0", "1"]


def test_node_attributes(toy):
    root = toy.node_attributes(toy.root)
    assert str(root.handle) == "0010"
    assert [str(x) for x in root.pseudohandles] == ["0", "00"]
    inner = toy.node_attributes(2)
    assert str(inner.name) == "0010011" and str(inner.handle) == "00100110"
    assert [str(x) for x in inner.pseudohandles] == ["0010011"]
    leaf = toy.node_attributes(3)
    assert str(leaf.handle) == "001001101001"
    assert [str(x) for x in leaf.pseudohandles] == ["00100110100"]


def test_exit_node_oracle(toy):
    assert toy.exit_node_oracle(bs("0")) == toy.root
    assert str(toy.name(toy.exit_node_oracle(bs("0010011")))) == "0010011"
    k = toy.exit_node_oracle(bs("001001010"))
    assert toy.nodes[k].is_leaf and toy.nodes[k].lo == 0


def test_weak_prefix_oracle(toy):
    assert toy.weak_prefix_oracle(bs("0010011")) == (1, 3)
    assert toy.weak_prefix_oracle(bs("001001")) == (0, 3)
    i, j = toy.weak_prefix_oracle(bs("11"))
    assert i == j


def test_measures(toy):
    m = toy.measures()
    assert m.trie_measure == 17
    assert m.hollow_trie_measure == 6
    assert m.avg_internal_extent_len == 8
    assert m.avg_internal_extent_len <= toy.avg_len - 1


def test_validation_errors():
    with pytest.raises(EmptyInput):
        build_trie([])
    with pytest.raises(Duplicate) as exc:
        build_trie([bs("01"), bs("1"), bs("01")])
    assert sorted(exc.value.input_indices) == [0, 2]
    with pytest.raises(NotPrefixFree) as exc:
        build_trie([bs("011"), bs("1"), bs("01")])
    assert exc.value.input_indices == (2, 0)


@given(prefix_free_sets)
def test_structure_matches_text_oracles(texts):
    trie = build_trie([bs(t) for t in texts])
    assert [str(s) for s in trie.strings] == texts
    assert [str(trie.strings[trie.nodes[k].lo]) for k in trie.leaves()] == texts
    assert sorted(str(trie.extent(k)) for k in trie.internal_nodes()) == internal_extents(texts)
    for k, nd in enumerate(trie.nodes):
        a = trie.node_attributes(k)
        assert a.name + a.compacted_path == a.extent
        if not nd.is_leaf:
            assert nd.left >= 0 and nd.right >= 0
            assert (nd.lo, nd.hi) == interval(texts, str(a.extent))
    n = len(texts)
    m = trie.measures()
    assert m.trie_measure == 2 * n - 2 + sum(trie.nodes[k].compacted_len for k in range(len(trie.nodes)))
    if n > 1:
        ext = internal_extents(texts)
        mean = Fraction(sum(map(len, ext)), len(ext))
        assert m.avg_internal_extent_len == mean
        assert mean <= Fraction(sum(map(len, texts)), n) - 1


@given(prefix_free_sets)
def test_weak_prefix_oracle_matches_bisection(texts):
    trie = build_trie([bs(t) for t in texts])
    for t in texts[:5]:
        for k in range(len(t) + 1):
            assert trie.weak_prefix_oracle(bs(t[:k])) == interval(texts, t[:k])


def test_empty_string_is_rejected_with_others():
    with pytest.raises(NotPrefixFree):
        build_trie([BitString(), bs("1")])
