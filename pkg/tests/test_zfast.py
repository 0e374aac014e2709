from hypothesis import given
from hypothesis import strategies as st
import pytest

from helpers import bs, exit_name, prefix_free_sets, toy_strings
from weakprefix.bitcore import INFINITY, PrefixHasher
from weakprefix.serial import Reader, Writer
from weakprefix.trie import build_trie
from weakprefix.zfast import HollowZFastPrefixTrie, build_zfast

INFINITE_KEYS = ["0", "00", "0010010", "00100101", "0010011", "00100110100",
                 "001001101001", "00100110101"]


@pytest.fixture
def toy_zfast():
    return build_zfast(build_trie(toy_strings()), seed=17, hash_seed=99)


def lookup(z, text):
    return z.lookup_T(PrefixHasher(bs(text), z.hash_seed), len(text))


def test_toy_handle_map(toy_zfast):
    assert lookup(toy_zfast, "0010") == 6
    assert lookup(toy_zfast, "00100110") == 10
    for key in INFINITE_KEYS:
        assert lookup(toy_zfast, key) == INFINITY, key


def test_toy_key_set_is_exact():
    trie = build_trie(toy_strings())
    keys = set()
    internal = {}
    for k, nd in enumerate(trie.nodes):
        a = trie.node_attributes(k)
        keys.update(str(x) for x in a.pseudohandles)
        keys.add(str(a.handle))
        if not nd.is_leaf:
            internal[str(a.handle)] = nd.extent_len
    assert internal == {"0010": 6, "00100110": 10}
    assert keys - set(internal) == set(INFINITE_KEYS)


def test_toy_exit_names(toy_zfast):
    assert str(toy_zfast.find_exit_name(bs("0010011"))) == "0010011"
    assert str(toy_zfast.find_exit_name(bs("0"))) == ""
    assert str(toy_zfast.find_exit_name(bs("001001101001"))) == "00100110100"
    assert str(toy_zfast.find_exit_name(bs("001001"))) == ""


def test_single_string():
    z = build_zfast(build_trie([bs("101")]), 1, 2)
    assert z.mphf is None
    for k in range(4):
        assert str(z.find_exit_name(bs("101"[:k]))) == ""


def test_iteration_bound_on_toy(toy_zfast):
    for s in ("001001010", "0010011010010", "00100110101"):
        for k in range(1, len(s) + 1):
            tr = toy_zfast.trace_exit_name(bs(s[:k]))
            assert tr.iterations <= k.bit_length()


@given(prefix_free_sets.filter(lambda xs: len(xs) > 1), st.integers(0, 2**64 - 1))
def test_exit_names_match_oracle(texts, seed):
    trie = build_trie([bs(t) for t in texts])
    z = build_zfast(trie, seed, seed ^ 0xABCDEF)
    for t in texts:
        for k in range(len(t) + 1):
            p = t[:k]
            assert str(z.find_exit_name(bs(p))) == exit_name(texts, p)


def test_root_with_empty_extent():
    texts = ["00", "01", "1"]
    z = build_zfast(build_trie([bs(t) for t in texts]), 3, 4)
    for p in ("0", "1", "00", "01"):
        assert str(z.find_exit_name(bs(p))) == exit_name(texts, p)


def test_deltas_bounded_by_compacted_length():
    import random
    rng = random.Random(3)
    strings = {bs("".join(rng.choice("01") for _ in range(rng.randint(1, 60)))) for _ in range(80)}
    from helpers import prefix_free
    texts = prefix_free(str(s) for s in strings)
    trie = build_trie([bs(t) for t in texts])
    z = build_zfast(trie, 5, 6)
    for k in trie.internal_nodes():
        nd = trie.nodes[k]
        h = trie.handle_len(k)
        assert nd.extent_len - h <= nd.compacted_len
        assert z.lookup_T(trie.node_hasher(k, z.hash_seed), h) == nd.extent_len


def test_dump_load(toy_zfast):
    w = Writer()
    toy_zfast.dump(w)
    again = HollowZFastPrefixTrie.load(Reader(w.getvalue()))
    assert lookup(again, "00100110") == 10
    assert str(again.find_exit_name(bs("001001101001"))) == "00100110100"
