import random

from hypothesis import given
from hypothesis import strategies as st
import pytest

from helpers import bs
from weakprefix.bitcore import BitString
from weakprefix.serial import Reader, Writer
from weakprefix.succinct import (CompressedFunction, EliasFanoSeq, Mphf, NotMonotone,
                                 RankSelectBits, RelativeDictionary, StaticFunction)


def rand_keys(rng, n, max_len=80):
    keys = set()
    while len(keys) < n:
        k = rng.randint(1, max_len)
        keys.add(BitString(k, rng.getrandbits(k)))
    return sorted(keys)


def round_trip(obj, cls):
    w = Writer()
    obj.dump(w)
    return cls.load(Reader(w.getvalue()))


def test_rank_examples():
    b = RankSelectBits.from_bits([1, 0, 1, 1, 0, 0])
    assert b.rank(5) == 3
    assert b.rank(0) == 0
    assert b.rank(6) == 3


@given(st.lists(st.booleans(), max_size=3000))
def test_rank_select_match_scan(bits):
    b = RankSelectBits.from_bits(bits)
    ones = [i for i, v in enumerate(bits) if v]
    zeros = [i for i, v in enumerate(bits) if not v]
    for p in range(0, len(bits) + 1, max(1, len(bits) // 50)):
        assert b.rank(p) == sum(bits[:p])
    for r in range(0, len(ones), max(1, len(ones) // 50)):
        assert b.select(r) == ones[r]
    for r in range(0, len(zeros), max(1, len(zeros) // 50)):
        assert b.select0(r) == zeros[r]
    assert round_trip(b, RankSelectBits).rank(len(bits)) == len(ones)


def test_elias_fano_examples():
    assert EliasFanoSeq([0, 9, 22], 33).tolist() == [0, 9, 22]
    assert EliasFanoSeq([0]).tolist() == [0]
    assert EliasFanoSeq([5, 5, 5]).tolist() == [5, 5, 5]
    with pytest.raises(NotMonotone):
        EliasFanoSeq([3, 2])


@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=500))
def test_elias_fano_round_trip(values):
    values.sort()
    ef = EliasFanoSeq(values, values[-1] + 1 + len(values))
    assert ef.tolist() == values
    for i in range(len(values) - 1):
        assert ef.pair(i) == (values[i], values[i + 1])
    assert round_trip(ef, EliasFanoSeq).tolist() == values


def test_static_function_toy():
    keys = [bs("0010"), bs("00100110")]
    sf = StaticFunction.build(keys, [6, 10], seed=3, hash_seed=5)
    assert [sf.get(k) for k in keys] == [6, 10]
    empty = StaticFunction.build([], [])
    assert empty.size_in_bits() == 0


def test_static_function_random_keys():
    rng = random.Random(11)
    keys = rand_keys(rng, 10_000)
    vals = [rng.getrandbits(16) for _ in keys]
    sf = StaticFunction.build(keys, vals, 16, seed=1, hash_seed=2)
    assert all(sf.get(k) == v for k, v in zip(keys, vals))
    again = round_trip(sf, StaticFunction)
    assert all(again.get(k) == v for k, v in zip(keys[:500], vals[:500]))


def test_mphf_toy_and_single():
    keys = [bs(x) for x in ["001001", "0010011", "001001101", "00100110101", "0010011011", "00101"]]
    m = Mphf.build(keys, seed=4)
    assert sorted(m.eval(k) for k in keys) == list(range(6))
    assert Mphf.build([bs("1")]).eval(bs("1")) == 0


def test_mphf_random_bijection():
    rng = random.Random(5)
    keys = rand_keys(rng, 10_000)
    m = Mphf.build(keys, seed=9, hash_seed=1)
    seen = bytearray(len(keys))
    for k in keys:
        v = m.eval(k)
        assert 0 <= v < len(keys) and not seen[v]
        seen[v] = 1


def test_compressed_function_examples():
    keys = [bs("0010"), bs("00100110")]
    cf = CompressedFunction.build(keys, [2, 2], seed=1)
    assert [cf.get(k) for k in keys] == [2, 2]
    zero = CompressedFunction.build(keys, [0, 0])
    assert zero.payload_bits == 0 and zero.size_in_bits() == zero.overhead_bits()
    rng = random.Random(2)
    many = rand_keys(rng, 1000)
    vals = list(range(1, 1001))
    cf = CompressedFunction.build(many, vals, seed=2)
    assert cf.payload_bits == sum((v + 1).bit_length() - 1 for v in vals)
    assert all(cf.get(k) == v for k, v in zip(many, vals))


@given(st.lists(st.integers(0, 5000), min_size=1, max_size=300), st.integers(0, 2**32))
def test_compressed_function_exact(vals, seed):
    keys = [BitString(20, i) for i in range(len(vals))]
    cf = CompressedFunction.build(keys, vals, seed=seed)
    assert [cf.get(k) for k in keys] == vals
    again = round_trip(cf, CompressedFunction)
    assert [again.get(k) for k in keys] == vals


TOY_HANDLE_KEYS = ["0", "00", "0010", "0010010", "00100101", "0010011", "00100110",
             "00100110100", "001001101001", "00100110101"]


def test_relative_dictionary_examples():
    S = [bs(x) for x in TOY_HANDLE_KEYS]
    E = [bs("0010"), bs("00100110")]
    rd = RelativeDictionary.build(E, S, seed=1)
    assert [rd.contains(x) for x in S] == [x in E for x in S]
    full = RelativeDictionary.build(S, S, seed=2)
    assert all(full.contains(x) for x in S)
    none = RelativeDictionary.build([], S, seed=3)
    assert not any(none.contains(x) for x in S)


def test_relative_dictionary_random():
    rng = random.Random(8)
    S = rand_keys(rng, 5000)
    E = set(rng.sample(S, 700))
    rd = RelativeDictionary.build(sorted(E), S, seed=4, hash_seed=6)
    assert all(rd.contains(x) == (x in E) for x in S)
    again = round_trip(rd, RelativeDictionary)
    assert all(again.contains(x) == (x in E) for x in S)
