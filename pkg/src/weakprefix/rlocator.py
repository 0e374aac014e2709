"""Range locator: node name to the rank interval of the leaves below it.

Every node name x maps to two keys of a sorted set P, x with its trailing
zeros removed and the same for the length-|x| successor of x.  A monotone
hash sends keys to their rank in P, and a bit vector over P marking the
stripped leaf names turns that rank into a leaf rank.
"""

from __future__ import annotations

from .bitcore import (EMPTY, BitString, PrefixHasher, bitlength, fingerprint,
                      strip_trailing_zeros, trailing_zeros)
from .serial import Reader, Writer
from .succinct import RankSelectBits, StaticFunction
from .trie import CompactedTrie

BASELINE = "baseline"
LENGTH_SPLIT = "length-split"
VARIANTS = (BASELINE, LENGTH_SPLIT)


def stripped_successor(x: BitString) -> BitString | None:
    """(x+)^<-: x up to its last zero, then a one; None when x is all ones."""
    ones = trailing_zeros(~x.value) if x.length else 0
    if ones >= x.length:
        return None
    z = x.length - ones - 1
    return BitString(z + 1, (x.value >> (ones + 1) << 1) | 1)


def build_P(trie: CompactedTrie) -> tuple:
    """Sorted distinct keys of P and the leaf marks over them."""
    keys = set()
    for k in trie.internal_nodes():
        e = trie.extent(k)
        keys.add(strip_trailing_zeros(e))
        e1 = e.append_bit(1)
        keys.add(e1)
        succ = stripped_successor(e1)
        if succ is not None:
            keys.add(succ)
    marked = {strip_trailing_zeros(trie.name(k)) for k in trie.leaves()}
    ordered = sorted(keys)
    marks = [1 if x in marked else 0 for x in ordered]
    return ordered, marks


class MonotoneHash:
    """Key to lexicographic rank among the build keys; arbitrary elsewhere.

    ``baseline`` stores each rank explicitly.  ``length-split`` splits keys at
    ell_P * ceil(log n) bits: short keys get a rank among short keys, mapped
    back through select on a short/long marker vector, while long keys store
    their global rank directly.
    """

    def __init__(self, variant: str = BASELINE):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        self.variant = variant
        self.n = 0
        self.threshold = 0
        self.ranks = StaticFunction()
        self.short_ranks = StaticFunction()
        self.long_ranks = StaticFunction()
        self.is_short: RankSelectBits | None = None

    @classmethod
    def build(cls, keys: list, variant: str = BASELINE, seed: int = 0,
              hash_seed: int = 0) -> "MonotoneHash":
        fps = [fingerprint(x, hash_seed) for x in keys]
        return cls.from_fingerprints(fps, [x.length for x in keys], variant, seed, hash_seed)

    @classmethod
    def from_fingerprints(cls, fps: list, lengths: list, variant: str = BASELINE,
                          seed: int = 0, hash_seed: int = 0) -> "MonotoneHash":
        """``fps`` must be listed in key order."""
        obj = cls(variant)
        n = obj.n = len(fps)
        width = bitlength(n - 1) if n > 1 else 0
        if variant == BASELINE:
            obj.ranks = StaticFunction.from_fingerprints(fps, list(range(n)), width, seed, hash_seed)
            return obj
        if n <= 1:
            return obj
        logn = max(1, (n - 1).bit_length())
        total = sum(lengths)
        # short iff |x| < (total / n) * logn
        obj.threshold = -(-total * logn // n)
        short = [ln * n < total * logn for ln in lengths]
        obj.is_short = RankSelectBits.from_bits(short)
        s_fps = [fp for fp, s in zip(fps, short) if s]
        l_fps = [fp for fp, s in zip(fps, short) if not s]
        l_vals = [r for r, s in enumerate(short) if not s]
        obj.short_ranks = StaticFunction.from_fingerprints(
            s_fps, list(range(len(s_fps))), bitlength(max(len(s_fps) - 1, 0)), seed, hash_seed)
        obj.long_ranks = StaticFunction.from_fingerprints(
            l_fps, l_vals, width, seed ^ 0x3C6EF372, hash_seed)
        obj._total = total
        obj._logn = logn
        return obj

    def eval_fp(self, fp: int, length: int) -> int:
        if self.variant == BASELINE:
            return self.ranks.get_fp(fp)
        if self.n <= 1:
            return 0
        if length * self.n < self._total * self._logn:
            r = self.short_ranks.get_fp(fp)
            count = self.short_ranks.n
            if count == 0:
                return 0
            return self.is_short.select(min(r, count - 1))
        return self.long_ranks.get_fp(fp)

    def eval(self, key: BitString) -> int:
        return self.eval_fp(fingerprint(key, self._hash_seed()), key.length)

    def _hash_seed(self) -> int:
        return self.ranks.hash_seed if self.variant == BASELINE else self.short_ranks.hash_seed

    def long_key_count(self) -> int:
        return self.long_ranks.n if self.variant == LENGTH_SPLIT else 0

    def size_in_bits(self) -> int:
        if self.variant == BASELINE:
            return self.ranks.size_in_bits()
        bits = self.short_ranks.size_in_bits() + self.long_ranks.size_in_bits()
        if self.is_short is not None:
            bits += self.is_short.size_in_bits()
        return bits

    def dump(self, w: Writer):
        w.text(self.variant)
        w.u64(self.n)
        if self.variant == BASELINE:
            self.ranks.dump(w)
            return
        w.u8(self.is_short is not None)
        if self.is_short is None:
            return
        w.u64(self._total)
        w.u64(self._logn)
        w.u64(self.threshold)
        self.is_short.dump(w)
        self.short_ranks.dump(w)
        self.long_ranks.dump(w)

    @classmethod
    def load(cls, r: Reader) -> "MonotoneHash":
        obj = cls(r.text())
        obj.n = r.u64()
        if obj.variant == BASELINE:
            obj.ranks = StaticFunction.load(r)
            return obj
        if r.u8():
            obj._total = r.u64()
            obj._logn = r.u64()
            obj.threshold = r.u64()
            obj.is_short = RankSelectBits.load(r)
            obj.short_ranks = StaticFunction.load(r)
            obj.long_ranks = StaticFunction.load(r)
        return obj


def build_length_split_mmph(keys: list, seed: int = 0, hash_seed: int = 0) -> MonotoneHash:
    return MonotoneHash.build(keys, LENGTH_SPLIT, seed, hash_seed)


class RangeLocator:
    def __init__(self):
        self.n = 0
        self.hash_seed = 0
        self.h = MonotoneHash()
        self.b = RankSelectBits.from_bits([])
        self.key_count = 0
        self.key_bits = 0

    @classmethod
    def build(cls, trie: CompactedTrie, variant: str = BASELINE, seed: int = 0,
              hash_seed: int = 0) -> "RangeLocator":
        obj = cls()
        obj.n = trie.n
        obj.hash_seed = hash_seed
        keys, marks = build_P(trie)
        obj.keys = keys
        obj.key_count = len(keys)
        obj.key_bits = sum(x.length for x in keys)
        obj.h = MonotoneHash.build(keys, variant, seed, hash_seed)
        obj.b = RankSelectBits.from_bits(marks)
        return obj

    def _rank_of(self, fp: int, length: int) -> int:
        pos = self.h.eval_fp(fp, length)
        b = self.b
        return b.rank(pos if pos < b.n else b.n)

    def locate_prefix(self, p: BitString, hasher: PrefixHasher, name_len: int) -> tuple:
        """Interval for the node named p[0..name_len), hashing through ``hasher``."""
        if name_len == 0:
            return 0, self.n
        x = p.value >> (p.length - name_len)
        stripped = name_len - trailing_zeros(x) if x else 0
        i = self._rank_of(hasher.hash_prefix(stripped), stripped)
        ones = trailing_zeros(~x)
        if ones >= name_len:
            return i, self.n
        z = name_len - ones - 1
        j = self._rank_of(hasher.hash_extended(z, 1), z + 1)
        return i, j if j > i else i

    def locate(self, x: BitString) -> tuple:
        return self.locate_prefix(x, PrefixHasher(x, self.hash_seed), x.length)

    def size_report(self) -> dict:
        return {
            "mmph_bits": self.h.size_in_bits(),
            "b_bits": self.b.size_in_bits(),
            "variant": self.h.variant,
        }

    def size_in_bits(self) -> int:
        return self.h.size_in_bits() + self.b.size_in_bits()

    def dump(self, w: Writer):
        w.u64(self.n)
        w.u64(self.hash_seed)
        w.u64(self.key_count)
        w.u64(self.key_bits)
        self.h.dump(w)
        self.b.dump(w)

    @classmethod
    def load(cls, r: Reader) -> "RangeLocator":
        obj = cls()
        obj.n = r.u64()
        obj.hash_seed = r.u64()
        obj.key_count = r.u64()
        obj.key_bits = r.u64()
        obj.h = MonotoneHash.load(r)
        obj.b = RankSelectBits.load(r)
        return obj


def build_range_locator(trie: CompactedTrie, variant: str = BASELINE, seed: int = 0,
                        hash_seed: int = 0) -> RangeLocator:
    return RangeLocator.build(trie, variant, seed, hash_seed)


__all__ = ["build_P", "MonotoneHash", "RangeLocator", "build_range_locator",
           "build_length_split_mmph", "stripped_successor", "BASELINE", "LENGTH_SPLIT", "EMPTY"]
