"""Bit strings, position arithmetic and incremental prefix hashing.

A :class:`BitString` is a length plus a non-negative integer whose binary
expansion, left-padded to ``length`` digits, spells the string.  Bit 0 of the
string is therefore the most significant bit; :meth:`BitString.words` lays the
string out in 64-bit words with bit 0 in the top bit of word 0.
"""

from __future__ import annotations

import struct
from functools import total_ordering
from typing import Iterable

from .errors import AllOnes, EmptyInput

WORD_BITS = 64
MASK64 = (1 << 64) - 1

# Mersenne prime 2**89 - 1: larger than any 64-bit word, so distinct words stay
# distinct coefficients of the hash polynomial.
HASH_PRIME = (1 << 89) - 1

INFINITY = MASK64


@total_ordering
class BitString:
    __slots__ = ("length", "value")

    def __init__(self, length: int = 0, value: int = 0):
        if length < 0 or value < 0 or value >> length:
            raise ValueError("value does not fit in length bits")
        self.length = length
        self.value = value

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        text = text.strip()
        if not text:
            return cls(0, 0)
        if text.strip("01"):
            raise ValueError(f"not a binary string: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitString":
        """Transcode bytes MSB-first, eight bits per byte."""
        return cls(8 * len(data), int.from_bytes(data, "big"))

    @classmethod
    def from_words(cls, length: int, words: Iterable[int]) -> "BitString":
        words = list(words)
        if len(words) != (length + WORD_BITS - 1) // WORD_BITS:
            raise ValueError("word count does not match length")
        value = int.from_bytes(struct.pack(f">{len(words)}Q", *words), "big") if words else 0
        pad = len(words) * WORD_BITS - length
        if value & ((1 << pad) - 1):
            raise ValueError("non-canonical padding bits")
        return cls(length, value >> pad)

    def words(self) -> tuple:
        nwords = (self.length + WORD_BITS - 1) // WORD_BITS
        if not nwords:
            return ()
        padded = self.value << (nwords * WORD_BITS - self.length)
        return struct.unpack(f">{nwords}Q", padded.to_bytes(nwords * 8, "big"))

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        if not self.length:
            return ""
        return format(self.value, "b").zfill(self.length)

    def __repr__(self) -> str:
        return f"BitString('{self}')"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self.length == other.length and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.length, self.value))

    def __lt__(self, other: "BitString") -> bool:
        la, lb = self.length, other.length
        m = la if la < lb else lb
        ta = self.value >> (la - m)
        tb = other.value >> (lb - m)
        if ta != tb:
            return ta < tb
        return la < lb

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.value >> (self.length - 1 - i)) & 1

    def prefix(self, k: int) -> "BitString":
        if not 0 <= k <= self.length:
            raise IndexError(k)
        return BitString(k, self.value >> (self.length - k))

    def startswith(self, other: "BitString") -> bool:
        k = other.length
        return k <= self.length and self.value >> (self.length - k) == other.value

    def __add__(self, other: "BitString") -> "BitString":
        return BitString(self.length + other.length, (self.value << other.length) | other.value)

    def append_bit(self, b: int) -> "BitString":
        return BitString(self.length + 1, (self.value << 1) | (b & 1))

    def is_all_ones(self) -> bool:
        return self.value == (1 << self.length) - 1

    def sort_key(self, width: int) -> tuple:
        """Key ordering strings of length <= width lexicographically."""
        return (self.value << (width - self.length), self.length)


EMPTY = BitString(0, 0)


def two_fattest(x: int, y: int) -> int:
    """The number in (x..y] with the most trailing zeros; 0 for an empty interval."""
    if x >= y:
        return 0
    return y & ~((1 << ((x ^ y).bit_length() - 1)) - 1)


def fattest_ladder(x: int, y: int) -> list:
    """Distinct values of two_fattest(x, t) for x < t <= y, increasing.

    The last element is two_fattest(x, y).
    """
    out = []
    v = x + 1
    while v <= y:
        out.append(v)
        v += v & -v
    return out


def trailing_zeros(v: int) -> int:
    return (v & -v).bit_length() - 1


def strip_trailing_zeros(x: BitString) -> BitString:
    if x.value == 0:
        return EMPTY
    tz = trailing_zeros(x.value)
    return BitString(x.length - tz, x.value >> tz)


def successor_same_length(x: BitString) -> BitString:
    if x.length == 0:
        raise EmptyInput("successor of the empty string")
    if x.is_all_ones():
        raise AllOnes(str(x))
    return BitString(x.length, x.value + 1)


def bitlength(n: int) -> int:
    """ceil(log2(n + 1))."""
    return n.bit_length()


def lcp(a: BitString, b: BitString) -> int:
    la, lb = a.length, b.length
    m = la if la < lb else lb
    diff = (a.value >> (la - m)) ^ (b.value >> (lb - m))
    return m - diff.bit_length()


def splitmix64(state: int) -> tuple:
    """One splitmix64 step: returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seeds(master: int, count: int) -> list:
    state = master & MASK64
    out = []
    for _ in range(count):
        state, z = splitmix64(state)
        out.append(z)
    return out


class PrefixHasher:
    """Polynomial hash over 64-bit words with O(1) access to any prefix.

    ``chunk_hashes[j]`` is the running hash of the first ``j`` whole words.
    The hash of a k-bit prefix folds in the partial word and ``k`` itself, so
    it depends only on the seed and the first k bits.
    """

    __slots__ = ("seed", "base_string_len", "chunk_hashes", "_words", "_a")

    def __init__(self, x: BitString, seed: int):
        a, c0 = hash_params(seed)
        self.seed = seed
        self.base_string_len = x.length
        self._a = a
        words = x.words()
        self._words = words
        h = c0
        hs = [h]
        append = hs.append
        P = HASH_PRIME
        for w in words:
            h = (h * a + w) % P
            append(h)
        self.chunk_hashes = hs

    def hash_prefix(self, k: int) -> int:
        if not 0 <= k <= self.base_string_len:
            raise IndexError(k)
        j = k >> 6
        rem = k & 63
        a = self._a
        h = self.chunk_hashes[j] * a
        if rem:
            h += self._words[j] >> (64 - rem)
        return ((h % HASH_PRIME) * a + k) % HASH_PRIME

    def hash_extended(self, k: int, bit: int) -> int:
        """Hash of the (k+1)-bit string x[0..k) followed by ``bit``."""
        if not 0 <= k <= self.base_string_len:
            raise IndexError(k)
        j = k >> 6
        rem = k & 63
        a = self._a
        tail = ((self._words[j] >> (64 - rem)) << 1 | bit) if rem else bit
        h = self.chunk_hashes[j] * a + tail
        if rem == 63:
            h = (h % HASH_PRIME) * a
        return ((h % HASH_PRIME) * a + k + 1) % HASH_PRIME


_PARAM_CACHE: dict = {}


def hash_params(seed: int) -> tuple:
    params = _PARAM_CACHE.get(seed)
    if params is None:
        s, z1 = splitmix64(seed & MASK64)
        s, z2 = splitmix64(s)
        s, z3 = splitmix64(s)
        a = ((z1 << 25) ^ z2) % (HASH_PRIME - 2) + 2
        params = (a, z3 % HASH_PRIME)
        if len(_PARAM_CACHE) > 4096:
            _PARAM_CACHE.clear()
        _PARAM_CACHE[seed] = params
    return params


def fingerprint(x: BitString, seed: int) -> int:
    """Fresh hash of a whole string, equal to PrefixHasher(x, seed).hash_prefix(|x|)."""
    return PrefixHasher(x, seed).hash_prefix(x.length)
