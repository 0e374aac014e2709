"""Packed integer arrays and a rank/select bit vector.

Bits inside machine words are numbered from the least significant end here:
bit ``p`` of a vector lives in word ``p >> 6`` at position ``p & 63``.
"""

from __future__ import annotations

from array import array
from typing import Iterable, Sequence

from ..serial import Reader, Writer

_M64 = (1 << 64) - 1

_POP8 = bytes(bin(b).count("1") for b in range(256))
# _SEL8[b * 8 + r] = position of the r-th set bit of byte b
_SEL8 = bytearray(256 * 8)
for _b in range(256):
    _r = 0
    for _i in range(8):
        if _b >> _i & 1:
            _SEL8[_b * 8 + _r] = _i
            _r += 1
del _b, _r, _i


def select_in_word(w: int, r: int) -> int:
    """Position of the r-th (0-based) set bit of a 64-bit word."""
    shift = 0
    while True:
        byte = (w >> shift) & 255
        c = _POP8[byte]
        if r < c:
            return shift + _SEL8[byte * 8 + r]
        r -= c
        shift += 8


def pack_fields(fields: Iterable[tuple]) -> tuple:
    """Pack (value, nbits) pairs contiguously; returns (words, total_bits)."""
    words = array("Q")
    acc = 0
    used = 0
    total = 0
    for value, nbits in fields:
        if not nbits:
            continue
        total += nbits
        acc |= (value & ((1 << nbits) - 1)) << used
        used += nbits
        while used >= 64:
            words.append(acc & _M64)
            acc >>= 64
            used -= 64
    if used:
        words.append(acc)
    words.append(0)  # guard word so two-word reads never run off the end
    return words, total


def read_field(words: Sequence[int], start: int, nbits: int) -> int:
    if not nbits:
        return 0
    q = start >> 6
    o = start & 63
    v = words[q] >> o
    if o + nbits > 64:
        v |= words[q + 1] << (64 - o)
    return v & ((1 << nbits) - 1)


class PackedInts:
    """Fixed-width unsigned integers packed into 64-bit words."""

    __slots__ = ("width", "count", "words", "_mask")

    def __init__(self, width: int, values: Sequence[int] = ()):
        if width < 0 or width > 64:
            raise ValueError("width must be in 0..64")
        self.width = width
        self.count = len(values)
        self._mask = (1 << width) - 1
        if width:
            self.words, _ = pack_fields((v, width) for v in values)
        else:
            self.words = array("Q", [0])

    def __len__(self) -> int:
        return self.count

    def __getitem__(self, i: int) -> int:
        w = self.width
        if not w:
            return 0
        pos = i * w
        q = pos >> 6
        o = pos & 63
        v = self.words[q] >> o
        if o + w > 64:
            v |= self.words[q + 1] << (64 - o)
        return v & self._mask

    def tolist(self) -> list:
        return [self[i] for i in range(self.count)]

    def size_in_bits(self) -> int:
        return self.width * self.count

    def dump(self, w: Writer):
        w.u8(self.width)
        w.u64(self.count)
        w.words(self.words)

    @classmethod
    def load(cls, r: Reader) -> "PackedInts":
        obj = cls.__new__(cls)
        obj.width = r.u8()
        obj.count = r.u64()
        obj._mask = (1 << obj.width) - 1
        obj.words = r.words()
        return obj


class RankSelectBits:
    """Static bit vector with constant-time rank and sampled select.

    Directory: one absolute count per 512-bit superblock, one 9-bit relative
    count per word, and the superblock of every 512th one for select.
    """

    SB_WORDS = 8
    SAMPLE = 512

    def __init__(self, n: int, words: array):
        self.n = n
        nw = (n + 63) >> 6
        words = array("Q", words[:nw])
        while len(words) < nw + 1:
            words.append(0)
        if n & 63:
            words[nw - 1] &= (1 << (n & 63)) - 1
        self.words = words
        self._build_directory()

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "RankSelectBits":
        words = array("Q")
        acc = 0
        n = 0
        for b in bits:
            if b:
                acc |= 1 << (n & 63)
            n += 1
            if not n & 63:
                words.append(acc)
                acc = 0
        if n & 63:
            words.append(acc)
        return cls(n, words)

    @classmethod
    def from_positions(cls, n: int, positions: Iterable[int]) -> "RankSelectBits":
        words = array("Q", bytes(8 * ((n + 63) >> 6)))
        for p in positions:
            if not 0 <= p < n:
                raise IndexError(p)
            words[p >> 6] |= 1 << (p & 63)
        return cls(n, words)

    def _build_directory(self):
        words = self.words
        nw = len(words)
        sb = array("Q")
        rel = array("H")
        total = 0
        base = 0
        for q in range(nw):
            if q % self.SB_WORDS == 0:
                sb.append(total)
                base = total
            rel.append(total - base)
            total += words[q].bit_count()
        sb.append(total)
        self.ones = total
        self.sb = sb
        self.rel = rel
        samples = array("Q")
        k = 0
        for target in range(0, total, self.SAMPLE):
            while sb[k + 1] <= target:
                k += 1
            samples.append(k)
        self.samples = samples

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, p: int) -> int:
        if not 0 <= p < self.n:
            raise IndexError(p)
        return (self.words[p >> 6] >> (p & 63)) & 1

    def rank(self, p: int) -> int:
        """Number of ones in positions [0..p)."""
        if not 0 <= p <= self.n:
            raise IndexError(p)
        q = p >> 6
        o = p & 63
        if o:
            return self.sb[q >> 3] + self.rel[q] + (self.words[q] & ((1 << o) - 1)).bit_count()
        return self.sb[q >> 3] + self.rel[q]

    def select(self, r: int) -> int:
        """Position of the r-th one (0-based)."""
        if not 0 <= r < self.ones:
            raise IndexError(r)
        sb = self.sb
        k = self.samples[r >> 9]
        while sb[k + 1] <= r:
            k += 1
        rr = r - sb[k]
        q = k << 3
        end = min(q + 8, len(self.words))
        rel = self.rel
        while q + 1 < end and rel[q + 1] <= rr:
            q += 1
        return (q << 6) + select_in_word(self.words[q], rr - rel[q])

    def select0(self, r: int) -> int:
        """Position of the r-th zero (0-based)."""
        if not 0 <= r < self.n - self.ones:
            raise IndexError(r)
        sb = self.sb
        lo, hi = 0, len(sb) - 2
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            if (mid << 9) - sb[mid] <= r:
                lo = mid
            else:
                hi = mid - 1
        rr = r - ((lo << 9) - sb[lo])
        q = lo << 3
        end = min(q + 8, len(self.words))
        rel = self.rel
        while q + 1 < end and ((q + 1 - (lo << 3)) << 6) - rel[q + 1] <= rr:
            q += 1
        rr -= ((q - (lo << 3)) << 6) - rel[q]
        return (q << 6) + select_in_word(~self.words[q] & _M64, rr)

    def overhead_bits(self) -> int:
        return 64 * len(self.sb) + 9 * len(self.rel) + 64 * len(self.samples)

    def size_in_bits(self) -> int:
        return self.n + self.overhead_bits()

    def dump(self, w: Writer):
        w.u64(self.n)
        w.words(self.words)

    @classmethod
    def load(cls, r: Reader) -> "RankSelectBits":
        n = r.u64()
        return cls(n, r.words())
