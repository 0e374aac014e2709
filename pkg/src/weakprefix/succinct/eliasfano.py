from __future__ import annotations

from typing import Sequence

from ..errors import WeakPrefixError
from ..serial import Reader, Writer
from .bits import PackedInts, RankSelectBits


class NotMonotone(WeakPrefixError, ValueError):
    pass


class EliasFanoSeq:
    """Monotone non-decreasing sequence in n(2 + ceil(log(u/n))) + o(n) bits.

    Each value keeps ``low_width`` low bits verbatim; the high parts are
    written in unary into a bit vector with select support.
    """

    def __init__(self, values: Sequence[int], universe: int | None = None):
        n = len(values)
        prev = 0
        for v in values:
            if v < prev:
                raise NotMonotone(f"{v} after {prev}")
            prev = v
        if universe is None:
            universe = (values[-1] + 1) if n else 1
        if n and values[-1] >= universe:
            raise ValueError("value outside universe")
        self.count = n
        self.universe = universe
        low = 0
        if n and universe > n:
            low = (universe // n).bit_length() - 1
        self.low_width = low
        self.lows = PackedInts(low, [v & ((1 << low) - 1) for v in values])
        nhigh = n + (universe >> low) + 1
        self.highs = RankSelectBits.from_positions(
            nhigh, ((v >> low) + i for i, v in enumerate(values)))

    def __len__(self) -> int:
        return self.count

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.count:
            raise IndexError(i)
        return ((self.highs.select(i) - i) << self.low_width) | self.lows[i]

    def pair(self, i: int) -> tuple:
        """(values[i], values[i + 1]) with a single select."""
        if not 0 <= i < self.count - 1:
            raise IndexError(i)
        highs = self.highs
        pos = highs.select(i)
        words = highs.words
        q = pos >> 6
        w = words[q] >> (pos & 63) >> 1
        nxt = pos + 1
        while not w:
            q += 1
            nxt = q << 6
            w = words[q]
        nxt += (w & -w).bit_length() - 1
        low = self.low_width
        lows = self.lows
        return (((pos - i) << low) | lows[i], ((nxt - i - 1) << low) | lows[i + 1])

    def tolist(self) -> list:
        return [self[i] for i in range(self.count)]

    def size_in_bits(self) -> int:
        return self.lows.size_in_bits() + self.highs.size_in_bits()

    def payload_bits(self) -> int:
        return self.lows.size_in_bits() + self.highs.n

    def dump(self, w: Writer):
        w.u64(self.count)
        w.u64(self.universe)
        w.u8(self.low_width)
        self.lows.dump(w)
        self.highs.dump(w)

    @classmethod
    def load(cls, r: Reader) -> "EliasFanoSeq":
        obj = cls.__new__(cls)
        obj.count = r.u64()
        obj.universe = r.u64()
        obj.low_width = r.u8()
        obj.lows = PackedInts.load(r)
        obj.highs = RankSelectBits.load(r)
        return obj
