"""String store in slow memory and the probe-counted applications over it.

A probe is one ``get`` of a stored string.  Every application takes a weak
prefix index, which may answer garbage for strings that prefix nothing, and
validates its interval by probing before trusting it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bitcore import BitString, lcp
from .errors import InvalidRange, RankOutOfRange
from .serial import Reader, Writer
from .succinct import EliasFanoSeq
from .trie import sort_and_validate


@dataclass
class ProbeCounter:
    probes: int = 0


@dataclass
class QueryResult:
    strings: list
    probes: int


class StringStore:
    """Strings in rank order, concatenated, with Elias-Fano bit offsets."""

    def __init__(self, strings: Sequence[BitString] = (), presorted: bool = False):
        if strings:
            ordered = list(strings) if presorted else sort_and_validate(strings)
        else:
            ordered = []
        self.n = len(ordered)
        offsets = [0]
        acc = 0
        for s in ordered:
            acc = (acc << s.length) | s.value
            offsets.append(offsets[-1] + s.length)
        total = offsets[-1]
        pad = (-total) % 8
        self.total_bits = total
        self.payload = (acc << pad).to_bytes((total + pad) // 8, "big")
        self.offsets = EliasFanoSeq(offsets, total + 1)

    def __len__(self) -> int:
        return self.n

    def get(self, rank: int, counter: ProbeCounter | None = None) -> BitString:
        if not 0 <= rank < self.n:
            raise RankOutOfRange(f"rank {rank} outside [0..{self.n})")
        if counter is not None:
            counter.probes += 1
        start, end = self.offsets.pair(rank)
        lo, hi = start >> 3, (end + 7) >> 3
        chunk = int.from_bytes(self.payload[lo:hi], "big")
        chunk >>= (hi << 3) - end
        length = end - start
        return BitString(length, chunk & ((1 << length) - 1))

    def strings(self) -> list:
        return [self.get(r) for r in range(self.n)]

    def size_in_bits(self) -> int:
        return len(self.payload) * 8 + self.offsets.size_in_bits()

    def dump(self, w: Writer):
        w.u64(self.n)
        w.u64(self.total_bits)
        self.offsets.dump(w)
        w.blob(self.payload)

    @classmethod
    def load(cls, r: Reader) -> "StringStore":
        obj = cls.__new__(cls)
        obj.n = r.u64()
        obj.total_bits = r.u64()
        obj.offsets = EliasFanoSeq.load(r)
        obj.payload = r.blob()
        return obj


def prefix_search(index, store: StringStore, p: BitString) -> QueryResult:
    """All strings prefixed by p: t probes on a match, one probe otherwise."""
    i, j = index.weak_prefix_search(p)
    if i >= j:
        return QueryResult([], 0)
    cnt = ProbeCounter()
    first = store.get(i, cnt)
    if not first.startswith(p):
        return QueryResult([], cnt.probes)
    out = [first]
    for r in range(i + 1, j):
        out.append(store.get(r, cnt))
    return QueryResult(out, cnt.probes)


def prefix_count(index, store: StringStore, p: BitString) -> tuple:
    """(number of strings prefixed by p, probes), with at most one probe."""
    i, j = index.weak_prefix_search(p)
    if i >= j:
        return 0, 0
    cnt = ProbeCounter()
    if store.get(i, cnt).startswith(p):
        return j - i, cnt.probes
    return 0, cnt.probes


def _split(a: BitString, b: BitString) -> tuple:
    if b < a:
        raise InvalidRange(f"{a} > {b}")
    k = lcp(a, b)
    return a.prefix(k), k == a.length


def range_report(index, store: StringStore, a: BitString, b: BitString) -> QueryResult:
    """Strings x of S with a <= x <= b, probing at most K + 2 strings."""
    p, a_is_prefix = _split(a, b)
    cnt = ProbeCounter()
    out: list = []
    if a_is_prefix:
        # everything in [a..b] is prefixed by a
        i, j = index.weak_prefix_search(a)
        for r in range(i, j):
            s = store.get(r, cnt)
            if (r == i and not s.startswith(a)) or s > b:
                break
            out.append(s)
        return QueryResult(out, cnt.probes)
    p0, p1 = p.append_bit(0), p.append_bit(1)
    i0, j0 = index.weak_prefix_search(p0)
    left: list = []
    for r in range(j0 - 1, i0 - 1, -1):
        s = store.get(r, cnt)
        if not s.startswith(p0) or s < a:
            break
        left.append(s)
    out.extend(reversed(left))
    i1, j1 = index.weak_prefix_search(p1)
    for r in range(i1, j1):
        s = store.get(r, cnt)
        if not s.startswith(p1) or s > b:
            break
        out.append(s)
    return QueryResult(out, cnt.probes)


def range_empty(index, store: StringStore, a: BitString, b: BitString) -> tuple:
    """(True iff no string of S lies in [a..b], probes), with at most two probes."""
    p, a_is_prefix = _split(a, b)
    cnt = ProbeCounter()
    if a_is_prefix:
        i, j = index.weak_prefix_search(a)
        if i < j:
            s = store.get(i, cnt)
            if s.startswith(a) and not s > b:
                return False, cnt.probes
        return True, cnt.probes
    p0, p1 = p.append_bit(0), p.append_bit(1)
    i0, j0 = index.weak_prefix_search(p0)
    if i0 < j0:
        s = store.get(j0 - 1, cnt)
        if s.startswith(p0) and not s < a:
            return False, cnt.probes
    i1, j1 = index.weak_prefix_search(p1)
    if i1 < j1:
        s = store.get(i1, cnt)
        if s.startswith(p1) and not s > b:
            return False, cnt.probes
    return True, cnt.probes


def build_store(strings: Sequence[BitString]) -> StringStore:
    return StringStore(strings)
