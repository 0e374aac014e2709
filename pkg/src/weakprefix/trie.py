"""Explicit compacted binary trie over a prefix-free set.

This is the build-time source of truth: every succinct structure is derived
from it, and its definitional walks serve as the brute-force oracle in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bitcore import (EMPTY, BitString, PrefixHasher, bitlength, fattest_ladder, lcp,
                      two_fattest)
from .errors import Duplicate, EmptyInput, NotAPrefix, NotPrefixFree


@dataclass(frozen=True)
class TrieNode:
    extent_len: int
    name_len: int
    skip: tuple  # (i, j): the skip interval [i..j)
    lo: int  # leaf ranks [lo..hi) below the node
    hi: int
    left: int = -1
    right: int = -1
    parent: int = -1

    @property
    def is_leaf(self) -> bool:
        return self.left < 0

    @property
    def leaf_rank(self) -> int:
        return self.lo if self.is_leaf else -1

    @property
    def compacted_len(self) -> int:
        return self.extent_len - self.name_len


@dataclass(frozen=True)
class NodeAttributes:
    extent: BitString
    name: BitString
    compacted_path: BitString
    handle: BitString
    pseudohandles: tuple


@dataclass(frozen=True)
class Measures:
    trie_measure: int  # T(S)
    hollow_trie_measure: int  # HT(S)
    avg_internal_extent_len: Fraction | None


def sort_and_validate(strings: Sequence[BitString]) -> list:
    """Sort strings lexicographically, rejecting duplicates and prefix pairs.

    Errors carry ranks in sorted order plus the offending input positions.
    """
    if not strings:
        raise EmptyInput("empty string set")
    width = max(s.length for s in strings)
    order = sorted(range(len(strings)), key=lambda k: strings[k].sort_key(width))
    out = [strings[k] for k in order]
    for r in range(len(out) - 1):
        a, b = out[r], out[r + 1]
        if a == b:
            raise Duplicate(r + 1, (order[r], order[r + 1]))
        if b.startswith(a):
            raise NotPrefixFree((r, r + 1), (order[r], order[r + 1]))
    return out


class CompactedTrie:
    def __init__(self, strings: Sequence[BitString]):
        self.strings = sort_and_validate(strings)
        self.n = len(self.strings)
        self.total_bits = sum(s.length for s in self.strings)
        self.avg_len = Fraction(self.total_bits, self.n)
        self.avg_len_ceil = -(-self.total_bits // self.n)
        self.max_len = max(s.length for s in self.strings)
        self.nodes: list = []
        self.root = 0
        self._build()
        self._hashers: dict = {}

    def _build(self):
        strings = self.strings
        # explicit stack: (lo, hi, name_len, parent, side)
        nodes: list = []
        pending = [(0, self.n, 0, -1, -1)]
        while pending:
            lo, hi, name_len, parent, side = pending.pop()
            idx = len(nodes)
            if hi - lo == 1:
                ext = strings[lo].length
            else:
                ext = lcp(strings[lo], strings[hi - 1])
            i = 0 if parent < 0 else name_len - 1
            nodes.append([ext, name_len, (i, ext), lo, hi, -1, -1, parent])
            if parent >= 0:
                nodes[parent][5 + side] = idx
            if hi - lo > 1:
                split = self._split(lo, hi, ext)
                # right pushed first so the left subtree is numbered first (preorder)
                pending.append((split, hi, ext + 1, idx, 1))
                pending.append((lo, split, ext + 1, idx, 0))
        self.nodes = [TrieNode(e, nl, sk, lo, hi, l, r, p) for e, nl, sk, lo, hi, l, r, p in nodes]

    def _split(self, lo: int, hi: int, depth: int) -> int:
        """First rank in [lo..hi) whose bit at ``depth`` is 1."""
        strings = self.strings
        a, b = lo, hi - 1
        while a < b:
            mid = (a + b) >> 1
            s = strings[mid]
            if (s.value >> (s.length - 1 - depth)) & 1:
                b = mid
            else:
                a = mid + 1
        return a

    # -- node accessors -------------------------------------------------

    def internal_nodes(self) -> list:
        return [k for k, nd in enumerate(self.nodes) if not nd.is_leaf]

    def leaves(self) -> list:
        return [k for k, nd in enumerate(self.nodes) if nd.is_leaf]

    def representative(self, k: int) -> BitString:
        return self.strings[self.nodes[k].lo]

    def extent(self, k: int) -> BitString:
        return self.representative(k).prefix(self.nodes[k].extent_len)

    def name(self, k: int) -> BitString:
        return self.representative(k).prefix(self.nodes[k].name_len)

    def handle_len(self, k: int) -> int:
        i, j = self.nodes[k].skip
        return two_fattest(i, j)

    def pseudohandle_lens(self, k: int) -> list:
        i, j = self.nodes[k].skip
        return fattest_ladder(i, j)[:-1] if j > i else []

    def node_attributes(self, k: int) -> NodeAttributes:
        nd = self.nodes[k]
        rep = self.representative(k)
        return NodeAttributes(
            extent=rep.prefix(nd.extent_len),
            name=rep.prefix(nd.name_len),
            compacted_path=BitString(nd.compacted_len,
                                     (rep.value >> (rep.length - nd.extent_len))
                                     & ((1 << nd.compacted_len) - 1)),
            handle=rep.prefix(self.handle_len(k)),
            pseudohandles=tuple(rep.prefix(f) for f in self.pseudohandle_lens(k)),
        )

    def leaf_hasher(self, rank: int, hash_seed: int) -> PrefixHasher:
        key = (rank, hash_seed)
        h = self._hashers.get(key)
        if h is None:
            h = PrefixHasher(self.strings[rank], hash_seed)
            self._hashers[key] = h
        return h

    def node_hasher(self, k: int, hash_seed: int) -> PrefixHasher:
        return self.leaf_hasher(self.nodes[k].lo, hash_seed)

    def drop_hashers(self):
        self._hashers.clear()

    # -- oracles --------------------------------------------------------

    def exit_node_oracle(self, x: BitString) -> int:
        k = self.root
        while True:
            nd = self.nodes[k]
            rep = self.representative(k)
            if x.length <= nd.extent_len:
                if rep.prefix(x.length) != x:
                    raise NotAPrefix(str(x))
                return k
            if rep.prefix(nd.extent_len) != x.prefix(nd.extent_len) or nd.is_leaf:
                raise NotAPrefix(str(x))
            k = nd.right if x.bit(nd.extent_len) else nd.left

    def proper_prefix_extent_lengths(self, x: BitString) -> list:
        """Lengths of the node extents that are proper prefixes of x, root first."""
        out = []
        k = self.root
        while True:
            nd = self.nodes[k]
            if nd.extent_len >= x.length or not x.startswith(self.extent(k)):
                return out
            out.append(nd.extent_len)
            if nd.is_leaf:
                return out
            k = nd.right if x.bit(nd.extent_len) else nd.left

    def weak_prefix_oracle(self, p: BitString) -> tuple:
        """Linear scan: ranks of the strings having p as a prefix."""
        first = None
        last = None
        before = 0
        for r, s in enumerate(self.strings):
            if s.startswith(p):
                if first is None:
                    first = r
                last = r
            elif first is None and s < p:
                before += 1
        if first is None:
            return (before, before)
        return (first, last + 1)

    # -- measures -------------------------------------------------------

    def measures(self) -> Measures:
        n = self.n
        t = 2 * n - 2 + sum(nd.compacted_len for nd in self.nodes)
        internal = [nd for nd in self.nodes if not nd.is_leaf]
        if n == 1:
            ht = 0
        else:
            ht = n - 2 + sum(bitlength(nd.compacted_len) for nd in internal)
        avg = Fraction(sum(nd.extent_len for nd in internal), len(internal)) if internal else None
        return Measures(t, ht, avg)

    def dump(self) -> str:
        lines = []
        for k, nd in enumerate(self.nodes):
            a = self.node_attributes(k)
            i, j = nd.skip
            pseudo = ",".join(str(x) for x in a.pseudohandles)
            lines.append(f"{nd.name_len} {nd.extent_len} [{i}..{j}) handle={a.handle} pseudo={{{pseudo}}}")
        return "\n".join(lines)


def build_trie(strings: Sequence[BitString]) -> CompactedTrie:
    return CompactedTrie(strings)


__all__ = ["CompactedTrie", "TrieNode", "NodeAttributes", "Measures", "build_trie",
           "sort_and_validate", "EMPTY"]
