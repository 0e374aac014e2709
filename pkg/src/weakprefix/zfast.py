"""Hollow z-fast prefix trie: exit-node names by fat binary search."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitcore import EMPTY, INFINITY, BitString, PrefixHasher, fattest_ladder
from .serial import Reader, Writer
from .succinct import CompressedFunction, Mphf, RelativeDictionary
from .trie import CompactedTrie


@dataclass
class ExitTrace:
    """Per-query record of the search loop, used to check its invariants."""

    iterations: int = 0
    steps: list = field(default_factory=list)  # (i, l, r, m, g) per probe
    result_len: int = 0


class HollowZFastPrefixTrie:
    """Maps handles to extent lengths; leaf handles and pseudohandles give INFINITY.

    Membership of internal handles is answered by a relative dictionary over
    all handles and pseudohandles; the extent length is recovered as
    |h| + (|e| - |h|), the difference being kept in a compressed function
    that shares the dictionary's first-level mphf.
    """

    def __init__(self):
        self.n = 0
        self.seed = 0
        self.hash_seed = 0
        self.mphf: Mphf | None = None
        self.members = RelativeDictionary()
        self.deltas: CompressedFunction | None = None
        self.key_count = 0
        # with an empty root extent, l = 0 is the root's extent length and the
        # exit node lies strictly below the root
        self.root_extent_empty = False

    @classmethod
    def build(cls, trie: CompactedTrie, seed: int, hash_seed: int,
              fault_node: int | None = None) -> "HollowZFastPrefixTrie":
        """``fault_node`` corrupts that internal node's delta (test hook)."""
        obj = cls()
        obj.n = trie.n
        obj.seed = seed
        obj.hash_seed = hash_seed
        obj.root_extent_empty = trie.n > 1 and trie.nodes[trie.root].extent_len == 0
        internal_fps: list = []
        deltas: list = []
        all_fps: list = []
        for k, nd in enumerate(trie.nodes):
            hs = trie.node_hasher(k, hash_seed)
            i, j = nd.skip
            ladder = fattest_ladder(i, j) if j > i else [0]
            for v in ladder:
                all_fps.append(hs.hash_prefix(v))
            if not nd.is_leaf:
                internal_fps.append(all_fps[-1])
                delta = nd.extent_len - ladder[-1]
                if k == fault_node:
                    delta += 1
                deltas.append(delta)
        obj.key_count = len(all_fps)
        if internal_fps:
            obj.mphf = Mphf.from_fingerprints(internal_fps, seed, hash_seed)
            obj.members = RelativeDictionary.from_fingerprints(
                internal_fps, all_fps, seed ^ 0x5bd1e995, hash_seed, mphf=obj.mphf)
            obj.deltas = CompressedFunction.from_fingerprints(
                internal_fps, deltas, seed, hash_seed, mphf=obj.mphf)
        else:
            obj.members = RelativeDictionary.from_fingerprints([], all_fps, seed, hash_seed)
        return obj

    def lookup_fp(self, fp: int, length: int) -> int:
        if self.mphf is None:
            return INFINITY
        idx = self.mphf.eval_fp(fp)
        if not self.members.contains_fp(fp, idx):
            return INFINITY
        return length + self.deltas.get_index(idx)

    def lookup_T(self, hasher: PrefixHasher, length: int) -> int:
        return self.lookup_fp(hasher.hash_prefix(length), length)

    def exit_name_len(self, hasher: PrefixHasher, plen: int,
                      trace: ExitTrace | None = None) -> int:
        i = plen.bit_length() - 1
        lo, hi = 0, plen
        while hi - lo > 1 and i >= 0:
            m = ((lo >> i) + 1) << i
            if m < hi:
                g = self.lookup_fp(hasher.hash_prefix(m), m)
                if trace is not None:
                    trace.steps.append((i, lo, hi, m, g))
                if g >= plen:
                    hi = m
                else:
                    lo = g
            if trace is not None:
                trace.iterations += 1
            i -= 1
        out = 0 if lo == 0 and not self.root_extent_empty else lo + 1
        if trace is not None:
            trace.result_len = out
        return out

    def find_exit_name(self, p: BitString) -> BitString:
        if p.length == 0:
            return EMPTY
        h = PrefixHasher(p, self.hash_seed)
        return p.prefix(self.exit_name_len(h, p.length))

    def trace_exit_name(self, p: BitString) -> ExitTrace:
        tr = ExitTrace()
        if p.length:
            self.exit_name_len(PrefixHasher(p, self.hash_seed), p.length, tr)
        return tr

    def size_report(self) -> dict:
        rd = self.members.size_in_bits() if self.mphf is not None else 0
        return {
            "relative_dict_bits": rd,
            "delta_payload_bits": self.deltas.payload_bits if self.deltas else 0,
            "delta_overhead_bits": self.deltas.overhead_bits() if self.deltas else 0,
        }

    def size_in_bits(self) -> int:
        return sum(self.size_report().values())

    def dump(self, w: Writer):
        w.u64(self.n)
        w.u64(self.seed)
        w.u64(self.hash_seed)
        w.u64(self.key_count)
        w.u8(self.root_extent_empty)
        w.u8(self.mphf is not None)
        if self.mphf is not None:
            self.mphf.dump(w)
            self.members.dump(w, shared_first_mphf=True)
            self.deltas.dump(w, include_mphf=False)

    @classmethod
    def load(cls, r: Reader) -> "HollowZFastPrefixTrie":
        obj = cls()
        obj.n = r.u64()
        obj.seed = r.u64()
        obj.hash_seed = r.u64()
        obj.key_count = r.u64()
        obj.root_extent_empty = bool(r.u8())
        if r.u8():
            obj.mphf = Mphf.load(r)
            obj.members = RelativeDictionary.load(r, first_mphf=obj.mphf)
            obj.deltas = CompressedFunction.load(r, mphf=obj.mphf)
        return obj


def build_zfast(trie: CompactedTrie, seed: int = 0, hash_seed: int = 0,
                fault_node: int | None = None) -> HollowZFastPrefixTrie:
    return HollowZFastPrefixTrie.build(trie, seed, hash_seed, fault_node)
