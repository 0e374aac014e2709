"""Constant-time map from a prefix to the name of its exit node.

F stores, for a cut-set of extent prefixes q, the offset |q| - |name of exit(q)|;
G maps each node name to the length of its compacted path.  A query tries the
truncations of p at multiples of t^(c-1), ..., t and falls back to p itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitcore import EMPTY, BitString, PrefixHasher, bitlength
from .errors import InvalidC
from .serial import Reader, Writer
from .succinct import CompressedFunction, StaticFunction
from .trie import CompactedTrie


def level_base(avg_len: int, c: int) -> int:
    """Smallest t >= 1 with t**c >= avg_len."""
    t = max(1, round(avg_len ** (1.0 / c)))
    while t > 1 and (t - 1) ** c >= avg_len:
        t -= 1
    while t ** c < avg_len:
        t += 1
    return t


def cut_lengths(i: int, j: int, t: int, c: int) -> list:
    """Lengths in (i..j]: unit steps up to a multiple of t, then steps of t up to
    a multiple of t^2, and so on, finishing with steps of t^(c-1)."""
    out = []
    v = i + 1
    u = 0
    step = 1
    while v <= j:
        out.append(v)
        while u < c - 1 and v % (step * t) == 0:
            u += 1
            step *= t
        v += step
    return out


@dataclass
class LookupCount:
    f: int = 0
    g: int = 0


class ConstTimeMap:
    def __init__(self):
        self.n = 0
        self.c = 2
        self.t = 1
        self.avg_len = 0
        self.seed = 0
        self.hash_seed = 0
        self.F = StaticFunction()
        self.G = CompressedFunction()
        self.key_count = 0
        self.powers: list = []

    @classmethod
    def build(cls, trie: CompactedTrie, c: int = 2, seed: int = 0,
              hash_seed: int = 0) -> "ConstTimeMap":
        if c < 2:
            raise InvalidC(f"c must be at least 2, got {c}")
        obj = cls()
        obj.n = trie.n
        obj.c = c
        obj.avg_len = trie.avg_len_ceil
        obj.t = level_base(obj.avg_len, c)
        obj.seed = seed
        obj.hash_seed = hash_seed
        f_fps: list = []
        f_vals: list = []
        g_fps: list = []
        g_vals: list = []
        for k, nd in enumerate(trie.nodes):
            hs = trie.node_hasher(k, hash_seed)
            i, j = nd.skip
            for v in cut_lengths(i, j, obj.t, c):
                f_fps.append(hs.hash_prefix(v))
                f_vals.append(v - nd.name_len)
            g_fps.append(hs.hash_prefix(nd.name_len))
            g_vals.append(nd.compacted_len)
        obj.key_count = len(f_fps)
        obj.F = StaticFunction.from_fingerprints(f_fps, f_vals, bitlength(trie.max_len),
                                                 seed, hash_seed)
        obj.G = CompressedFunction.from_fingerprints(g_fps, g_vals, seed ^ 0x2545F491, hash_seed)
        obj._set_powers()
        return obj

    def _set_powers(self):
        self.powers = [self.t ** i for i in range(self.c - 1, 0, -1)]

    def exit_name_len(self, hasher: PrefixHasher, plen: int,
                      count: LookupCount | None = None) -> int:
        F, G = self.F, self.G
        known = 0  # extent length of an ancestor of the exit node, proper prefix of p
        for step in self.powers:
            m = plen - plen % step
            if m <= known:
                continue
            off = F.get_fp(hasher.hash_prefix(m))
            if count is not None:
                count.f += 1
            if off > m:
                continue
            name_len = m - off
            ext = name_len + G.get_fp(hasher.hash_prefix(name_len))
            if count is not None:
                count.g += 1
            if ext >= plen:
                return name_len
            if ext > known:
                known = ext
        if count is not None:
            count.f += 1
        off = F.get_fp(hasher.hash_prefix(plen))
        return plen - off if off <= plen else 0

    def find_exit_name(self, p: BitString, count: LookupCount | None = None) -> BitString:
        if p.length == 0:
            return EMPTY
        h = PrefixHasher(p, self.hash_seed)
        return p.prefix(self.exit_name_len(h, p.length, count))

    def size_report(self) -> dict:
        return {
            "F_bits": self.F.size_in_bits(),
            "G_bits": self.G.size_in_bits(),
            "key_count": self.key_count,
            "c": self.c,
            "t": self.t,
        }

    def size_in_bits(self) -> int:
        return self.F.size_in_bits() + self.G.size_in_bits()

    def dump(self, w: Writer):
        for v in (self.n, self.c, self.t, self.avg_len, self.seed, self.hash_seed, self.key_count):
            w.u64(v)
        self.F.dump(w)
        self.G.dump(w)

    @classmethod
    def load(cls, r: Reader) -> "ConstTimeMap":
        obj = cls()
        (obj.n, obj.c, obj.t, obj.avg_len, obj.seed, obj.hash_seed,
         obj.key_count) = (r.u64() for _ in range(7))
        obj.F = StaticFunction.load(r)
        obj.G = CompressedFunction.load(r)
        obj._set_powers()
        return obj


def build_const_map(trie: CompactedTrie, c: int = 2, seed: int = 0,
                    hash_seed: int = 0) -> ConstTimeMap:
    return ConstTimeMap.build(trie, c, seed, hash_seed)


def find_exit_name_const(cmap: ConstTimeMap, p: BitString,
                         count: LookupCount | None = None) -> BitString:
    return cmap.find_exit_name(p, count)
