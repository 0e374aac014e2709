"""Static functions, minimal perfect hashing and compressed functions.

Every structure is keyed by *fingerprints*: the value of
:meth:`PrefixHasher.hash_prefix` under the structure's ``hash_seed``.  A
structure-local ``seed`` remixes the fingerprint into three vertices of a
3-partite hypergraph with roughly 1.23 vertices per key; construction peels
the hypergraph and retries with the next seed when peeling gets stuck.
"""

from __future__ import annotations

from typing import Sequence

from ..bitcore import BitString, PrefixHasher, fingerprint
from ..errors import BuildFailed, HashCollision
from ..serial import Reader, Writer
from .bits import PackedInts, RankSelectBits, pack_fields, read_field
from .eliasfano import EliasFanoSeq

MAX_RETRIES = 64

_M64 = (1 << 64) - 1
_M32 = (1 << 32) - 1


def segment_sizes(n: int) -> tuple:
    if n == 0:
        return (0, 0, 0)
    m = (123 * n + 99) // 100 + 2
    base, extra = divmod(m, 3)
    return tuple(base + (1 if i < extra else 0) for i in range(3))


def vertices(fp: int, seed: int, s0: int, s1: int, s2: int) -> tuple:
    z = (fp ^ seed) & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    v1 = z ^ (z >> 31)
    z = ((fp >> 64) ^ v1 ^ 0x9E3779B97F4A7C15) & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    v2 = z ^ (z >> 31)
    return (((v1 >> 32) * s0) >> 32,
            s0 + (((v1 & _M32) * s1) >> 32),
            s0 + s1 + (((v2 >> 32) * s2) >> 32))


def signature(fp: int, seed: int, width: int) -> int:
    z = (fp ^ (fp >> 64) * 0xD6E8FEB86659FD93 ^ seed) & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return (z ^ (z >> 31)) & ((1 << width) - 1)


def check_distinct(fps: Sequence[int]):
    if len(set(fps)) != len(fps):
        raise HashCollision("duplicate fingerprints among build keys")


def peel(edges: list, m: int):
    """Return [(edge, free_vertex)] in peeling order, or None if stuck."""
    deg = [0] * m
    acc = [0] * m
    for e, (a, b, c) in enumerate(edges):
        deg[a] += 1
        deg[b] += 1
        deg[c] += 1
        acc[a] ^= e
        acc[b] ^= e
        acc[c] ^= e
    stack = [v for v in range(m) if deg[v] == 1]
    order = []
    while stack:
        v = stack.pop()
        if deg[v] != 1:
            continue
        e = acc[v]
        order.append((e, v))
        for u in edges[e]:
            deg[u] -= 1
            acc[u] ^= e
            if deg[u] == 1:
                stack.append(u)
    if len(order) != len(edges):
        return None
    return order


def _peel_with_retries(fps: Sequence[int], seed: int):
    check_distinct(fps)
    s0, s1, s2 = sizes = segment_sizes(len(fps))
    m = s0 + s1 + s2
    for attempt in range(MAX_RETRIES):
        cur = (seed + attempt) & _M64
        edges = [vertices(fp, cur, s0, s1, s2) for fp in fps]
        order = peel(edges, m)
        if order is not None:
            return cur, sizes, edges, order
    raise BuildFailed(f"hypergraph did not peel after {MAX_RETRIES} seeds ({len(fps)} keys)")


def _solve(edges, order, values, m):
    cells = [0] * m
    for e, v in reversed(order):
        a, b, c = edges[e]
        cells[v] = values[e] ^ cells[a] ^ cells[b] ^ cells[c] ^ cells[v]
    return cells


class StaticFunction:
    """Retrieval structure: exact r-bit values on build keys, arbitrary elsewhere."""

    def __init__(self):
        self.n = 0
        self.width = 0
        self.seed = 0
        self.hash_seed = 0
        self.sizes = (0, 0, 0)
        self.cells = PackedInts(0)

    @classmethod
    def build(cls, keys: Sequence[BitString], values: Sequence[int], width: int | None = None,
              seed: int = 0, hash_seed: int = 0) -> "StaticFunction":
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate keys")
        fps = [fingerprint(k, hash_seed) for k in keys]
        return cls.from_fingerprints(fps, values, width, seed, hash_seed)

    @classmethod
    def from_fingerprints(cls, fps: Sequence[int], values: Sequence[int], width: int | None = None,
                          seed: int = 0, hash_seed: int = 0) -> "StaticFunction":
        if len(fps) != len(values):
            raise ValueError("keys and values differ in length")
        obj = cls()
        obj.n = len(fps)
        obj.hash_seed = hash_seed
        if width is None:
            width = max(values, default=0).bit_length()
        obj.width = width
        if not fps:
            obj.seed = seed
            return obj
        if any(v >> width for v in values):
            raise ValueError(f"value does not fit in {width} bits")
        obj.seed, obj.sizes, edges, order = _peel_with_retries(fps, seed)
        obj.cells = PackedInts(width, _solve(edges, order, values, sum(obj.sizes)))
        return obj

    def get_fp(self, fp: int) -> int:
        if not self.n:
            return 0
        a, b, c = vertices(fp, self.seed, *self.sizes)
        cells = self.cells
        return cells[a] ^ cells[b] ^ cells[c]

    def get(self, key: BitString) -> int:
        return self.get_fp(fingerprint(key, self.hash_seed))

    def get_prefix(self, hasher: PrefixHasher, length: int) -> int:
        return self.get_fp(hasher.hash_prefix(length))

    @property
    def m(self) -> int:
        return sum(self.sizes)

    def size_in_bits(self) -> int:
        if not self.n:
            return 0
        return self.cells.size_in_bits() + 3 * 64

    def dump(self, w: Writer):
        w.u64(self.n)
        w.u8(self.width)
        w.u64(self.seed)
        w.u64(self.hash_seed)
        for s in self.sizes:
            w.u64(s)
        self.cells.dump(w)

    @classmethod
    def load(cls, r: Reader) -> "StaticFunction":
        obj = cls()
        obj.n = r.u64()
        obj.width = r.u8()
        obj.seed = r.u64()
        obj.hash_seed = r.u64()
        obj.sizes = (r.u64(), r.u64(), r.u64())
        obj.cells = PackedInts.load(r)
        return obj


class Mphf:
    """Minimal perfect hash: 2-bit peeling choices plus rank over used vertices."""

    def __init__(self):
        self.n = 0
        self.seed = 0
        self.hash_seed = 0
        self.sizes = (0, 0, 0)
        self.choices = PackedInts(2)
        self.used = RankSelectBits(0, [])

    @classmethod
    def build(cls, keys: Sequence[BitString], seed: int = 0, hash_seed: int = 0) -> "Mphf":
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate keys")
        return cls.from_fingerprints([fingerprint(k, hash_seed) for k in keys], seed, hash_seed)

    @classmethod
    def from_fingerprints(cls, fps: Sequence[int], seed: int = 0, hash_seed: int = 0) -> "Mphf":
        obj = cls()
        obj.n = len(fps)
        obj.hash_seed = hash_seed
        obj.seed = seed
        if not fps:
            return obj
        obj.seed, obj.sizes, edges, order = _peel_with_retries(fps, seed)
        m = sum(obj.sizes)
        s0, s1 = obj.sizes[0], obj.sizes[1]
        values = [0] * len(fps)
        for e, v in order:
            values[e] = 0 if v < s0 else (1 if v < s0 + s1 else 2)
        obj.choices = PackedInts(2, _solve(edges, order, values, m))
        obj.used = RankSelectBits.from_positions(m, (v for _, v in order))
        return obj

    def eval_fp(self, fp: int) -> int:
        n = self.n
        if n <= 1:
            return 0
        vs = vertices(fp, self.seed, *self.sizes)
        # 2-bit cells never straddle a word
        w = self.choices.words
        a, b, c = vs
        j = ((w[a >> 5] >> ((a & 31) << 1)) ^ (w[b >> 5] >> ((b & 31) << 1))
             ^ (w[c >> 5] >> ((c & 31) << 1))) & 3
        idx = self.used.rank(vs[j if j < 3 else 0])
        return idx if idx < n else n - 1

    def eval(self, key: BitString) -> int:
        return self.eval_fp(fingerprint(key, self.hash_seed))

    def eval_prefix(self, hasher: PrefixHasher, length: int) -> int:
        return self.eval_fp(hasher.hash_prefix(length))

    def size_in_bits(self) -> int:
        return self.choices.size_in_bits() + self.used.size_in_bits() + 3 * 64

    def dump(self, w: Writer):
        w.u64(self.n)
        w.u64(self.seed)
        w.u64(self.hash_seed)
        for s in self.sizes:
            w.u64(s)
        self.choices.dump(w)
        self.used.dump(w)

    @classmethod
    def load(cls, r: Reader) -> "Mphf":
        obj = cls()
        obj.n = r.u64()
        obj.seed = r.u64()
        obj.hash_seed = r.u64()
        obj.sizes = (r.u64(), r.u64(), r.u64())
        obj.choices = PackedInts.load(r)
        obj.used = RankSelectBits.load(r)
        return obj


def codeword(v: int) -> tuple:
    """(bits, nbits) with nbits = floor(log2(v + 1)): v + 1 without its leading one."""
    nbits = (v + 1).bit_length() - 1
    return (v + 1) - (1 << nbits), nbits


class CompressedFunction:
    """Values stored as variable-length codewords addressed through an mphf.

    Payload is exactly sum(floor(log2(v + 1))) bits; codeword boundaries live
    in an Elias-Fano list.  The mphf may be shared with another structure
    keyed by the same set, in which case it is not counted here.
    """

    def __init__(self):
        self.n = 0
        self.mphf = Mphf()
        self.owns_mphf = True
        self.offsets = EliasFanoSeq([0])
        self.payload = pack_fields(())[0]
        self.payload_bits = 0

    @classmethod
    def build(cls, keys: Sequence[BitString], values: Sequence[int], seed: int = 0,
              hash_seed: int = 0) -> "CompressedFunction":
        fps = [fingerprint(k, hash_seed) for k in keys]
        return cls.from_fingerprints(fps, values, seed, hash_seed)

    @classmethod
    def from_fingerprints(cls, fps: Sequence[int], values: Sequence[int], seed: int = 0,
                          hash_seed: int = 0, mphf: Mphf | None = None) -> "CompressedFunction":
        if len(fps) != len(values):
            raise ValueError("keys and values differ in length")
        obj = cls()
        obj.n = len(fps)
        if mphf is None:
            mphf = Mphf.from_fingerprints(fps, seed, hash_seed)
        else:
            obj.owns_mphf = False
        obj.mphf = mphf
        ordered = [0] * len(fps)
        for fp, v in zip(fps, values):
            ordered[mphf.eval_fp(fp)] = v
        codes = [codeword(v) for v in ordered]
        offsets = [0]
        for _, nb in codes:
            offsets.append(offsets[-1] + nb)
        obj.payload_bits = offsets[-1]
        obj.offsets = EliasFanoSeq(offsets, offsets[-1] + 1)
        obj.payload, _ = pack_fields(codes)
        return obj

    def get_index(self, i: int) -> int:
        if not self.n:
            return 0
        start, end = self.offsets.pair(i)
        nb = end - start
        return ((1 << nb) | read_field(self.payload, start, nb)) - 1

    def get_fp(self, fp: int) -> int:
        return self.get_index(self.mphf.eval_fp(fp))

    def get(self, key: BitString) -> int:
        return self.get_fp(fingerprint(key, self.mphf.hash_seed))

    def get_prefix(self, hasher: PrefixHasher, length: int) -> int:
        return self.get_fp(hasher.hash_prefix(length))

    def overhead_bits(self) -> int:
        bits = self.offsets.size_in_bits()
        if self.owns_mphf:
            bits += self.mphf.size_in_bits()
        return bits

    def size_in_bits(self) -> int:
        return self.payload_bits + self.overhead_bits()

    def dump(self, w: Writer, include_mphf: bool = True):
        w.u64(self.n)
        w.u8(1 if include_mphf else 0)
        if include_mphf:
            self.mphf.dump(w)
        self.offsets.dump(w)
        w.u64(self.payload_bits)
        w.words(self.payload)

    @classmethod
    def load(cls, r: Reader, mphf: Mphf | None = None) -> "CompressedFunction":
        obj = cls()
        obj.n = r.u64()
        if r.u8():
            obj.mphf = Mphf.load(r)
        else:
            if mphf is None:
                raise ValueError("shared mphf required")
            obj.mphf = mphf
            obj.owns_mphf = False
        obj.offsets = EliasFanoSeq.load(r)
        obj.payload_bits = r.u64()
        obj.payload = r.words()
        return obj
