from __future__ import annotations

from typing import Sequence

from ..bitcore import BitString, PrefixHasher, fingerprint
from ..errors import BuildFailed
from ..serial import Reader, Writer
from .bits import PackedInts
from .functions import Mphf, check_distinct, signature

MAX_LEVELS = 64


def _ceil_log2_ratio(a: int, b: int) -> int:
    """Smallest w >= 0 with b * 2**w >= a."""
    w = 0
    while b << w < a:
        w += 1
    return w


class _Level:
    __slots__ = ("mphf", "sigs", "sig_seed", "width")

    def __init__(self, mphf: Mphf, sigs: PackedInts, sig_seed: int, width: int):
        self.mphf = mphf
        self.sigs = sigs
        self.sig_seed = sig_seed
        self.width = width

    def passes(self, fp: int, idx: int | None = None) -> bool:
        if idx is None:
            idx = self.mphf.eval_fp(fp)
        return self.sigs[idx] == signature(fp, self.sig_seed, self.width)

    def size_in_bits(self) -> int:
        return self.mphf.size_in_bits() + self.sigs.size_in_bits()


class RelativeDictionary:
    """Membership in E, exact for every query drawn from S (a superset of E).

    Level 0 stores a signature of max(1, ceil(log(|S|/|E|))) bits for each
    element of E behind an mphf.  The elements of S - E that still pass are
    filtered by a second level built the other way round, and so on until a
    level lets no element of its negative side through, so the answer is
    exact on all of S.
    """

    def __init__(self):
        self.levels: list = []
        self.hash_seed = 0
        self.seed = 0
        self.universe_size = 0
        self.member_count = 0

    @classmethod
    def build(cls, E: Sequence[BitString], S: Sequence[BitString], seed: int = 0,
              hash_seed: int = 0) -> "RelativeDictionary":
        e_fps = [fingerprint(x, hash_seed) for x in E]
        s_fps = [fingerprint(x, hash_seed) for x in S]
        return cls.from_fingerprints(e_fps, s_fps, seed, hash_seed)

    @classmethod
    def from_fingerprints(cls, e_fps: Sequence[int], s_fps: Sequence[int], seed: int = 0,
                          hash_seed: int = 0, mphf: Mphf | None = None) -> "RelativeDictionary":
        check_distinct(s_fps)
        eset = set(e_fps)
        if len(eset) != len(e_fps):
            raise ValueError("duplicate members")
        negatives = [fp for fp in s_fps if fp not in eset]
        if len(negatives) + len(e_fps) != len(s_fps):
            raise ValueError("E is not a subset of S")
        obj = cls()
        obj.hash_seed = hash_seed
        obj.seed = seed
        obj.universe_size = len(s_fps)
        obj.member_count = len(e_fps)
        if not e_fps:
            return obj
        positives = list(e_fps)
        width = max(1, _ceil_log2_ratio(len(s_fps), len(e_fps)))
        level_seed = seed
        while True:
            if len(obj.levels) >= MAX_LEVELS:
                raise BuildFailed("relative dictionary cascade did not converge")
            if obj.levels or mphf is None:
                level_mphf = Mphf.from_fingerprints(positives, level_seed, hash_seed)
            else:
                level_mphf = mphf
            sig_seed = (level_seed * 0x9E3779B97F4A7C15 + 1) & ((1 << 64) - 1)
            table = [0] * len(positives)
            for fp in positives:
                table[level_mphf.eval_fp(fp)] = signature(fp, sig_seed, width)
            level = _Level(level_mphf, PackedInts(width, table), sig_seed, width)
            obj.levels.append(level)
            leaked = [fp for fp in negatives if level.passes(fp)]
            if not leaked:
                return obj
            negatives, positives = positives, leaked
            width = max(1, _ceil_log2_ratio(len(negatives), len(positives))) + 1
            level_seed = (level_seed + 0x632BE59BD9B4E019) & ((1 << 64) - 1)

    def contains_fp(self, fp: int, first_index: int | None = None) -> bool:
        levels = self.levels
        if not levels:
            return False
        if not levels[0].passes(fp, first_index):
            return False
        for k in range(1, len(levels)):
            if not levels[k].passes(fp):
                return k % 2 == 1
        return (len(levels) - 1) % 2 == 0

    def contains(self, key: BitString) -> bool:
        return self.contains_fp(fingerprint(key, self.hash_seed))

    def contains_prefix(self, hasher: PrefixHasher, length: int) -> bool:
        return self.contains_fp(hasher.hash_prefix(length))

    @property
    def first_mphf(self) -> Mphf | None:
        return self.levels[0].mphf if self.levels else None

    @property
    def signature_width(self) -> int:
        return self.levels[0].width if self.levels else 0

    def size_in_bits(self) -> int:
        return sum(level.size_in_bits() for level in self.levels) + 2 * 64

    def dump(self, w: Writer, shared_first_mphf: bool = False):
        w.u64(self.hash_seed)
        w.u64(self.seed)
        w.u64(self.universe_size)
        w.u64(self.member_count)
        w.u32(len(self.levels))
        for k, level in enumerate(self.levels):
            if k or not shared_first_mphf:
                level.mphf.dump(w)
            w.u64(level.sig_seed)
            w.u8(level.width)
            level.sigs.dump(w)

    @classmethod
    def load(cls, r: Reader, first_mphf: Mphf | None = None) -> "RelativeDictionary":
        obj = cls()
        obj.hash_seed = r.u64()
        obj.seed = r.u64()
        obj.universe_size = r.u64()
        obj.member_count = r.u64()
        for k in range(r.u32()):
            mphf = first_mphf if (k == 0 and first_mphf is not None) else Mphf.load(r)
            sig_seed = r.u64()
            width = r.u8()
            obj.levels.append(_Level(mphf, PackedInts.load(r), sig_seed, width))
        return obj
