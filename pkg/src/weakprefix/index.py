"""Weak prefix search index: exit-node name structure plus range locator."""

from __future__ import annotations

import hashlib
import json
import struct
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import BinaryIO, Sequence

from .bitcore import BitString, PrefixHasher, derive_seeds
from .errors import (BadMagic, HashCollision, SectionCorrupt, VariantMismatch,
                     VersionMismatch)
from .fastmap import ConstTimeMap
from .rlocator import BASELINE, LENGTH_SPLIT, RangeLocator
from .serial import Reader, Writer
from .store import StringStore
from .trie import CompactedTrie, build_trie
from .zfast import HollowZFastPrefixTrie

SPACE = "space"
TIME = "time"
MAGIC = b"WPS1"
FORMAT_VERSION = 1
HASH_RETRIES = 8
_CORE_SECTIONS = (b"META", b"EXIT", b"LOCATOR", b"STORE")


@dataclass
class IndexConfig:
    variant: str = SPACE
    c: int = 2
    seed: int = 0
    mmph_variant: str | None = None  # default: length-split for space, baseline for time

    def locator_variant(self) -> str:
        if self.mmph_variant is not None:
            return self.mmph_variant
        return LENGTH_SPLIT if self.variant == SPACE else BASELINE


@dataclass
class IndexStats:
    variant: str
    n: int
    total_bits: int
    avg_len: Fraction
    avg_len_ceil: int
    max_len: int
    trie_measure: int
    hollow_trie_measure: int
    components: dict
    total_index_bits: int
    seed: int
    hash_seed: int
    c: int = 0
    t: int = 0
    mmph_variant: str = ""
    build_seconds: float = field(default=0.0, compare=False)

    @property
    def bits_per_key(self) -> float:
        return self.total_index_bits / self.n

    def core_bits(self) -> int:
        """Index bits minus the locator's monotone hash, whose rank tables are explicit."""
        return sum(v for k, v in self.components.items() if k != "locator_mmph_bits")

    def lines(self, include_time: bool = True) -> list:
        out = [
            f"variant={self.variant}",
            f"n={self.n}",
            f"total_bits={self.total_bits}",
            f"avg_len={self.avg_len}",
            f"avg_len_ceil={self.avg_len_ceil}",
            f"max_len={self.max_len}",
            f"T={self.trie_measure}",
            f"HT={self.hollow_trie_measure}",
        ]
        if self.variant == TIME:
            out += [f"c={self.c}", f"t={self.t}"]
        out.append(f"mmph={self.mmph_variant}")
        out += [f"{k}={v}" for k, v in self.components.items()]
        out += [f"index_bits={self.total_index_bits}",
                f"bits_per_key={self.bits_per_key:.3f}",
                f"seed={self.seed:#x}"]
        if include_time:
            out.append(f"build_seconds={self.build_seconds:.3f}")
        return out

    def render(self, include_time: bool = True) -> str:
        return "\n".join(self.lines(include_time))

    def to_json(self) -> str:
        d = asdict(self)
        d["avg_len"] = str(self.avg_len)
        del d["build_seconds"]  # keeps saved files deterministic
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "IndexStats":
        d = json.loads(text)
        d["avg_len"] = Fraction(d["avg_len"])
        return cls(**d)


class WeakPrefixIndex:
    def __init__(self):
        self.variant = SPACE
        self.n = 0
        self.hash_seed = 0
        self.exit = None
        self.locator: RangeLocator | None = None
        self.stats_: IndexStats | None = None
        self.trie: CompactedTrie | None = None
        self.store = None
        self.extra: dict = {}

    @classmethod
    def build(cls, strings: Sequence[BitString] | CompactedTrie,
              config: IndexConfig | None = None, fault_node: int | None = None) -> "WeakPrefixIndex":
        config = config or IndexConfig()
        if config.variant not in (SPACE, TIME):
            raise ValueError(f"unknown variant {config.variant!r}")
        start = time.perf_counter()
        trie = strings if isinstance(strings, CompactedTrie) else build_trie(strings)
        obj = cls()
        obj.variant = config.variant
        obj.n = trie.n
        obj.trie = trie
        state = config.seed
        for attempt in range(HASH_RETRIES):
            state, hash_seed, exit_seed, loc_seed = derive_seeds(state, 4)
            try:
                obj._build_parts(trie, config, hash_seed, exit_seed, loc_seed, fault_node)
                break
            except HashCollision:
                if attempt == HASH_RETRIES - 1:
                    raise
            finally:
                trie.drop_hashers()
        obj.hash_seed = hash_seed
        obj.stats_ = obj._make_stats(trie, config, hash_seed, time.perf_counter() - start)
        return obj

    def _build_parts(self, trie, config, hash_seed, exit_seed, loc_seed, fault_node):
        self.hash_seed = hash_seed
        if trie.n == 1:
            self.exit = None
            self.locator = None
            return
        if config.variant == SPACE:
            self.exit = HollowZFastPrefixTrie.build(trie, exit_seed, hash_seed, fault_node)
        else:
            self.exit = ConstTimeMap.build(trie, config.c, exit_seed, hash_seed)
        self.locator = RangeLocator.build(trie, config.locator_variant(), loc_seed, hash_seed)

    def _make_stats(self, trie, config, hash_seed, seconds) -> IndexStats:
        meas = trie.measures()
        comps: dict = {}
        c = t = 0
        if self.exit is not None:
            prefix = "zfast_" if self.variant == SPACE else "fastmap_"
            for k, v in self.exit.size_report().items():
                if k.endswith("_bits"):
                    comps[prefix + k] = v
            if self.variant == TIME:
                c, t = self.exit.c, self.exit.t
            rep = self.locator.size_report()
            comps["locator_mmph_bits"] = rep["mmph_bits"]
            comps["locator_b_bits"] = rep["b_bits"]
        elif self.variant == TIME:
            c = config.c
        return IndexStats(
            variant=self.variant, n=trie.n, total_bits=trie.total_bits, avg_len=trie.avg_len,
            avg_len_ceil=trie.avg_len_ceil, max_len=trie.max_len,
            trie_measure=meas.trie_measure, hollow_trie_measure=meas.hollow_trie_measure,
            components=comps, total_index_bits=sum(comps.values()), seed=config.seed,
            hash_seed=hash_seed, c=c, t=t, mmph_variant=config.locator_variant(),
            build_seconds=seconds)

    # -- queries --------------------------------------------------------

    def exit_name_len(self, p: BitString, hasher: PrefixHasher | None = None) -> int:
        if self.exit is None or p.length == 0:
            return 0
        if hasher is None:
            hasher = PrefixHasher(p, self.hash_seed)
        return self.exit.exit_name_len(hasher, p.length)

    def weak_prefix_search(self, p: BitString, probe=None) -> tuple:
        """Rank interval of the strings prefixed by p (garbage if p prefixes none).

        ``probe`` is handed to the exit structure: an ExitTrace for the space
        variant or a LookupCount for the time variant.
        """
        if self.n == 1:
            return 0, 1
        if p.length == 0:
            return 0, self.n
        hasher = PrefixHasher(p, self.hash_seed)
        name_len = self.exit.exit_name_len(hasher, p.length, probe)
        return self.locator.locate_prefix(p, hasher, name_len)

    __call__ = weak_prefix_search

    def stats(self) -> IndexStats:
        return self.stats_

    # -- container ------------------------------------------------------

    def to_bytes(self, store=None, extra: dict | None = None) -> bytes:
        """Container bytes; ``extra`` maps additional section names to raw payloads."""
        meta = Writer()
        meta.text(self.variant)
        meta.u64(self.n)
        meta.u64(self.hash_seed)
        meta.text(self.stats_.to_json())
        sections = [(b"META", meta.getvalue())]
        if self.exit is not None:
            w = Writer()
            self.exit.dump(w)
            sections.append((b"EXIT", w.getvalue()))
            w = Writer()
            self.locator.dump(w)
            sections.append((b"LOCATOR", w.getvalue()))
        store = store if store is not None else self.store
        if store is not None:
            w = Writer()
            store.dump(w)
            sections.append((b"STORE", w.getvalue()))
        for name, payload in sorted((extra or self.extra).items()):
            sections.append((name, payload))
        return write_container(sections)

    @classmethod
    def from_bytes(cls, data: bytes, expect_variant: str | None = None) -> "WeakPrefixIndex":
        sections = read_container(data)
        if b"META" not in sections:
            raise SectionCorrupt("missing META section")
        obj = cls()
        r = Reader(sections[b"META"])
        obj.variant = r.text()
        if expect_variant is not None and obj.variant != expect_variant:
            raise VariantMismatch(f"file holds a {obj.variant} index, expected {expect_variant}")
        obj.n = r.u64()
        obj.hash_seed = r.u64()
        try:
            obj.stats_ = IndexStats.from_json(r.text())
        except (ValueError, TypeError, KeyError) as exc:
            raise SectionCorrupt(f"bad stats record: {exc}") from exc
        if obj.n > 1:
            if b"EXIT" not in sections or b"LOCATOR" not in sections:
                raise SectionCorrupt("missing structure sections")
            try:
                r = Reader(sections[b"EXIT"])
                obj.exit = (HollowZFastPrefixTrie if obj.variant == SPACE else ConstTimeMap).load(r)
                obj.locator = RangeLocator.load(Reader(sections[b"LOCATOR"]))
            except (ValueError, IndexError, OverflowError) as exc:
                raise SectionCorrupt(str(exc)) from exc
        if b"STORE" in sections:
            obj.store = StringStore.load(Reader(sections[b"STORE"]))
        obj.extra = {k: v for k, v in sections.items() if k not in _CORE_SECTIONS}
        return obj


def _checksum(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=8).digest()


def _pad(n: int) -> int:
    return (-n) % 8


def write_container(sections: list) -> bytes:
    """magic, u16 version, u16 count, then (name[8], u64 off, u64 len, sum[8]) rows."""
    header_len = 8 + len(sections) * 32
    header_len += _pad(header_len)
    table = []
    body = bytearray()
    off = header_len
    for name, data in sections:
        table.append(struct.pack("<8sQQ8s", name, off, len(data), _checksum(data)))
        body += data + b"\0" * _pad(len(data))
        off = header_len + len(body)
    head = MAGIC + struct.pack("<HH", FORMAT_VERSION, len(sections)) + b"".join(table)
    head += b"\0" * (header_len - len(head))
    return bytes(head) + bytes(body)


def read_container(data: bytes) -> dict:
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic("not a weak prefix index file")
    if len(data) < 8:
        raise SectionCorrupt("truncated header")
    version, count = struct.unpack_from("<HH", data, 4)
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"format version {version}, expected {FORMAT_VERSION}")
    if len(data) < 8 + 32 * count:
        raise SectionCorrupt("truncated section table")
    out = {}
    end = 8 + 32 * count
    end += _pad(end)
    for k in range(count):
        name, off, length, digest = struct.unpack_from("<8sQQ8s", data, 8 + 32 * k)
        end = max(end, off + length + _pad(length))
        if off + length > len(data):
            raise SectionCorrupt(f"section {name.rstrip(bytes(1)).decode(errors='replace')} truncated")
        chunk = data[off:off + length]
        if _checksum(chunk) != digest:
            raise SectionCorrupt(f"checksum mismatch in {name.rstrip(bytes(1)).decode(errors='replace')}")
        out[name.rstrip(b"\0")] = chunk
    if end != len(data):
        raise SectionCorrupt(f"file holds {len(data)} bytes, sections end at {end}")
    return out


def build_index(strings, config: IndexConfig | None = None, **kwargs) -> WeakPrefixIndex:
    if config is None:
        config = IndexConfig(**kwargs)
    return WeakPrefixIndex.build(strings, config)


def weak_prefix_search(index: WeakPrefixIndex, p: BitString) -> tuple:
    return index.weak_prefix_search(p)


def serialize(index: WeakPrefixIndex, sink: str | BinaryIO, store=None) -> bytes:
    data = index.to_bytes(store)
    if isinstance(sink, str):
        with open(sink, "wb") as fh:
            fh.write(data)
    elif sink is not None:
        sink.write(data)
    return data


def deserialize(source: str | bytes | BinaryIO, expect_variant: str | None = None) -> WeakPrefixIndex:
    if isinstance(source, str):
        with open(source, "rb") as fh:
            data = fh.read()
    elif isinstance(source, (bytes, bytearray, memoryview)):
        data = bytes(source)
    else:
        data = source.read()
    return WeakPrefixIndex.from_bytes(data, expect_variant)
