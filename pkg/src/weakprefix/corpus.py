"""Synthetic prefix-free string sets and prefix query enumeration."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bitcore import BitString
from .trie import CompactedTrie


@dataclass
class Corpus:
    name: str
    seed: int
    strings: list


def make_prefix_free(strings) -> list:
    """Sorted, deduplicated subset with every string that extends a kept one dropped."""
    out: list = []
    for s in sorted(set(strings)):
        if out and s.startswith(out[-1]):
            continue
        out.append(s)
    return out


def random_set(rng: random.Random, n: int, max_len: int) -> list:
    strings = set()
    for _ in range(n):
        k = rng.randint(1, max_len)
        strings.add(BitString(k, rng.getrandbits(k)))
    return make_prefix_free(strings)


def fixed_length_set(rng: random.Random, n: int, length: int) -> list:
    n = min(n, 1 << length)
    strings = set()
    while len(strings) < n:
        strings.add(BitString(length, rng.getrandbits(length)))
    return sorted(strings)


def shared_prefix_set(rng: random.Random, n: int, max_len: int) -> list:
    """Strings grown from a few long stems, including all-zero and all-one runs."""
    stems = [BitString(max_len, 0), BitString(max_len, (1 << max_len) - 1)]
    for _ in range(rng.randint(1, 4)):
        stems.append(BitString(max_len, rng.getrandbits(max_len)))
    strings = set()
    for _ in range(n):
        stem = rng.choice(stems)
        cut = rng.randint(0, max_len - 1)
        tail = rng.randint(1, max(1, min(64, max_len - cut)))
        s = stem.prefix(cut) + BitString(tail, rng.getrandbits(tail))
        strings.add(s)
    return make_prefix_free(strings)


def default_corpora(seed: int = 1, count: int = 200, max_n: int = 1024,
                    max_len: int = 4096) -> list:
    """A reproducible mix of random, shared-prefix-heavy and fixed-length sets.

    A handful of leading sets hit the extremes (single strings, n = max_n,
    strings of max_len bits, one set with more prefixes than the usual query
    cap); the rest are small so that every prefix can be checked quickly.
    """
    rng = random.Random(seed)
    special = [
        ("random", 1, 1), ("shared", 1, 100), ("fixed", 1, max_len),
        ("fixed", 2, 1), ("fixed", max_n, 11), ("random", max_n, 24),
        ("shared", max_n, max_len), ("fixed", 3, max_len), ("random", max_n, max_len),
    ]
    out = []
    kinds = ("random", "shared", "fixed")
    for k in range(count):
        if k < len(special):
            kind, n, length = special[k]
        else:
            kind = kinds[k % 3]
            n = rng.randint(2, 64)
            length = rng.choice((rng.randint(1, 16), rng.randint(1, 48), rng.randint(1, 128)))
            if kind == "fixed":
                length = max(length, (n - 1).bit_length())
        set_seed = rng.getrandbits(32)
        srng = random.Random(set_seed)
        if kind == "random":
            strings = random_set(srng, n, length)
        elif kind == "shared":
            strings = shared_prefix_set(srng, n, length)
        else:
            strings = fixed_length_set(srng, n, length)
        out.append(Corpus(f"{kind}-{k}", set_seed, strings))
    return out


def distinct_prefixes(trie: CompactedTrie, cap: int | None = None,
                      rng: random.Random | None = None) -> list:
    """Every distinct prefix of every string (including the empty one), sampled down to ``cap``."""
    spans = []
    total = 1
    for k, nd in enumerate(trie.nodes):
        lo = 0 if k == trie.root else nd.skip[0]
        if nd.extent_len > lo:
            spans.append((nd.lo, lo, nd.extent_len))
            total += nd.extent_len - lo
    strings = trie.strings
    if cap is None or total <= cap:
        out = [BitString()]
        for rank, lo, hi in spans:
            s = strings[rank]
            out.extend(s.prefix(v) for v in range(lo + 1, hi + 1))
        return out
    rng = rng or random.Random(0)
    picks = sorted(rng.sample(range(total), cap))
    out = []
    pos = 1
    it = iter(picks)
    nxt = next(it, None)
    if nxt == 0:
        out.append(BitString())
        nxt = next(it, None)
    for rank, lo, hi in spans:
        width = hi - lo
        while nxt is not None and nxt < pos + width:
            out.append(strings[rank].prefix(lo + 1 + nxt - pos))
            nxt = next(it, None)
        pos += width
    return out
