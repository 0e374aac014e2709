"""Oracle sweeps over corpora: interval equality plus structural invariants.

The oracle is a bisection over the sorted '0'/'1' renderings of the strings,
which shares no code with the trie or the index.
"""

from __future__ import annotations

import random
import time
from bisect import bisect_left, bisect_right
from collections import Counter
from dataclasses import dataclass, field

from .bitcore import BitString
from .corpus import Corpus, distinct_prefixes
from .fastmap import LookupCount
from .index import SPACE, TIME, IndexConfig, WeakPrefixIndex
from .rlocator import build_P
from .store import StringStore, prefix_count, prefix_search, range_empty, range_report
from .trie import CompactedTrie, build_trie
from .zfast import ExitTrace

DEFAULT_CONFIGS = ((SPACE, 2), (TIME, 2), (TIME, 3))


class BisectOracle:
    def __init__(self, strings):
        self.keys = sorted(str(s) for s in strings)

    def interval(self, p) -> tuple:
        ps = str(p)
        return bisect_left(self.keys, ps), bisect_left(self.keys, ps + "2")

    def range(self, a, b) -> list:
        return self.keys[bisect_left(self.keys, str(a)):bisect_right(self.keys, str(b))]


@dataclass
class Failure:
    kind: str
    corpus: str
    seed: int
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} in {self.corpus} (set seed {self.seed:#x}): {self.detail}"


@dataclass
class VerifyReport:
    sets: int = 0
    queries: int = 0
    checks: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    max_failures: int = 50

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, kind: str, corpus: Corpus, detail: str):
        self.checks[kind + "_failed"] += 1
        if len(self.failures) < self.max_failures:
            self.failures.append(Failure(kind, corpus.name, corpus.seed, detail))

    def merge(self, other: "VerifyReport"):
        self.sets += other.sets
        self.queries += other.queries
        self.checks.update(other.checks)
        room = self.max_failures - len(self.failures)
        self.failures.extend(other.failures[:max(room, 0)])
        self.seconds += other.seconds

    def table(self) -> str:
        rows = [("sets", self.sets), ("queries", self.queries)]
        rows += sorted(self.checks.items())
        rows.append(("seconds", f"{self.seconds:.1f}"))
        w = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(w)}  {v}" for k, v in rows)


def check_exit_trace(trie: CompactedTrie, p: BitString, trace: ExitTrace) -> str | None:
    """Iteration bound and interval invariants of one exit search; None if clean."""
    bound = p.length.bit_length()  # floor(log2 |p|) + 1
    if trace.iterations > bound:
        return f"{trace.iterations} iterations > {bound}"
    ext = trie.proper_prefix_extent_lengths(p)
    allowed = set(ext) | {0}
    top = ext[-1] if ext else 0
    for i, lo, hi, m, g in trace.steps:
        step = 1 << i
        if (hi - 1) // step - lo // step > 1:
            return f"two multiples of 2^{i} in ({lo}..{hi})"
        if lo not in allowed or lo > top:
            return f"l={lo} is not an extent length on the path"
        if hi < top:
            return f"r={hi} dropped below |p_t|={top}"
    return None


def verify_corpus(corpus: Corpus, configs=DEFAULT_CONFIGS, cap: int = 100_000,
                  seed: int = 0, probes: bool = True, invariants: bool = True,
                  range_queries: int = 50, fault: bool = False,
                  reload: bool = False) -> VerifyReport:
    rep = VerifyReport()
    start = time.perf_counter()
    rep.sets = 1
    rng = random.Random(seed ^ corpus.seed)
    trie = build_trie(corpus.strings)
    oracle = BisectOracle(corpus.strings)
    if invariants:
        _check_trie_invariants(trie, corpus, rep)
    queries = distinct_prefixes(trie, cap, rng)
    expected = [oracle.interval(q) for q in queries]
    rep.queries = len(queries)
    fault_node = _fault_node(trie) if fault else None
    primary = None
    for variant, c in configs:
        cfg = IndexConfig(variant=variant, c=c, seed=rng.getrandbits(64))
        ix = WeakPrefixIndex.build(trie, cfg, fault_node if variant == SPACE else None)
        if reload:
            ix = WeakPrefixIndex.from_bytes(ix.to_bytes())
        tag = f"{variant}" + (f"/c={c}" if variant == TIME else "")
        _sweep(ix, trie, queries, expected, corpus, rep, tag, invariants)
        # probe laws concern the store, so they run on the cheapest index
        if primary is None or (variant == TIME and primary.variant != TIME):
            primary = ix
    if probes and primary is not None:
        _check_probes(primary, trie, oracle, queries, expected, corpus, rep, rng, range_queries)
    rep.seconds = time.perf_counter() - start
    return rep


def _fault_node(trie: CompactedTrie) -> int | None:
    for k in trie.internal_nodes():
        i, j = trie.nodes[k].skip
        if j > i:
            return k
    return None


def _check_trie_invariants(trie: CompactedTrie, corpus: Corpus, rep: VerifyReport):
    meas = trie.measures()
    if meas.avg_internal_extent_len is not None:
        rep.checks["mean_extent_bound"] += 1
        if meas.avg_internal_extent_len > trie.avg_len - 1:
            rep.fail("mean_extent_bound", corpus,
                     f"mean internal extent {meas.avg_internal_extent_len} > {trie.avg_len - 1}")
    if trie.n >= 2:
        keys, _ = build_P(trie)
        rep.checks["P_mean_length"] += 1
        if sum(x.length for x in keys) * trie.n > 3 * trie.total_bits * len(keys):
            rep.fail("P_mean_length", corpus, "mean key length of P exceeds 3 * mean string length")


def _sweep(ix, trie, queries, expected, corpus, rep, tag, invariants):
    search = ix.weak_prefix_search
    timed = ix.variant == TIME and ix.exit is not None
    traced = ix.variant == SPACE and ix.exit is not None and invariants
    c = ix.exit.c if timed else 0
    for q, want in zip(queries, expected):
        if traced:
            tr = ExitTrace()
            got = search(q, tr)
            if q.length:
                bad = check_exit_trace(trie, q, tr)
                rep.checks["zfast_trace"] += 1
                if bad:
                    rep.fail("zfast_trace", corpus, f"query {q}: {bad}")
        elif timed:
            cnt = LookupCount()
            got = search(q, cnt)
            rep.checks["fastmap_lookups"] += 1
            if cnt.f > c or cnt.g > c:
                rep.fail("fastmap_lookups", corpus, f"query {q}: F={cnt.f} G={cnt.g} > c={c}")
        else:
            got = search(q)
        rep.checks[f"interval[{tag}]"] += 1
        if tuple(got) != want:
            rep.fail(f"interval[{tag}]", corpus, f"query {q}: got {list(got)} expected {list(want)}")


def _random_string(rng: random.Random, trie: CompactedTrie) -> BitString:
    if rng.random() < 0.5:
        s = trie.strings[rng.randrange(trie.n)]
        k = rng.randint(0, s.length)
        tail = rng.randint(0, 8)
        return s.prefix(k) + BitString(tail, rng.getrandbits(tail))
    k = rng.randint(0, min(trie.max_len, 64))
    return BitString(k, rng.getrandbits(k))


def _check_probes(ix, trie, oracle, queries, expected, corpus, rep, rng, range_queries):
    store = StringStore(trie.strings, presorted=True)
    for q, (i, j) in zip(queries, expected):
        t = j - i
        res = prefix_search(ix, store, q)
        rep.checks["probe_prefix_search"] += 1
        if [str(s) for s in res.strings] != oracle.keys[i:j] or res.probes != t:
            rep.fail("probe_prefix_search", corpus, f"query {q}: {res.probes} probes for t={t}")
        count, probes = prefix_count(ix, store, q)
        rep.checks["probe_prefix_count"] += 1
        if count != t or probes > 1:
            rep.fail("probe_prefix_count", corpus, f"query {q}: count {count} probes {probes}")
    for _ in range(max(range_queries, 1)):
        q = _random_string(rng, trie)
        i, j = oracle.interval(q)
        res = prefix_search(ix, store, q)
        rep.checks["probe_prefix_search"] += 1
        if j == i and (res.strings or res.probes > 1):
            rep.fail("probe_prefix_search", corpus, f"non-prefix {q}: {res.probes} probes")
        elif j > i and res.probes != j - i:
            rep.fail("probe_prefix_search", corpus, f"query {q}: {res.probes} probes for t={j - i}")
        count, probes = prefix_count(ix, store, q)
        rep.checks["probe_prefix_count"] += 1
        if count != j - i or probes > 1:
            rep.fail("probe_prefix_count", corpus, f"query {q}: count {count} probes {probes}")
    for _ in range(range_queries):
        a, b = sorted((_random_string(rng, trie), _random_string(rng, trie)))
        check_range(ix, store, oracle, a, b, corpus, rep)


def check_range(ix, store, oracle, a, b, corpus, rep):
    want = oracle.range(a, b)
    k = len(want)
    res = range_report(ix, store, a, b)
    limit = k + 1 if b.startswith(a) else k + 2
    rep.checks["probe_range_report"] += 1
    if [str(s) for s in res.strings] != want or res.probes > limit:
        rep.fail("probe_range_report", corpus,
                 f"[{a}..{b}]: {len(res.strings)} strings, {res.probes} probes, expected {k} within {limit}")
    empty, probes = range_empty(ix, store, a, b)
    rep.checks["probe_range_empty"] += 1
    if empty != (k == 0) or probes > 2:
        rep.fail("probe_range_empty", corpus, f"[{a}..{b}]: empty={empty} probes={probes}")


def run_verify(corpora, configs=DEFAULT_CONFIGS, cap: int = 100_000, seed: int = 0,
               stop_on_failure: bool = False, **kwargs) -> VerifyReport:
    total = VerifyReport()
    for corpus in corpora:
        total.merge(verify_corpus(corpus, configs, cap, seed, **kwargs))
        if stop_on_failure and total.failures:
            break
    return total
