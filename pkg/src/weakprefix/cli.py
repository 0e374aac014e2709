"""Command-line front end: build, query, verify, stats, bench."""

from __future__ import annotations

import argparse
import random
import sys
import time
from typing import Sequence

from .bitcore import BitString
from .corpus import Corpus, default_corpora, fixed_length_set
from .errors import (BuildFailed, ContainerError, Duplicate, EmptyInput, InvalidC,
                     InvalidRange, NotPrefixFree, WeakPrefixError)
from .index import SPACE, TIME, IndexConfig, WeakPrefixIndex
from .store import StringStore, prefix_count, prefix_search, range_report
from .trie import build_trie
from .verify import run_verify

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_BUILD = 3
EXIT_CONTAINER = 4

ALPHABET_SECTION = b"ALPHABET"


class InputError(WeakPrefixError, ValueError):
    pass


def parse_seed(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex seed: {text!r}") from None


def encode(raw: bytes, alphabet: str, where: str = "") -> BitString:
    if alphabet == "byte":
        return BitString.from_bytes(raw)
    try:
        return BitString.from_str(raw.decode("ascii"))
    except (UnicodeDecodeError, ValueError):
        raise InputError(f"{where}not a binary string: {raw[:40]!r}") from None


def decode(s: BitString, alphabet: str) -> str:
    if alphabet == "byte":
        data = s.value.to_bytes(s.length // 8, "big") if s.length else b""
        return data.decode("utf-8", errors="backslashreplace")
    return str(s)


def read_strings(path: str, alphabet: str) -> tuple:
    """(strings, line numbers); blank lines are skipped, CRLF is tolerated."""
    with open(path, "rb") as fh:
        lines = fh.read().split(b"\n")
    strings, line_nos = [], []
    for no, line in enumerate(lines, 1):
        if line.endswith(b"\r"):
            line = line[:-1]
        if not line:
            continue
        strings.append(encode(line, alphabet, f"line {no}: "))
        line_nos.append(no)
    return strings, line_nos


def _query_arg(text: str, alphabet: str) -> BitString:
    if alphabet == "byte":
        return BitString.from_bytes(text.encode("utf-8"))
    try:
        return BitString.from_str(text)
    except ValueError:
        raise InputError(f"query: not a binary string: {text[:40]!r}") from None


# -- commands -------------------------------------------------------------

def run_build(args) -> int:
    strings, line_nos = read_strings(args.input, args.alphabet)
    try:
        cfg = IndexConfig(variant=args.variant, c=args.c, seed=args.seed)
        index = WeakPrefixIndex.build(strings, cfg)
    except Duplicate as exc:
        a, b = (line_nos[k] for k in exc.input_indices)
        print(f"error: lines {a} and {b} hold the same string", file=sys.stderr)
        return EXIT_INVALID
    except NotPrefixFree as exc:
        a, b = (line_nos[k] for k in exc.input_indices)
        print(f"error: line {a} is a prefix of line {b}", file=sys.stderr)
        return EXIT_INVALID
    store = StringStore(index.trie.strings, presorted=True)
    index.extra = {ALPHABET_SECTION: args.alphabet.encode()}
    data = index.to_bytes(store)
    with open(args.out, "wb") as fh:
        fh.write(data)
    st = index.stats()
    print(f"n={st.n} HT={st.hollow_trie_measure} T={st.trie_measure}")
    print(st.render(include_time=False))
    return EXIT_OK


def load_index(path: str, expect_variant: str | None = None) -> WeakPrefixIndex:
    with open(path, "rb") as fh:
        data = fh.read()
    return WeakPrefixIndex.from_bytes(data, expect_variant)


def run_query(args) -> int:
    index = load_index(args.index, args.expect_variant)
    alphabet = index.extra.get(ALPHABET_SECTION, b"binary").decode()
    store = index.store
    if args.kind != "prefix" and store is None:
        print("error: index file carries no string store", file=sys.stderr)
        return EXIT_CONTAINER
    if args.kind == "range":
        if len(args.strings) != 2:
            print("error: range needs exactly two strings", file=sys.stderr)
            return EXIT_INVALID
        a, b = (_query_arg(x, alphabet) for x in args.strings)
        res = range_report(index, store, a, b)
        for s in res.strings:
            print(decode(s, alphabet))
        print(f"probes={res.probes}")
        return EXIT_OK
    for text in args.strings:
        p = _query_arg(text, alphabet)
        if args.kind == "prefix":
            i, j = index.weak_prefix_search(p)
            print(f"{i} {j}")
        elif args.kind == "count":
            count, probes = prefix_count(index, store, p)
            print(f"{count} {probes}")
        else:
            res = prefix_search(index, store, p)
            for s in res.strings:
                print(decode(s, alphabet))
            print(f"probes={res.probes}")
    return EXIT_OK


def run_stats(args) -> int:
    index = load_index(args.index)
    print(index.stats().render(include_time=False))
    return EXIT_OK


def run_verify_cmd(args) -> int:
    if args.input:
        strings, _ = read_strings(args.input, args.alphabet)
        build_trie(strings)  # validation errors surface with exit 2
        corpora = [Corpus(args.input, 0, strings)]
    else:
        corpora = default_corpora(args.seed, args.count, args.max_n, args.max_len)
    configs = [(SPACE, 2)] + [(TIME, c) for c in args.c]
    report = run_verify(corpora, configs, cap=args.cap, seed=args.seed,
                        stop_on_failure=True, fault=args.inject_fault,
                        range_queries=args.range_queries)
    print(report.table())
    if not report.ok:
        print(f"counterexample: {report.failures[0]}")
        return EXIT_MISMATCH
    print("all checks passed")
    return EXIT_OK


def run_bench(args) -> int:
    rng = random.Random(args.seed)
    header = None
    for e in range(args.min_exp, args.max_exp + 1):
        n = 1 << e
        strings = fixed_length_set(rng, n, args.length)
        t0 = time.perf_counter()
        index = WeakPrefixIndex.build(strings, IndexConfig(variant=args.variant, c=args.c,
                                                           seed=args.seed))
        secs = time.perf_counter() - t0
        st = index.stats()
        comps = st.components
        if header is None:
            header = ["n", "HT/n"] + list(comps) + ["core/n", "total/n"]
            print("\t".join(header))
        row = [str(n), f"{st.hollow_trie_measure / n:.3f}"]
        row += [f"{v / n:.3f}" for v in comps.values()]
        row += [f"{st.core_bits() / n:.3f}", f"{st.bits_per_key:.3f}"]
        print("\t".join(row))
        if args.timing:
            print(f"# build {secs:.2f}s", file=sys.stderr)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weakprefix", description="Succinct weak prefix search.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_build=True):
        p.add_argument("--alphabet", choices=("binary", "byte"), default="binary")
        p.add_argument("--seed", type=parse_seed, default=0, help="master seed (hex)")
        if with_build:
            p.add_argument("--variant", choices=(SPACE, TIME), default=SPACE)
            p.add_argument("--c", type=int, default=2, help="levels of the constant-time map")

    b = sub.add_parser("build", help="build an index file from newline-separated strings")
    b.add_argument("input")
    b.add_argument("--out", required=True)
    common(b)
    b.set_defaults(func=run_build)

    q = sub.add_parser("query", help="query an index file")
    q.add_argument("index")
    q.add_argument("kind", choices=("prefix", "count", "search", "range"))
    q.add_argument("strings", nargs="+")
    q.add_argument("--expect-variant", choices=(SPACE, TIME), default=None)
    q.set_defaults(func=run_query)

    s = sub.add_parser("stats", help="print index statistics as key=value lines")
    s.add_argument("index")
    s.set_defaults(func=run_stats)

    v = sub.add_parser("verify", help="check indexes against the bisection oracle")
    common(v, with_build=False)
    v.add_argument("--input", default=None, help="verify one string file instead of a corpus")
    v.add_argument("--count", type=int, default=200)
    v.add_argument("--max-n", type=int, default=1024)
    v.add_argument("--max-len", type=int, default=4096)
    v.add_argument("--cap", type=int, default=100_000)
    v.add_argument("--c", type=int, nargs="+", default=[2, 3])
    v.add_argument("--range-queries", type=int, default=50)
    v.add_argument("--inject-fault", action="store_true",
                   help="corrupt one stored delta to exercise the failure path")
    v.set_defaults(func=run_verify_cmd)

    be = sub.add_parser("bench", help="bits per key per component on synthetic sets")
    common(be)
    be.add_argument("--min-exp", type=int, default=10)
    be.add_argument("--max-exp", type=int, default=14)
    be.add_argument("--length", type=int, default=64)
    be.add_argument("--timing", action="store_true")
    be.set_defaults(func=run_bench)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, EmptyInput, InvalidC, InvalidRange, NotPrefixFree, Duplicate) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BuildFailed as exc:
        print(f"error: build failed: {exc}", file=sys.stderr)
        return EXIT_BUILD
    except ContainerError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONTAINER
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTAINER if getattr(args, "index", None) else EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
