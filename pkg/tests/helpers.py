"""Shared fixtures data and independent oracles for the test suite."""

from __future__ import annotations

from bisect import bisect_left

from hypothesis import strategies as st

from weakprefix.bitcore import BitString

TOY = ["001001010", "0010011010010", "00100110101"]


def bs(text: str) -> BitString:
    return BitString.from_str(text)


def toy_strings() -> list:
    return [bs(s) for s in TOY]


def prefix_free(texts) -> list:
    """Sorted texts with duplicates and extensions of kept texts removed."""
    out = []
    for s in sorted(set(texts)):
        if out and s.startswith(out[-1]):
            continue
        out.append(s)
    return out


def interval(sorted_texts: list, p: str) -> tuple:
    """Ranks of the texts starting with p, by bisection on '0'/'1' text."""
    return bisect_left(sorted_texts, p), bisect_left(sorted_texts, p + "2")


def all_prefixes(texts) -> list:
    return sorted({t[:k] for t in texts for k in range(len(t) + 1)})


bit_text = st.text(alphabet="01", min_size=1, max_size=40)

prefix_free_sets = (st.lists(bit_text, min_size=1, max_size=40)
                    .map(prefix_free)
                    .filter(lambda xs: len(xs) >= 1))


def internal_extents(sorted_texts: list) -> list:
    """Each internal node's extent is the lcp of some adjacent pair, and vice versa."""
    out = set()
    for a, b in zip(sorted_texts, sorted_texts[1:]):
        k = 0
        while a[k] == b[k]:
            k += 1
        out.add(a[:k])
    return sorted(out)


def node_names(sorted_texts: list) -> list:
    names = {""}
    for e in internal_extents(sorted_texts):
        names.update((e + "0", e + "1"))
    return sorted(names)


def exit_name(sorted_texts: list, p: str) -> str:
    """Longest node name that prefixes p: the exit node of any prefix p of S."""
    return max((x for x in node_names(sorted_texts) if p.startswith(x)), key=len)
