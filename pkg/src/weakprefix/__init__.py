"""Weak prefix search over prefix-free binary string sets in succinct space."""

from .bitcore import BitString
from .errors import (BadMagic, BuildFailed, ContainerError, Duplicate, EmptyInput,
                     HashCollision, InvalidC, InvalidRange, NotPrefixFree, RankOutOfRange,
                     SectionCorrupt, VariantMismatch, VersionMismatch, WeakPrefixError)
from .index import (SPACE, TIME, IndexConfig, IndexStats, WeakPrefixIndex, build_index,
                    deserialize, serialize, weak_prefix_search)
from .store import (QueryResult, StringStore, build_store, prefix_count, prefix_search,
                    range_empty, range_report)
from .trie import CompactedTrie, build_trie

__version__ = "0.1.0"

__all__ = [
    "BitString", "CompactedTrie", "build_trie",
    "SPACE", "TIME", "IndexConfig", "IndexStats", "WeakPrefixIndex", "build_index",
    "weak_prefix_search", "serialize", "deserialize",
    "StringStore", "QueryResult", "build_store", "prefix_search", "prefix_count",
    "range_report", "range_empty",
    "WeakPrefixError", "EmptyInput", "NotPrefixFree", "Duplicate", "BuildFailed",
    "HashCollision", "InvalidC", "InvalidRange", "RankOutOfRange", "ContainerError",
    "BadMagic", "VersionMismatch", "VariantMismatch", "SectionCorrupt",
]
