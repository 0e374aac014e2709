"""Succinct building blocks: rank/select, Elias-Fano, retrieval, hashing."""

from .bits import PackedInts, RankSelectBits
from .eliasfano import EliasFanoSeq, NotMonotone
from .functions import CompressedFunction, Mphf, StaticFunction
from .reldict import RelativeDictionary

__all__ = [
    "PackedInts",
    "RankSelectBits",
    "EliasFanoSeq",
    "NotMonotone",
    "StaticFunction",
    "Mphf",
    "CompressedFunction",
    "RelativeDictionary",
]
