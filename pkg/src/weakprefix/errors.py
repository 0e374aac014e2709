"""Exception hierarchy shared by every module."""


class WeakPrefixError(Exception):
    pass


class EmptyInput(WeakPrefixError, ValueError):
    pass


class AllOnes(WeakPrefixError, ValueError):
    """Raised when a same-length successor is requested for 11...1."""


class NotPrefixFree(WeakPrefixError, ValueError):
    def __init__(self, ranks, input_indices=None):
        self.ranks = tuple(ranks)
        self.input_indices = tuple(input_indices) if input_indices is not None else None
        where = self.input_indices if self.input_indices is not None else self.ranks
        super().__init__(f"string {where[0]} is a prefix of string {where[1]}")


class Duplicate(WeakPrefixError, ValueError):
    def __init__(self, rank, input_indices=None):
        self.rank = rank
        self.input_indices = tuple(input_indices) if input_indices is not None else None
        where = self.input_indices if self.input_indices is not None else (rank,)
        super().__init__(f"duplicate string at {', '.join(map(str, where))}")


class NotAPrefix(WeakPrefixError, ValueError):
    pass


class BuildFailed(WeakPrefixError, RuntimeError):
    pass


class HashCollision(BuildFailed):
    """Two distinct keys share a fingerprint; only a new hash seed helps."""


class InvalidC(WeakPrefixError, ValueError):
    pass


class RankOutOfRange(WeakPrefixError, IndexError):
    pass


class InvalidRange(WeakPrefixError, ValueError):
    pass


class ContainerError(WeakPrefixError):
    pass


class BadMagic(ContainerError):
    pass


class VersionMismatch(ContainerError):
    pass


class VariantMismatch(VersionMismatch):
    pass


class SectionCorrupt(ContainerError):
    pass
