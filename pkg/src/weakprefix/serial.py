"""Little-endian byte writer/reader used by every structure's dump/load."""

from __future__ import annotations

import struct
from array import array
import sys

from .errors import SectionCorrupt


class Writer:
    def __init__(self):
        self.buf = bytearray()

    def u8(self, v: int):
        self.buf += struct.pack("<B", v)

    def u16(self, v: int):
        self.buf += struct.pack("<H", v)

    def u32(self, v: int):
        self.buf += struct.pack("<I", v)

    def u64(self, v: int):
        self.buf += struct.pack("<Q", v)

    def f64(self, v: float):
        self.buf += struct.pack("<d", v)

    def blob(self, data: bytes):
        self.u64(len(data))
        self.buf += data

    def text(self, s: str):
        self.blob(s.encode("utf-8"))

    def bigint(self, v: int):
        self.blob(v.to_bytes((v.bit_length() + 7) // 8, "little"))

    def words(self, arr: array):
        self.u64(len(arr))
        if sys.byteorder != "little":
            arr = array("Q", arr)
            arr.byteswap()
        self.buf += arr.tobytes()

    def getvalue(self) -> bytes:
        return bytes(self.buf)


class Reader:
    def __init__(self, data: bytes):
        self.data = memoryview(data)
        self.pos = 0

    def _take(self, n: int) -> memoryview:
        end = self.pos + n
        if end > len(self.data):
            raise SectionCorrupt("unexpected end of section")
        out = self.data[self.pos:end]
        self.pos = end
        return out

    def u8(self) -> int:
        return self._take(1)[0]

    def u16(self) -> int:
        return struct.unpack("<H", self._take(2))[0]

    def u32(self) -> int:
        return struct.unpack("<I", self._take(4))[0]

    def u64(self) -> int:
        return struct.unpack("<Q", self._take(8))[0]

    def f64(self) -> float:
        return struct.unpack("<d", self._take(8))[0]

    def blob(self) -> bytes:
        return bytes(self._take(self.u64()))

    def text(self) -> str:
        return self.blob().decode("utf-8")

    def bigint(self) -> int:
        return int.from_bytes(self.blob(), "little")

    def words(self) -> array:
        n = self.u64()
        arr = array("Q")
        arr.frombytes(bytes(self._take(8 * n)))
        if sys.byteorder != "little":
            arr.byteswap()
        return arr

    def done(self):
        if self.pos != len(self.data):
            raise SectionCorrupt("trailing bytes in section")
