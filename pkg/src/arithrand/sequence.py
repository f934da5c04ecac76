"""Binary sequences s_1, s_2, ... and their file formats.

Two interchange formats are supported:

* ASCII: one character ``0``/``1`` per term, ``s_1`` first, optional newline.
* Raw: an 8-byte little-endian unsigned length ``N`` followed by
  ``ceil(N / 64)`` little-endian 64-bit words.  Term ``s_n`` lives in word
  ``(n - 1) // 64`` at bit ``(n - 1) % 64``; unused high bits are zero.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

_HEADER = struct.Struct("<Q")


@dataclass(frozen=True, eq=False)
class BitSequence:
    """Terms ``s_1 .. s_N`` of a binary sequence.

    Indexing through :meth:`term` is 1-based; ``bits`` is the 0-based storage
    (``bits[n - 1] == s_n``).  ``origin`` names the generator, if any.
    """

    bits: np.ndarray
    origin: str = field(default="custom")

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.ndim != 1:
            raise ValueError("bit sequence must be one-dimensional")
        if bits.size and bits.max() > 1:
            raise ValueError("bit sequence entries must be 0 or 1")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    def __len__(self) -> int:
        return int(self.bits.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitSequence):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(self.bits.tobytes())

    def __repr__(self) -> str:
        head = self.to_ascii()[:32]
        more = "..." if len(self) > 32 else ""
        return f"BitSequence({head}{more}, N={len(self)}, origin={self.origin!r})"

    def term(self, n: int) -> int:
        if not 1 <= n <= len(self):
            raise IndexError(f"term index {n} outside 1..{len(self)}")
        return int(self.bits[n - 1])

    def prefix(self, length: int) -> "BitSequence":
        return BitSequence(self.bits[:length], self.origin)

    def signs(self) -> np.ndarray:
        """The arithmetic function values ``(-1)**s_n`` as int8."""
        return (1 - 2 * self.bits.astype(np.int8)).astype(np.int8)

    def to_int(self) -> int:
        """Pack into an integer with bit ``n - 1`` equal to ``s_n``."""
        packed = np.packbits(self.bits, bitorder="little")
        return int.from_bytes(packed.tobytes(), "little")

    # -- ASCII ------------------------------------------------------------
    def to_ascii(self) -> str:
        return (self.bits + ord("0")).tobytes().decode("ascii")

    @classmethod
    def from_ascii(cls, text: str, origin: str = "custom") -> "BitSequence":
        text = "".join(text.split())
        if set(text) - {"0", "1"}:
            raise ValueError("ASCII sequence may only contain 0 and 1")
        raw = np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")
        return cls(raw, origin)

    # -- raw packed words -------------------------------------------------
    def to_bytes(self) -> bytes:
        n = len(self)
        n_words = (n + 63) // 64
        packed = np.packbits(self.bits, bitorder="little")
        body = np.zeros(n_words * 8, dtype=np.uint8)
        body[: packed.size] = packed
        return _HEADER.pack(n) + body.tobytes()

    @classmethod
    def from_bytes(cls, data: bytes, origin: str = "custom") -> "BitSequence":
        if len(data) < _HEADER.size:
            raise ValueError("raw sequence data is missing its length header")
        (n,) = _HEADER.unpack_from(data)
        n_words = (n + 63) // 64
        body = data[_HEADER.size:]
        if len(body) != n_words * 8:
            raise ValueError(
                f"raw sequence body has {len(body)} bytes, expected {n_words * 8}"
            )
        bits = np.unpackbits(np.frombuffer(body, dtype=np.uint8), bitorder="little")
        return cls(bits[:n], origin)

    def save(self, path, fmt: str = "ascii") -> None:
        path = Path(path)
        if fmt == "ascii":
            path.write_text(self.to_ascii() + "\n")
        elif fmt == "raw":
            path.write_bytes(self.to_bytes())
        else:
            raise ValueError(f"unknown sequence format {fmt!r}")

    @classmethod
    def load(cls, path, fmt: str | None = None) -> "BitSequence":
        path = Path(path)
        data = path.read_bytes()
        if fmt is None:
            fmt = "ascii" if set(data.strip()) <= {ord("0"), ord("1")} else "raw"
        if fmt == "ascii":
            return cls.from_ascii(data.decode("ascii"))
        if fmt == "raw":
            return cls.from_bytes(data)
        raise ValueError(f"unknown sequence format {fmt!r}")
