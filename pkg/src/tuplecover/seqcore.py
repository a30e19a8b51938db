"""Symbol sequences over a finite alphabet, string periods and fixed-width index codes.

A :class:`SymbolSeq` stores one symbol per byte, so slicing, concatenation and
substring search run at C speed through :class:`bytes`. All positions are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .exceptions import ValidationError

__all__ = [
    "SymbolSeq",
    "Params",
    "as_seq",
    "failure_function",
    "period",
    "encode_index",
    "decode_index",
]

_DIGIT_TO_SYMBOL = bytes((c - 48) & 0xFF for c in range(256))
_SYMBOL_TO_DIGIT = bytes((c + 48) & 0xFF for c in range(256))

SeqLike = Union["SymbolSeq", bytes, bytearray, str, Iterable[int], np.ndarray]


class SymbolSeq:
    """Immutable finite sequence over the alphabet ``{0, ..., q-1}``.

    ``SymbolSeq("0110")`` parses a digit string; bytes, integer iterables and
    numpy arrays are taken symbol by symbol.
    """

    __slots__ = ("_data", "_q")

    def __init__(self, symbols: SeqLike = b"", q: int = 2):
        if not isinstance(q, (int, np.integer)) or q < 2:
            raise ValidationError(f"alphabet size q must be an integer >= 2, got {q!r}")
        if isinstance(symbols, SymbolSeq):
            data = symbols._data
        elif isinstance(symbols, str):
            text = symbols.strip()
            if text and not text.isdigit():
                raise ValidationError("sequence text must contain only the digits 0-9")
            data = text.encode("ascii").translate(_DIGIT_TO_SYMBOL)
        elif isinstance(symbols, (bytes, bytearray)):
            data = bytes(symbols)
        elif isinstance(symbols, np.ndarray):
            arr = np.asarray(symbols).ravel()
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValidationError("symbols must lie in [0, q-1]")
            data = arr.astype(np.uint8).tobytes()
        else:
            try:
                data = bytes(symbols)
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"cannot build a sequence from {symbols!r}") from exc
        if data and max(data) >= q:
            raise ValidationError(f"symbol {max(data)} outside the alphabet [0, {q - 1}]")
        self._data = data
        self._q = int(q)

    @classmethod
    def _wrap(cls, data: bytes, q: int) -> "SymbolSeq":
        # trusted constructor: data is already known to be over [q]
        obj = cls.__new__(cls)
        obj._data = data
        obj._q = q
        return obj

    @property
    def data(self) -> bytes:
        return self._data

    @property
    def q(self) -> int:
        return self._q

    def __len__(self) -> int:
        return len(self._data)

    def __iter__(self):
        return iter(self._data)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return SymbolSeq._wrap(self._data[key], self._q)
        return self._data[key]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolSeq):
            return NotImplemented
        return self._q == other._q and self._data == other._data

    def __hash__(self) -> int:
        return hash((self._q, self._data))

    def __add__(self, other: "SymbolSeq") -> "SymbolSeq":
        if not isinstance(other, SymbolSeq):
            return NotImplemented
        if other._q != self._q:
            raise ValidationError("cannot concatenate sequences over different alphabets")
        return SymbolSeq._wrap(self._data + other._data, self._q)

    def __mul__(self, times: int) -> "SymbolSeq":
        return SymbolSeq._wrap(self._data * times, self._q)

    __rmul__ = __mul__

    def __contains__(self, item) -> bool:
        return self.find(item) >= 0

    def __str__(self) -> str:
        if self._q > 10:
            raise ValidationError("digit text format only supports q <= 10")
        return self._data.translate(_SYMBOL_TO_DIGIT).decode("ascii")

    def __repr__(self) -> str:
        body = str(self) if self._q <= 10 else list(self._data)
        if len(self._data) > 64:
            body = f"{str(self[:32])}...({len(self)} symbols)"
        return f"SymbolSeq({body!r}, q={self._q})"

    def _check_range(self, i: int, k: int) -> None:
        if k < 0 or i < 0 or i + k > len(self._data):
            raise ValidationError(
                f"range [{i}, {i + k}) does not lie inside a sequence of length {len(self)}"
            )

    def prefix(self, k: int) -> "SymbolSeq":
        self._check_range(0, k)
        return SymbolSeq._wrap(self._data[:k], self._q)

    def suffix(self, k: int) -> "SymbolSeq":
        self._check_range(len(self._data) - k, k)
        return SymbolSeq._wrap(self._data[len(self._data) - k:], self._q)

    def window(self, i: int, k: int) -> "SymbolSeq":
        """The length-``k`` substring starting at position ``i``."""
        self._check_range(i, k)
        return SymbolSeq._wrap(self._data[i:i + k], self._q)

    def find(self, sub: "SymbolSeq", start: int = 0) -> int:
        return self._data.find(_data_of(sub), start)

    def rfind(self, sub: "SymbolSeq") -> int:
        """Position of the rightmost occurrence of ``sub``, or -1."""
        return self._data.rfind(_data_of(sub))

    def to_numpy(self) -> np.ndarray:
        return np.frombuffer(self._data, dtype=np.uint8)


def _data_of(sub) -> bytes:
    return sub._data if isinstance(sub, SymbolSeq) else bytes(sub)


def as_seq(x: SeqLike, q: int = 2) -> SymbolSeq:
    """Coerce ``x`` to a :class:`SymbolSeq` over ``q`` symbols, validating it."""
    if isinstance(x, SymbolSeq):
        if x.q != q:
            if x.data and max(x.data) >= q:
                raise ValidationError(f"sequence is not over an alphabet of size {q}")
            return SymbolSeq._wrap(x.data, q)
        return x
    return SymbolSeq(x, q)


@dataclass(frozen=True)
class Params:
    n: int
    ell: int
    q: int = 2

    def __post_init__(self):
        if self.q < 2:
            raise ValidationError(f"q must be >= 2, got {self.q}")
        if not 1 <= self.ell <= self.n:
            raise ValidationError(f"need 1 <= ell <= n, got ell={self.ell}, n={self.n}")


def failure_function(s) -> list[int]:
    """Border array: entry ``j`` is the longest proper border of ``s[:j+1]``."""
    data = _data_of(s)
    fail = [0] * len(data)
    k = 0
    for j in range(1, len(data)):
        c = data[j]
        while k and data[k] != c:
            k = fail[k - 1]
        if data[k] == c:
            k += 1
        fail[j] = k
    return fail


def period(s) -> int:
    """Smallest ``p >= 1`` with ``s[i] == s[i + p]`` for every valid ``i``."""
    data = _data_of(s)
    if not data:
        raise ValidationError("period of an empty sequence is undefined")
    return len(data) - failure_function(data)[-1]


def encode_index(i: int, width: int) -> SymbolSeq:
    """Fixed-width big-endian binary representation of ``i``."""
    if width < 1:
        raise ValidationError(f"width must be positive, got {width}")
    if not 0 <= i < (1 << width):
        raise ValidationError(f"index {i} does not fit in {width} bits")
    return SymbolSeq._wrap(format(i, f"0{width}b").encode("ascii").translate(_DIGIT_TO_SYMBOL), 2)


def decode_index(bits) -> int:
    data = _data_of(bits)
    if not data:
        raise ValidationError("cannot decode an index from zero bits")
    if max(data) > 1:
        raise ValidationError("index bits must be binary")
    return int(data.translate(_SYMBOL_TO_DIGIT), 2)
