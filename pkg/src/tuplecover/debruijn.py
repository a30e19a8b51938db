"""De Bruijn sequence generation and tuple-coverage inspection."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError
from .seqcore import SymbolSeq, as_seq

__all__ = [
    "CoverageMap",
    "MAX_DEBRUIJN_ELL",
    "lyndon_words",
    "gen_debruijn",
    "window_codes",
    "coverage",
    "debruijn_count",
]

MAX_DEBRUIJN_ELL = 24
DEFAULT_DIGIT_LIMIT = 100_000


def lyndon_words(ell: int, q: int = 2):
    """Lyndon words of length at most ``ell`` in lexicographic order (Duval's iteration)."""
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < ell:
            w.append(w[-m])
        while w and w[-1] == q - 1:
            w.pop()


def gen_debruijn(ell: int, q: int = 2) -> SymbolSeq:
    """The lexicographically least de Bruijn sequence, linearized.

    Lyndon words whose length divides ``ell`` are concatenated into a cycle of
    length ``q^ell``; its ``(ell-1)``-prefix is appended so that every tuple
    appears exactly once as a window.
    """
    if not isinstance(ell, int) or not 1 <= ell <= MAX_DEBRUIJN_ELL:
        raise ValidationError(f"ell must be an integer in [1, {MAX_DEBRUIJN_ELL}], got {ell}")
    if q ** ell > 1 << MAX_DEBRUIJN_ELL:
        raise ValidationError(f"q^ell = {q ** ell} symbols exceeds the generation limit")
    cycle = bytearray()
    for word in lyndon_words(ell, q):
        if ell % len(word) == 0:
            cycle.extend(word)
    cycle.extend(cycle[:ell - 1])
    return SymbolSeq._wrap(bytes(cycle), q)


def window_codes(x: SymbolSeq, ell: int) -> np.ndarray:
    """Integer code of every length-``ell`` window, first symbol most significant."""
    arr = x.to_numpy().astype(np.int64)
    count = len(arr) - ell + 1
    if count <= 0:
        return np.zeros(0, dtype=np.int64)
    codes = np.zeros(count, dtype=np.int64)
    for j in range(ell):
        codes = codes * x.q + arr[j:j + count]
    return codes


@dataclass(frozen=True)
class CoverageMap:
    """Presence of every q-ary ``ell``-tuple among the windows of a sequence."""

    ell: int
    q: int
    present: np.ndarray

    @property
    def missing_count(self) -> int:
        return int(self.present.size - np.count_nonzero(self.present))

    @property
    def is_covering(self) -> bool:
        return self.missing_count == 0

    def missing_codes(self) -> np.ndarray:
        return np.flatnonzero(~self.present)

    def missing(self) -> list[SymbolSeq]:
        return [self.tuple_of(int(c)) for c in self.missing_codes()]

    def first_missing(self) -> SymbolSeq | None:
        """Lexicographically smallest absent tuple."""
        codes = self.missing_codes()
        return self.tuple_of(int(codes[0])) if codes.size else None

    def tuple_of(self, code: int) -> SymbolSeq:
        digits = bytearray(self.ell)
        for j in range(self.ell - 1, -1, -1):
            code, digits[j] = divmod(code, self.q)
        return SymbolSeq._wrap(bytes(digits), self.q)


def coverage(x, ell: int, q: int | None = None) -> CoverageMap:
    """Which ``ell``-tuples occur in ``x``; a too-short ``x`` covers nothing."""
    q = (x.q if isinstance(x, SymbolSeq) else 2) if q is None else q
    x = as_seq(x, q)
    if ell < 1:
        raise ValidationError(f"ell must be >= 1, got {ell}")
    n_tuples = q ** ell
    if n_tuples > 1 << 28:
        raise ValidationError(f"q^ell = {n_tuples} tuples is too large for a presence bitmap")
    present = np.zeros(n_tuples, dtype=bool)
    present[window_codes(x, ell)] = True
    present.setflags(write=False)
    return CoverageMap(ell=ell, q=q, present=present)


def debruijn_count(ell: int, q: int = 2, digit_limit: int = DEFAULT_DIGIT_LIMIT) -> int:
    """Number of linear de Bruijn sequences of order ``ell``: ``(q!)^(q^(ell-1))``."""
    if ell < 1 or q < 2:
        raise ValidationError(f"need ell >= 1 and q >= 2, got ell={ell}, q={q}")
    digits = q ** (ell - 1) * math.log10(math.factorial(q))
    if digits > digit_limit:
        raise ValidationError(f"result would have ~{digits:.0f} digits, above the limit {digit_limit}")
    return math.factorial(q) ** (q ** (ell - 1))
