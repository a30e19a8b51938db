"""Single-redundancy-bit encoder for binary l-tuple covering sequences.

``encode`` maps any ``n-1`` bits to a length-``n`` sequence containing every
binary ``l``-tuple. While the working sequence misses some tuple ``v`` it is
compressed with the v-avoiding stream compressor and prefixed by ``1 v``; once
it covers every tuple (or is short enough) a de Bruijn sequence is appended.
"""
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass

from . import avoid
from .counting import max_ell_single_bit
from .debruijn import coverage, gen_debruijn
from .exceptions import MalformedInputError, ValidationError
from .seqcore import SymbolSeq, as_seq

__all__ = [
    "LengthSchedule",
    "check_params",
    "length_schedule",
    "encode",
    "encode_trace",
    "decode",
    "max_ell_single_bit",
]

logger = logging.getLogger(__name__)


def check_params(n: int, ell: int) -> None:
    """Raise :class:`ValidationError` unless ``(n, ell)`` is a valid encoder configuration."""
    if n < 4:
        raise ValidationError(f"n must be at least 4, got {n}")
    limit = math.log2(n) - math.log2(math.log2(n)) - 6
    if ell > limit + 1e-12:
        raise ValidationError(f"ell must satisfy ell <= log2 n - log2 log2 n - 6 = {limit:.3f}, got ell={ell}")
    if ell < avoid.MIN_ELL:
        raise ValidationError(f"ell must be at least {avoid.MIN_ELL}, got {ell}")
    if not avoid.is_supported(ell):
        raise ValidationError(f"ell={ell} is not in the certified set {list(avoid.supported_ells())}")
    n_e = 1 << (ell + 6)
    floor_len = n - (2 ** ell + ell - 1)
    # every pass must shrink x while |x| > n - |s|
    if floor_len // n_e <= ell + 1:
        raise ValidationError(f"n={n} is too small for ell={ell}: a compression pass would not shrink the sequence")


@functools.lru_cache(maxsize=32)
def _debruijn(ell: int) -> SymbolSeq:
    return gen_debruijn(ell)


@functools.lru_cache(maxsize=4096)
def _context(v: SymbolSeq) -> avoid.AvoiderContext:
    return avoid.build_context(v)


@dataclass(frozen=True)
class LengthSchedule:
    """Lengths of the working sequence after each compression pass."""

    n: int
    ell: int
    block_len: int
    lengths: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.lengths)

    @property
    def max_passes(self) -> int:
        return len(self.lengths) - 1


def length_schedule(n: int, ell: int) -> LengthSchedule:
    check_params(n, ell)
    n_e = 1 << (ell + 6)
    floor_len = n - (2 ** ell + ell - 1)
    lengths = [n]
    while lengths[-1] > floor_len:
        cur = lengths[-1]
        lengths.append(ell + 1 + cur - (cur - 1) // n_e)
    return LengthSchedule(n=n, ell=ell, block_len=n_e, lengths=tuple(lengths))


def encode_trace(w, ell: int) -> tuple[SymbolSeq, list[SymbolSeq]]:
    """Encode ``w`` and also return the tuple chosen at each pass."""
    w = as_seq(w, 2)
    n = len(w) + 1
    check_params(n, ell)
    s = _debruijn(ell)
    floor_len = n - len(s)
    x = b"\x00" + w.data
    chosen = []
    while len(x) > floor_len:
        cov = coverage(SymbolSeq._wrap(x, 2), ell)
        if cov.is_covering:
            break
        v = cov.first_missing()
        chosen.append(v)
        x = b"\x01" + v.data + avoid.compress_stream(_context(v), SymbolSeq._wrap(x, 2)).data
    out = (x + s.data + b"\x01" * n)[:n]
    return SymbolSeq._wrap(out, 2), chosen


def encode(w, ell: int) -> SymbolSeq:
    """Encode ``n-1`` arbitrary bits into a length-``n`` l-tuple covering sequence."""
    return encode_trace(w, ell)[0]


def _peel_greedy(x: bytes, n: int, ell: int, max_layers: int) -> bytes | None:
    for _ in range(max_layers + 1):
        if not x:
            return None
        if x[0] == 0:
            return x[1:n] if len(x) >= n else None
        if len(x) < ell + 2:
            return None
        v = SymbolSeq._wrap(x[1:ell + 1], 2)
        x = avoid.decompress_stream(_context(v), SymbolSeq._wrap(x[ell + 1:], 2)).data
    return None


def _peel_exact(x: bytes, schedule: LengthSchedule, layers: int) -> bytes | None:
    ell = schedule.ell
    x = x[:schedule.lengths[layers]]
    for j in range(layers, 0, -1):
        if x[0] != 1:
            return None
        v = SymbolSeq._wrap(x[1:ell + 1], 2)
        x = avoid.decompress_stream(
            _context(v), SymbolSeq._wrap(x[ell + 1:], 2), length=schedule.lengths[j - 1]
        ).data
    return x[1:] if x[0] == 0 else None


def decode(x, ell: int) -> SymbolSeq:
    """Recover the ``n-1`` data bits from an output of :func:`encode`.

    Layers are peeled greedily first. Padding appended by the encoder can be
    misread as compressed data, so every candidate is checked by re-encoding;
    if the greedy result fails, each possible pass count is tried with the
    exact length schedule.
    """
    x = as_seq(x, 2)
    n = len(x)
    schedule = length_schedule(n, ell)
    data = x.data
    try:
        cand = _peel_greedy(data, n, ell, schedule.max_passes)
    except ValidationError:
        cand = None
    if cand is not None and encode(SymbolSeq._wrap(cand, 2), ell).data == data:
        return SymbolSeq._wrap(cand, 2)
    logger.info("greedy peel failed for n=%d, ell=%d; falling back to the length schedule", n, ell)
    for layers in range(schedule.max_passes + 1):
        try:
            cand = _peel_exact(data, schedule, layers)
        except ValidationError:
            continue
        if cand is not None and encode(SymbolSeq._wrap(cand, 2), ell).data == data:
            return SymbolSeq._wrap(cand, 2)
    raise MalformedInputError("input is not an output of the covering encoder")
