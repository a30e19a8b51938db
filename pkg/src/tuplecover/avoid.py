"""Compression of binary sequences that avoid a fixed tuple ``v``.

A block of length ``2^(l+6)`` that avoids ``v`` is mapped to an unconstrained
block one symbol shorter. If the block starts with 1, its next ``l+5`` bits are
read as an index ``i`` and a marker ``u`` (``v`` extended by two bits so that it
and its half-suffix have long periods) plus three guard bits are inserted at
``i``; the decoder finds ``i`` as the rightmost occurrence of ``u``.
"""
from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass

import numpy as np

from .counting import avoid_automaton, avoid_suffix_counts
from .exceptions import InvariantViolation, MalformedInputError, ValidationError
from .seqcore import SymbolSeq, as_seq, decode_index, encode_index, period

__all__ = [
    "MIN_ELL",
    "CERTIFIED_RANGE",
    "AvoiderContext",
    "InsertionRecord",
    "f1",
    "f2",
    "max_insertion_set",
    "certify_ell",
    "supported_ells",
    "is_supported",
    "build_context",
    "insertion_record",
    "compress_block",
    "decompress_block",
    "compress_stream",
    "decompress_stream",
    "stream_block_counts",
    "pad_tuple",
    "sample_avoiding",
    "sample_avoiding_batch",
]

logger = logging.getLogger(__name__)

MIN_ELL = 6
CERTIFIED_RANGE = range(MIN_ELL, 17)
GUARD_BITS = 3


def _binary(v, name="v") -> SymbolSeq:
    v = as_seq(v, 2)
    if v.q != 2:
        raise ValidationError(f"{name} must be binary")
    return v


def f1(v) -> SymbolSeq:
    """Append the complement of ``v[len(v) mod p(v)]``, breaking the period of ``v``."""
    v = _binary(v)
    if len(v) < 1:
        raise ValidationError("f1 needs a non-empty tuple")
    bit = 1 - v[len(v) % period(v)]
    return SymbolSeq._wrap(v.data + bytes((bit,)), 2)


def f2(v) -> SymbolSeq:
    """Keep the first ``floor(|v|/2)+3`` symbols and apply :func:`f1` to the rest."""
    v = _binary(v)
    tail = (len(v) + 1) // 2 - 3
    if tail < 1:
        raise ValidationError(f"f2 needs |v| >= 7, got |v| = {len(v)}")
    return v.prefix(len(v) // 2 + 3) + f1(v.suffix(tail))


def max_insertion_set(u: SymbolSeq, pu: int) -> int:
    """Largest possible size of the match-length set for marker ``u``.

    Lengths ``m`` and ``m' > m`` can both match the text after the insertion only
    if ``Suff_m(u)`` is a prefix of ``Suff_m'(u)``; the largest such chain bounds |A|.
    """
    data = u.data
    size = len(data)
    lo, hi = pu - 3, size - 1
    best = 0
    for top in range(lo, hi + 1):
        head = data[size - top:]
        chain = 1 + sum(1 for m in range(lo, top) if head[:m] == data[size - m:])
        best = max(best, chain)
    return best


@functools.lru_cache(maxsize=None)
def certify_ell(ell: int) -> int:
    """Maximum of :func:`max_insertion_set` over all ``2^l`` binary tuples."""
    if ell < MIN_ELL:
        raise ValidationError(f"tuple length must be at least {MIN_ELL}, got {ell}")
    worst = 0
    for bits in itertools.product(b"\x00\x01", repeat=ell):
        u = f2(f1(SymbolSeq._wrap(bytes(bits), 2)))
        worst = max(worst, max_insertion_set(u, period(u)))
    logger.debug("certified ell=%d: max |A| = %d", ell, worst)
    return worst


def is_supported(ell: int) -> bool:
    return ell in CERTIFIED_RANGE and certify_ell(ell) <= GUARD_BITS


def supported_ells() -> tuple[int, ...]:
    return tuple(ell for ell in CERTIFIED_RANGE if is_supported(ell))


@dataclass(frozen=True)
class AvoiderContext:
    """Per-tuple constants: ``v``, marker ``u = f2(f1(v))``, periods and block length."""

    v: SymbolSeq
    u: SymbolSeq
    pv: int
    pu: int
    block_len: int

    @property
    def ell(self) -> int:
        return len(self.v)

    @property
    def index_width(self) -> int:
        return self.ell + 5


@dataclass(frozen=True)
class InsertionRecord:
    i: int
    A: tuple[int, ...]
    a: bytes


def build_context(v) -> AvoiderContext:
    v = _binary(v)
    ell = len(v)
    if ell < MIN_ELL:
        raise ValidationError(f"tuple length must be at least {MIN_ELL} (minimum supported l), got {ell}")
    if not is_supported(ell):
        raise ValidationError(
            f"tuple length {ell} is not certified (guard-bit bound |A| <= 3 verified only for "
            f"l in {list(supported_ells())})"
        )
    u = f2(f1(v))
    return AvoiderContext(v=v, u=u, pv=period(v), pu=period(u), block_len=1 << (ell + 6))


def pad_tuple(v, ell: int) -> SymbolSeq:
    """Right-pad ``v`` with zeros to length ``ell``.

    Avoiding ``v`` does not imply avoiding the padded tuple; callers must
    ensure their input avoids the result.
    """
    v = _binary(v)
    if len(v) > ell:
        raise ValidationError(f"cannot pad a tuple of length {len(v)} to {ell}")
    return SymbolSeq._wrap(v.data + bytes(ell - len(v)), 2)


def _insertion(ctx: AvoiderContext, w: bytes, i: int) -> InsertionRecord:
    u = ctx.u.data
    size = len(u)
    ell = ctx.ell
    # matches running past the end of w are not occurrences
    matches = [m for m in range(ctx.pu - 3, size) if i + m <= len(w) and w[i:i + m] == u[size - m:]]
    if len(matches) > GUARD_BITS:
        raise InvariantViolation(f"|A| = {len(matches)} > {GUARD_BITS} at index {i} for v = {ctx.v}")
    matches.sort(reverse=True)
    a = bytearray(GUARD_BITS)
    for k, m in zip((2, 1, 0), matches):
        pos = ell - 1 - m + k
        if pos < 0:
            raise InvariantViolation(f"guard bit {k} for match length {m} falls before the marker")
        a[k] = 1 - u[pos]
    return InsertionRecord(i=i, A=tuple(matches), a=bytes(a))


def _compress_block(ctx: AvoiderContext, s: bytes) -> bytes:
    if s[0] == 0:
        return s[1:]
    width = ctx.index_width
    i = decode_index(s[1:1 + width])
    w = s[1 + width:]
    rec = _insertion(ctx, w, i)
    return w[:i] + ctx.u.data + rec.a + w[i:]


def _decompress_block(ctx: AvoiderContext, x: bytes) -> bytes:
    i = x.rfind(ctx.u.data)
    if i < 0:
        return b"\x00" + x
    width = ctx.index_width
    if i + width > len(x) or i >= 1 << width:
        raise MalformedInputError(f"rightmost marker at {i} cannot come from the block compressor")
    return b"\x01" + encode_index(i, width).data + x[:i] + x[i + width:]


def compress_block(ctx: AvoiderContext, s) -> SymbolSeq:
    """Compress one v-avoiding block of length ``2^(l+6)`` by one symbol."""
    s = _binary(s, "s")
    if len(s) != ctx.block_len:
        raise ValidationError(f"block must have length {ctx.block_len}, got {len(s)}")
    if ctx.v.data in s.data:
        raise ValidationError(f"input block contains the avoided tuple {ctx.v}")
    return SymbolSeq._wrap(_compress_block(ctx, s.data), 2)


def insertion_record(ctx: AvoiderContext, s) -> InsertionRecord | None:
    """The insertion performed by :func:`compress_block` on ``s``, or None for the 0-branch."""
    s = _binary(s, "s")
    if len(s) != ctx.block_len or s[0] == 0:
        return None
    width = ctx.index_width
    return _insertion(ctx, s.data[1 + width:], decode_index(s.data[1:1 + width]))


def decompress_block(ctx: AvoiderContext, x) -> SymbolSeq:
    x = _binary(x, "x")
    if len(x) != ctx.block_len - 1:
        raise ValidationError(f"compressed block must have length {ctx.block_len - 1}, got {len(x)}")
    return SymbolSeq._wrap(_decompress_block(ctx, x.data), 2)


def compress_stream(ctx: AvoiderContext, x) -> SymbolSeq:
    """Compress the first ``floor((L-1)/n_E)`` full blocks of ``x``; keep the rest raw."""
    x = _binary(x, "x")
    if len(x) < 1:
        raise ValidationError("cannot compress an empty sequence")
    if ctx.v.data in x.data:
        raise ValidationError(f"input contains the avoided tuple {ctx.v}")
    data = x.data
    n_e = ctx.block_len
    n_blocks = (len(data) - 1) // n_e
    parts = [_compress_block(ctx, data[b * n_e:(b + 1) * n_e]) for b in range(n_blocks)]
    parts.append(data[n_blocks * n_e:])
    return SymbolSeq._wrap(b"".join(parts), 2)


def stream_block_counts(m: int, block_len: int) -> list[int]:
    """All ``B`` with ``B = floor((m + B - 1) / block_len)``, ascending.

    There are two exactly when ``m = k (block_len - 1) + 1`` for some ``k >= 1``;
    inputs of lengths ``k*block_len`` and ``k*block_len + 1`` then compress to
    the same length.
    """
    if m < 1:
        raise ValidationError("compressed length must be positive")
    b = 0
    while True:
        nb = (m - 1 + b) // block_len
        if nb == b:
            break
        b = nb
    out = [b]
    if (m - 1 + b + 1) // block_len == b + 1:
        out.append(b + 1)
    return out


def decompress_stream(ctx: AvoiderContext, y, length: int | None = None) -> SymbolSeq:
    """Invert :func:`compress_stream`.

    ``length`` is the original length when known. Without it the block count is
    the least solution of ``B = floor((|y| + B - 1) / n_E)``, which recovers every
    original length except ``k*n_E + 1`` (k >= 1).
    """
    y = _binary(y, "y")
    m = len(y)
    if m < 1:
        raise ValidationError("cannot decompress an empty sequence")
    n_e = ctx.block_len
    if length is None:
        n_blocks = stream_block_counts(m, n_e)[0]
    else:
        n_blocks = (length - 1) // n_e
        if length < 1 or length - n_blocks != m:
            raise MalformedInputError(f"length {m} is not a compressed length of {length}")
    data = y.data
    step = n_e - 1
    parts = [_decompress_block(ctx, data[b * step:(b + 1) * step]) for b in range(n_blocks)]
    parts.append(data[n_blocks * step:])
    return SymbolSeq._wrap(b"".join(parts), 2)


@functools.lru_cache(maxsize=64)
def _sampling_tables(v: SymbolSeq, n: int) -> tuple[list[list[int]], np.ndarray]:
    # prob0[r, state] = P(next symbol is 0 | r symbols remain, automaton in state).
    # Completion counts are carried as floats rescaled every step; only their
    # ratios matter. Exact integer counts are used while they fit in a double.
    delta = avoid_automaton(v)
    ell = len(v)
    prob0 = np.zeros((n + 1, ell))
    exact = avoid_suffix_counts(n, v)
    prev = [float(c) for c in next(exact)]
    for r in range(1, n + 1):
        if exact is not None:
            ints = next(exact)
            if max(ints) < 1 << 52:
                counts = [float(c) for c in ints]
            else:
                exact = None
        if exact is None:
            counts = [sum(prev[t] for t in delta[state] if t < ell) for state in range(ell)]
        for state in range(ell):
            t = delta[state][0]
            zero = prev[t] if t < ell else 0.0
            prob0[r, state] = zero / counts[state] if counts[state] else 0.0
        top = max(counts)
        if top == 0.0:
            raise ValidationError(f"no sequence of length {n} avoids {v}")
        if exact is None:
            scaled = [c / top for c in counts]
            if scaled == prev:
                # the rescaled recurrence reached a fixed point: later rows repeat
                prob0[r + 1:] = prob0[r]
                break
            prev = scaled
        else:
            prev = counts
    return delta, prob0


def sample_avoiding_batch(v, n: int, size: int, seed=None) -> np.ndarray:
    """``size`` independent uniform draws from the length-``n`` sequences avoiding ``v``.

    Each symbol is chosen with probability proportional to the number of
    avoiding completions, so every avoiding sequence is equally likely.
    """
    v = as_seq(v, 2) if not isinstance(v, SymbolSeq) else v
    if v.q != 2:
        raise ValidationError("sampling is implemented for binary tuples")
    if n < 1:
        raise ValidationError(f"length must be >= 1, got {n}")
    if len(v) < 1:
        raise ValidationError("the avoided tuple must be non-empty")
    delta, prob0 = _sampling_tables(v, n)
    rng = np.random.default_rng(seed)
    draws = rng.random((size, n))
    ell = len(v)
    out = np.empty((size, n), dtype=np.uint8)
    if size <= 8:
        table = prob0.tolist()
        for row in range(size):
            state = 0
            bits = bytearray(n)
            for k, r in enumerate(draws[row].tolist()):
                bit = 0 if r < table[n - k][state] else 1
                bits[k] = bit
                state = delta[state][bit]
                if state >= ell:
                    raise InvariantViolation("sampler produced an occurrence of the avoided tuple")
            out[row] = np.frombuffer(bytes(bits), dtype=np.uint8)
        return out
    trans = np.array(delta, dtype=np.int64)
    state = np.zeros(size, dtype=np.int64)
    for k in range(n):
        bit = (draws[:, k] >= prob0[n - k, state]).astype(np.int64)
        out[:, k] = bit
        state = trans[state, bit]
        if np.any(state >= ell):
            raise InvariantViolation("sampler produced an occurrence of the avoided tuple")
    return out


def sample_avoiding(v, n: int, seed=None) -> SymbolSeq:
    row = sample_avoiding_batch(v, n, 1, seed)[0]
    return SymbolSeq._wrap(row.tobytes(), 2)
