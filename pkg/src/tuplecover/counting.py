"""Exact counters for avoiding and covering sequences, and closed-form bounds.

Exact cardinalities are Python integers. Bounds involving irrational constants
are reported as base-q logarithms (:class:`BoundValue`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .exceptions import ValidationError
from .seqcore import SymbolSeq, as_seq, failure_function

__all__ = [
    "BoundValue",
    "RateBounds",
    "DEFAULT_STATE_BUDGET",
    "avoid_automaton",
    "avoid_suffix_counts",
    "avoid_count",
    "beta_count",
    "beta_lower_bound",
    "c1_constant",
    "avoid_upper_bound",
    "covering_count",
    "covering_count_bruteforce",
    "covering_lower_bound",
    "covering_upper_bound",
    "binary_entropy",
    "rate_bounds",
    "rate_lower_linear",
    "rate_lower_log_gap",
    "union_bound_gap",
    "max_ell_single_bit",
]

DEFAULT_STATE_BUDGET = 1 << 22
BRUTEFORCE_LIMIT = 1 << 26


@dataclass(frozen=True)
class BoundValue:
    """A bound on a cardinality, stored as its base-q logarithm."""

    logq_value: float
    kind: str
    exact: bool = False
    q: int = 2

    def __post_init__(self):
        if self.kind not in ("lower", "upper"):
            raise ValidationError(f"bound kind must be 'lower' or 'upper', got {self.kind!r}")
        if not math.isfinite(self.logq_value):
            raise ValidationError("bound exponent must be finite")

    def holds_for(self, count: int, tol: float = 1e-9) -> bool:
        """Compare an exact count against the bound in the log domain."""
        if count == 0:
            return self.kind == "upper"
        log_count = math.log(count, self.q)
        if self.kind == "upper":
            return log_count <= self.logq_value + tol
        return log_count >= self.logq_value - tol


@dataclass(frozen=True)
class RateBounds:
    alpha: float
    lower: float
    upper: float


def avoid_automaton(v: SymbolSeq) -> list[list[int]]:
    """Pattern-matching automaton of ``v``.

    ``delta[state][b]`` is the length of the longest prefix of ``v`` that is a
    suffix of ``v[:state] + b``; reaching ``len(v)`` means ``v`` occurred.
    """
    data, q, ell = v.data, v.q, len(v)
    fail = failure_function(data)
    delta = [[0] * q for _ in range(ell)]
    for state in range(ell):
        for b in range(q):
            if data[state] == b:
                delta[state][b] = state + 1
            elif state:
                delta[state][b] = delta[fail[state - 1]][b]
    return delta


def avoid_suffix_counts(n: int, v: SymbolSeq) -> Iterator[list[int]]:
    """Yield, for ``r = 0..n``, the number of length-``r`` continuations from each
    automaton state that never complete ``v``."""
    ell, q = len(v), v.q
    delta = avoid_automaton(v)
    counts = [1] * ell
    yield counts
    for _ in range(n):
        nxt = []
        for state in range(ell):
            total = 0
            for b in range(q):
                t = delta[state][b]
                if t < ell:
                    total += counts[t]
            nxt.append(total)
        counts = nxt
        yield counts


def avoid_count(n: int, v, q: int = 2) -> int:
    """Exact number of length-``n`` sequences with no window equal to ``v``."""
    v = as_seq(v, q)
    if len(v) < 1:
        raise ValidationError("the avoided tuple must be non-empty")
    if n < 0:
        raise ValidationError(f"length must be nonnegative, got {n}")
    if len(v) > n:
        return q ** n
    for counts in avoid_suffix_counts(n, v):
        pass
    return counts[0]


def beta_count(v, q: int = 2) -> int:
    """Number of length-2l sequences containing ``v`` (length l) at least once."""
    v = as_seq(v, q)
    ell = len(v)
    return q ** (2 * ell) - avoid_count(2 * ell, v, q)


def beta_lower_bound(ell: int, q: int = 2) -> float:
    return (ell + 1) * (q - 1) ** 2 * float(q) ** (ell - 2) / 2


def c1_constant(q: int = 2) -> float:
    return (q - 1) ** 2 * math.log(math.e, q) / (4 * q * q)


def avoid_upper_bound(n: int, ell: int, q: int = 2) -> BoundValue:
    """Upper bound ``log_q a_q(n, v) <= n - c1 (n - 2l) / q^l``, valid for every ``v`` of length l."""
    if not 1 <= ell <= n:
        raise ValidationError(f"need 1 <= ell <= n, got ell={ell}, n={n}")
    exponent = n - c1_constant(q) * (n - 2 * ell) / float(q) ** ell
    return BoundValue(exponent, "upper", exact=False, q=q)


def _check_budget(ell: int, q: int, budget: int) -> None:
    if ell < 1:
        raise ValidationError(f"tuple length must be >= 1, got {ell}")
    states = q ** (ell - 1) * 2 ** (q ** ell) if q ** ell < 64 else math.inf
    if states > budget:
        raise ValidationError(
            f"covering_count state space q^(l-1)*2^(q^l) = {states} exceeds the budget {budget}"
        )


def covering_count(n: int, ell: int, q: int = 2, budget: int = DEFAULT_STATE_BUDGET) -> int:
    """Exact number of length-``n`` q-ary sequences containing every l-tuple.

    Dynamic programming over (last l-1 symbols, set of tuples seen so far); only
    reachable states that can still be completed in the remaining length are kept.
    """
    _check_budget(ell, q, budget)
    n_tuples = q ** ell
    if n < n_tuples + ell - 1:
        return 0
    ctx_mod = q ** (ell - 1)
    full = (1 << n_tuples) - 1
    states: dict[tuple[int, int], int] = {(c, 0): 1 for c in range(ctx_mod)}
    steps = n - (ell - 1)
    for step in range(steps):
        remaining = steps - step - 1
        nxt: dict[tuple[int, int], int] = {}
        for (ctx, mask), cnt in states.items():
            base = ctx * q
            for b in range(q):
                t = base + b
                new_mask = mask | (1 << t)
                if n_tuples - new_mask.bit_count() > remaining:
                    continue
                key = (t % ctx_mod, new_mask)
                nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
    return sum(cnt for (_, mask), cnt in states.items() if mask == full)


def covering_count_bruteforce(n: int, ell: int, q: int = 2, chunk: int = 1 << 20) -> int:
    """Exact covering count by enumerating all ``q^n`` sequences.

    Independent of :func:`covering_count`: every sequence is materialized as an
    integer, every window is read off directly and its presence recorded.
    """
    if ell < 1 or n < 0:
        raise ValidationError(f"need ell >= 1 and n >= 0, got ell={ell}, n={n}")
    total = q ** n
    if total > BRUTEFORCE_LIMIT:
        raise ValidationError(f"q^n = {total} exceeds the brute-force budget {BRUTEFORCE_LIMIT}")
    n_tuples = q ** ell
    if ell > n:
        return 0
    found = 0
    for start in range(0, total, chunk):
        xs = np.arange(start, min(start + chunk, total), dtype=np.int64)
        present = np.zeros((xs.size, n_tuples), dtype=bool)
        rows = np.arange(xs.size)
        for p in range(n - ell + 1):
            # window starting at position p, first symbol most significant
            window = (xs // q ** (n - ell - p)) % n_tuples
            present[rows, window] = True
        found += int(np.count_nonzero(present.all(axis=1)))
    return found


def covering_lower_bound(n: int, ell: int, q: int = 2) -> int:
    """De Bruijn sequences followed by arbitrary symbols: ``(q!)^(q^(l-1)) * q^k``."""
    k = n - q ** ell - ell + 1
    if k < 0:
        return 0
    return math.factorial(q) ** (q ** (ell - 1)) * q ** k


def covering_upper_bound(n: int, ell: int) -> int:
    """Binary upper bound ``2^(2^(l-1)+t) * C(2^l+t-1, t)`` with ``t = n - 2^l - l + 1``."""
    t = n - 2 ** ell - ell + 1
    if ell < 1 or t < 0:
        raise ValidationError(f"need n >= 2^l + l - 1, got n={n}, ell={ell}")
    return 2 ** (2 ** (ell - 1) + t) * math.comb(2 ** ell + t - 1, t)


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def rate_bounds(alpha: float) -> RateBounds:
    """Asymptotic rate bounds for binary covering sequences of length
    ``2^l + l - 1 + alpha * 2^l``."""
    if not alpha >= 0 or not math.isfinite(alpha):
        raise ValidationError(f"alpha must be a finite nonnegative real, got {alpha}")
    if alpha == 0:
        return RateBounds(0.0, 0.5, 0.5)
    lower = (2 * alpha + 1) / (2 * alpha + 2)
    upper = min(binary_entropy(alpha / (alpha + 1)) + lower, 1.0)
    return RateBounds(float(alpha), lower, upper)


def rate_lower_linear(alpha: float, q: int = 2) -> float:
    # q-ary lower bound when the excess length is alpha * q^l
    if alpha < 0:
        raise ValidationError("alpha must be nonnegative")
    return (math.log(math.factorial(q), q) / q + alpha) / (1 + alpha)


def rate_lower_log_gap(c: float, q: int = 2) -> float:
    # q-ary lower bound when l = log_q n - c for a constant c > 0
    if c <= 0:
        raise ValidationError("c must be positive")
    return 1 + q ** -(c + 1) * math.log(math.factorial(q), q) - q ** -c


def union_bound_gap(n: int, ell: int, q: int = 2, budget: int = DEFAULT_STATE_BUDGET) -> tuple[int, int]:
    """Exact number of non-covering sequences and its union bound over all tuples."""
    exact_gap = q ** n - covering_count(n, ell, q, budget=budget)
    bound = 0
    for t in range(q ** ell):
        digits = [(t // q ** (ell - 1 - j)) % q for j in range(ell)]
        bound += avoid_count(n, SymbolSeq._wrap(bytes(digits), q), q)
    return exact_gap, bound


def max_ell_single_bit(n: int, q: int = 2) -> int:
    """Largest l with ``c1 (n - 2l) / q^l - l >= log_q(q / (q-1))``, or 0."""
    if n < 4:
        raise ValidationError(f"n must be >= 4, got {n}")
    c1 = c1_constant(q)
    target = math.log(q / (q - 1), q)
    best = 0
    # beyond log_q(n) + 1 the left side is below c1 - l < 0
    for ell in range(1, int(math.log(n, q)) + 2):
        if c1 * (n - 2 * ell) / float(q) ** ell - ell >= target:
            best = ell
    return best
