import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tuplecover.counting import (
    BoundValue,
    avoid_count,
    avoid_upper_bound,
    beta_count,
    beta_lower_bound,
    binary_entropy,
    c1_constant,
    covering_count,
    covering_count_bruteforce,
    covering_lower_bound,
    covering_upper_bound,
    max_ell_single_bit,
    rate_bounds,
    rate_lower_linear,
    rate_lower_log_gap,
    union_bound_gap,
)
from tuplecover.exceptions import ValidationError
from tuplecover.seqcore import SymbolSeq


def all_sequences(n, q=2):
    return (bytes(t) for t in itertools.product(range(q), repeat=n))


def enum_avoid(n, v, q=2):
    return sum(1 for s in all_sequences(n, q) if bytes(v) not in s)


def enum_covering(n, ell, q=2):
    tuples = set(all_sequences(ell, q))
    return sum(1 for s in all_sequences(n, q) if {s[i:i + ell] for i in range(n - ell + 1)} >= tuples)


# values below were produced by enum_avoid / enum_covering
def test_avoid_count_examples():
    assert avoid_count(4, "00") == 8
    assert avoid_count(3, "000") == 7
    assert avoid_count(3, "0000") == 8
    assert avoid_count(5, "0120", q=3) == 3 ** 5 - 2 * 3


@pytest.mark.parametrize("q", [2, 3])
def test_avoid_count_matches_enumeration(q):
    for ell in range(1, 4):
        for v in all_sequences(ell, q):
            for n in range(0, 8):
                assert avoid_count(n, SymbolSeq(v, q), q) == enum_avoid(n, v, q), (v, n)


def test_beta_examples():
    assert beta_count("00") == 8
    assert beta_lower_bound(2) == 1.5
    assert beta_lower_bound(9) == 640
    assert beta_count("00") >= beta_lower_bound(2)


def test_avoid_upper_bound_examples():
    c1 = c1_constant(2)
    assert c1 == pytest.approx(0.0901684, abs=1e-6)
    b = avoid_upper_bound(64, 3)
    assert b.kind == "upper" and not b.exact
    assert b.logq_value == pytest.approx(64 - c1 * 58 / 8, abs=1e-12)
    assert b.logq_value == pytest.approx(63.346, abs=1e-3)
    assert avoid_upper_bound(6, 3).logq_value == 6
    for v in all_sequences(3):
        assert b.holds_for(avoid_count(64, SymbolSeq(v)))


def test_bound_value_validation():
    with pytest.raises(ValidationError):
        BoundValue(float("inf"), "upper")
    with pytest.raises(ValidationError):
        BoundValue(1.0, "sideways")
    assert BoundValue(2.0, "lower").holds_for(4)
    assert not BoundValue(2.0, "lower").holds_for(3)


def test_covering_count_examples():
    assert covering_count(5, 2) == 4
    assert covering_count(6, 2) == 18
    assert covering_count(4, 3) == 0
    assert covering_count(10, 3) == 16
    assert covering_count(2, 1) == 2
    assert covering_count(10, 2, q=3) == 216
    assert covering_count(11, 2, q=3) == 2160


def test_covering_count_matches_enumeration():
    for ell in (1, 2, 3):
        for n in range(ell, 14):
            assert covering_count(n, ell) == enum_covering(n, ell), (n, ell)


def test_bruteforce_examples_and_budget():
    assert covering_count_bruteforce(10, 3) == 16
    assert covering_count_bruteforce(2, 1) == 2
    assert covering_count_bruteforce(6, 2) == 18
    assert covering_count_bruteforce(4, 2, q=3) == 0
    with pytest.raises(ValidationError):
        covering_count_bruteforce(27, 2)


def test_covering_budget_guard():
    with pytest.raises(ValidationError):
        covering_count(40, 5)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 14))
def test_monotone_extension(ell, n):
    assert covering_count(n + 1, ell) >= 2 * covering_count(n, ell)


def test_lower_bound_examples():
    assert covering_lower_bound(10, 3) == 16
    assert covering_lower_bound(12, 3) == 64
    assert covering_lower_bound(6, 2) == 8 <= covering_count(6, 2)
    assert covering_lower_bound(5, 3) == 0


def test_upper_bound_examples():
    assert covering_upper_bound(6, 2) == 32
    assert covering_upper_bound(5, 2) == 4 == covering_count(5, 2)
    assert covering_upper_bound(10, 3) == 16
    with pytest.raises(ValidationError):
        covering_upper_bound(4, 2)


def test_rate_bounds_examples():
    rb = rate_bounds(0)
    assert (rb.lower, rb.upper) == (0.5, 0.5)
    rb = rate_bounds(1)
    assert rb.lower == 0.75 and rb.upper == 1.0
    rb = rate_bounds(0.05)
    assert rb.lower == pytest.approx(1.1 / 2.1, abs=1e-12)
    assert rb.lower == pytest.approx(0.5238, abs=1e-4)
    assert rb.upper == pytest.approx(0.800, abs=1e-3)
    with pytest.raises(ValidationError):
        rate_bounds(-0.1)


@given(st.floats(0, 50, allow_nan=False))
def test_rate_bounds_invariants(alpha):
    rb = rate_bounds(alpha)
    assert 0 <= rb.lower <= 1 and rb.lower <= rb.upper <= 1


def test_entropy_and_qary_rate_formulas():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert rate_lower_linear(0.0) == pytest.approx(0.5)
    assert rate_lower_linear(1.0) == pytest.approx(0.75)
    assert rate_lower_log_gap(1.0) == pytest.approx(1 + 0.25 - 0.5)


def test_union_bound_examples():
    assert union_bound_gap(6, 2) == (46, 56)
    assert union_bound_gap(5, 2) == (28, 13 + 6 + 6 + 13)
    assert union_bound_gap(3, 2)[0] == 8
    gap, bound = union_bound_gap(11, 2, q=3)
    assert gap <= bound


def test_max_ell_single_bit():
    assert max_ell_single_bit(2 ** 20) == 12
    assert max_ell_single_bit(4) == 0
    c1 = c1_constant(2)
    assert c1 * (2 ** 20 - 24) / 2 ** 12 - 12 >= 1
    assert c1 * (2 ** 20 - 26) / 2 ** 13 - 13 < 1
    prev = 0
    for n in [4, 10, 100, 10 ** 3, 10 ** 4, 10 ** 5, 2 ** 20, 2 ** 30, 2 ** 40]:
        cur = max_ell_single_bit(n)
        assert cur >= prev
        prev = cur


def test_avoid_count_long_pattern_is_everything():
    assert avoid_count(3, "0000") == 8
    assert avoid_count(0, "0") == 1
    assert avoid_count(30, "0") == 1
