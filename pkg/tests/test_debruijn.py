import numpy as np
import pytest

from tuplecover.counting import covering_count
from tuplecover.debruijn import coverage, debruijn_count, gen_debruijn, lyndon_words
from tuplecover.exceptions import ValidationError
from tuplecover.seqcore import SymbolSeq


@pytest.mark.parametrize("ell, expected", [(3, "0001011100"), (1, "01"), (2, "00110")])
def test_gen_debruijn_examples(ell, expected):
    assert str(gen_debruijn(ell)) == expected


def test_lyndon_words_order():
    words = ["".join(map(str, w)) for w in lyndon_words(3)]
    assert words == ["0", "001", "01", "011", "1"]


@pytest.mark.parametrize("ell", range(1, 17))
def test_every_tuple_exactly_once(ell):
    s = gen_debruijn(ell)
    assert len(s) == 2 ** ell + ell - 1
    cov = coverage(s, ell)
    assert cov.missing_count == 0
    # windows are pairwise distinct, so each tuple occurs exactly once
    codes = np.frombuffer(s.data, dtype=np.uint8)
    windows = np.zeros(len(s) - ell + 1, dtype=np.int64)
    for j in range(ell):
        windows = windows * 2 + codes[j:j + len(windows)]
    assert np.array_equal(np.bincount(windows, minlength=2 ** ell), np.ones(2 ** ell))


def test_ternary_debruijn():
    s = gen_debruijn(2, q=3)
    assert len(s) == 10
    assert coverage(s, 2).is_covering


def test_gen_debruijn_range():
    with pytest.raises(ValidationError):
        gen_debruijn(0)
    with pytest.raises(ValidationError):
        gen_debruijn(25)


def test_coverage_examples():
    assert coverage(SymbolSeq("0001001110101"), 3).is_covering
    cov = coverage(SymbolSeq("1001001110101"), 3)
    assert not cov.is_covering
    assert [str(t) for t in cov.missing()] == ["000"]
    cov = coverage(SymbolSeq("00000"), 2)
    assert [str(t) for t in cov.missing()] == ["01", "10", "11"]
    assert str(cov.first_missing()) == "01"


def test_coverage_short_sequence_misses_everything():
    cov = coverage(SymbolSeq("01"), 3)
    assert cov.missing_count == 8
    assert cov.first_missing() == SymbolSeq("000")


def test_coverage_presence_matches_definition():
    rng = np.random.default_rng(3)
    for _ in range(50):
        x = SymbolSeq(rng.integers(0, 3, 30).astype(np.uint8), q=3)
        cov = coverage(x, 2)
        seen = {x.data[i:i + 2] for i in range(len(x) - 1)}
        for code in range(9):
            assert cov.present[code] == (cov.tuple_of(code).data in seen)


def test_debruijn_count_examples():
    assert debruijn_count(3, 2) == 16
    assert debruijn_count(1, 2) == 2
    assert debruijn_count(2, 3) == 216
    with pytest.raises(ValidationError):
        debruijn_count(40, 2)


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_debruijn_count_is_covering_count_at_threshold(ell):
    assert debruijn_count(ell) == covering_count(2 ** ell + ell - 1, ell)
