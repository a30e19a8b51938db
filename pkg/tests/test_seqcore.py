import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tuplecover.exceptions import ValidationError
from tuplecover.seqcore import Params, SymbolSeq, as_seq, decode_index, encode_index, failure_function, period


def brute_period(s):
    n = len(s)
    return next(p for p in range(1, n + 1) if all(s[i] == s[i + p] for i in range(n - p)))


binary_text = st.text(alphabet="01", min_size=1, max_size=40)


@pytest.mark.parametrize("text, expected", [("010101010", 2), ("0000", 1), ("0011", 4)])
def test_period_examples(text, expected):
    assert period(SymbolSeq(text)) == expected


def test_period_empty_is_error():
    with pytest.raises(ValidationError):
        period(SymbolSeq(""))


def test_period_matches_brute_force_exhaustively():
    for n in range(1, 15):
        for bits in itertools.product(b"\x00\x01", repeat=n):
            data = bytes(bits)
            assert period(data) == brute_period(data), data


@given(binary_text)
def test_prefix_period_never_exceeds_period(text):
    s = SymbolSeq(text)
    p = period(s)
    for k in range(1, len(s) + 1):
        assert period(s.prefix(k)) <= p


@given(binary_text)
def test_full_period_iff_no_border(text):
    s = SymbolSeq(text)
    assert (period(s) == len(s)) == (failure_function(s)[-1] == 0)


def test_index_codec_examples():
    assert str(encode_index(5332, 14)) == "01010011010100"
    assert str(encode_index(0, 3)) == "000"
    assert str(encode_index(5, 4)) == "0101"
    assert decode_index(SymbolSeq("01010011010100")) == 5332


@pytest.mark.parametrize("width", range(1, 17))
def test_index_codec_roundtrip_exhaustive(width):
    for i in range(1 << width):
        bits = encode_index(i, width)
        assert len(bits) == width
        assert decode_index(bits) == i


def test_index_codec_overflow():
    with pytest.raises(ValidationError):
        encode_index(8, 3)
    with pytest.raises(ValidationError):
        encode_index(-1, 3)


def test_symbolseq_text_roundtrip_and_validation():
    s = SymbolSeq("0120", q=3)
    assert str(s) == "0120" and s.q == 3 and len(s) == 4
    assert list(s) == [0, 1, 2, 0]
    with pytest.raises(ValidationError):
        SymbolSeq("012")  # 2 is outside the binary alphabet
    with pytest.raises(ValidationError):
        SymbolSeq("01a")
    assert SymbolSeq("") == SymbolSeq(b"")


def test_slicing_notation():
    w = SymbolSeq("0011010")
    assert str(w.prefix(3)) == "001"
    assert str(w.suffix(2)) == "10"
    assert str(w.window(2, 3)) == "110"
    assert str(w.prefix(2) + w.suffix(2)) == "0010"
    assert str(SymbolSeq("01") * 3) == "010101"
    with pytest.raises(ValidationError):
        w.window(5, 3)
    with pytest.raises(ValidationError):
        w.prefix(8)


def test_immutable_and_hashable():
    s = SymbolSeq("0101")
    with pytest.raises(AttributeError):
        s.foo = 1
    assert {s: 1}[SymbolSeq("0101")] == 1
    assert s != SymbolSeq("0101", q=3)


def test_find_and_rfind():
    s = SymbolSeq("0110110")
    assert s.find(SymbolSeq("11")) == 1
    assert s.rfind(SymbolSeq("11")) == 4
    assert SymbolSeq("00") not in s


def test_as_seq_and_params():
    assert as_seq("0101").q == 2
    assert as_seq([0, 2, 1], q=3).data == b"\x00\x02\x01"
    Params(n=10, ell=3)
    with pytest.raises(ValidationError):
        Params(n=2, ell=3)
    with pytest.raises(ValidationError):
        Params(n=5, ell=2, q=1)
