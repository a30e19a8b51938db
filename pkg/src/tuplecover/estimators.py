"""scikit-learn compatible wrappers.

Each row of ``X`` is one binary sequence. The codecs are stateless apart from
the constants built in ``fit``, so ``fit`` ignores the data and only validates
hyper-parameters.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import avoid, covering
from .debruijn import coverage, gen_debruijn
from .exceptions import ValidationError
from .seqcore import SymbolSeq

__all__ = ["check_sequences", "AvoidingCompressor", "CoveringEncoder", "TupleCoverage"]


def check_sequences(X, q: int = 2, n_features: int | None = None) -> np.ndarray:
    """Validate a 2-D array of symbols in ``[0, q-1]`` and return it as uint8.

    Rows may also be given as digit strings.
    """
    if isinstance(X, (list, tuple)) and X and isinstance(X[0], (str, SymbolSeq)):
        rows = [SymbolSeq(r, q).data if isinstance(r, str) else r.data for r in X]
        if len({len(r) for r in rows}) > 1:
            raise ValidationError("all sequences must have the same length")
        X = np.frombuffer(b"".join(rows), dtype=np.uint8).reshape(len(rows), -1)
    X = check_array(X, dtype=None, ensure_min_features=1)
    if not np.issubdtype(X.dtype, np.integer):
        if not np.all(np.mod(X, 1) == 0):
            raise ValidationError("symbols must be integers")
    if X.size and (X.min() < 0 or X.max() >= q):
        raise ValidationError(f"symbols must lie in [0, {q - 1}]")
    if n_features is not None and X.shape[1] != n_features:
        raise ValidationError(f"expected sequences of length {n_features}, got {X.shape[1]}")
    return X.astype(np.uint8, copy=False)


def _rows(X: np.ndarray):
    for row in X:
        yield SymbolSeq._wrap(np.ascontiguousarray(row).tobytes(), 2)


def _stack(seqs) -> np.ndarray:
    seqs = list(seqs)
    return np.frombuffer(b"".join(s.data for s in seqs), dtype=np.uint8).reshape(len(seqs), -1).copy()


class AvoidingCompressor(TransformerMixin, BaseEstimator):
    """Blockwise compressor for binary sequences that avoid the tuple ``v``.

    Parameters
    ----------
    v : str
        The avoided tuple as a digit string, length at least 6.

    Rows of length ``L`` become rows of length ``L - floor((L-1) / 2^(l+6))``.
    """

    def __init__(self, v: str = "000000"):
        self.v = v

    def fit(self, X=None, y=None):
        self.context_ = avoid.build_context(SymbolSeq(self.v, 2))
        self.block_len_ = self.context_.block_len
        if X is not None:
            self.n_features_in_ = check_sequences(X).shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "context_")
        X = check_sequences(X)
        return _stack(avoid.compress_stream(self.context_, row) for row in _rows(X))

    def inverse_transform(self, X, length: int | None = None):
        check_is_fitted(self, "context_")
        X = check_sequences(X)
        if length is None:
            length = getattr(self, "n_features_in_", None)
        return _stack(avoid.decompress_stream(self.context_, row, length=length) for row in _rows(X))


class CoveringEncoder(TransformerMixin, BaseEstimator):
    """Maps rows of ``n-1`` bits to length-``n`` sequences covering every ``ell``-tuple."""

    def __init__(self, n: int = 1 << 16, ell: int = 6):
        self.n = n
        self.ell = ell

    def fit(self, X=None, y=None):
        covering.check_params(self.n, self.ell)
        self.schedule_ = covering.length_schedule(self.n, self.ell)
        self.debruijn_ = gen_debruijn(self.ell)
        self.n_features_in_ = self.n - 1
        return self

    def transform(self, X):
        check_is_fitted(self, "schedule_")
        X = check_sequences(X, n_features=self.n - 1)
        return _stack(covering.encode(row, self.ell) for row in _rows(X))

    def inverse_transform(self, X):
        check_is_fitted(self, "schedule_")
        X = check_sequences(X, n_features=self.n)
        return _stack(covering.decode(row, self.ell) for row in _rows(X))


class TupleCoverage(TransformerMixin, BaseEstimator):
    """Presence matrix: column ``t`` is 1 when tuple ``t`` occurs in the row."""

    def __init__(self, ell: int = 3, q: int = 2):
        self.ell = ell
        self.q = q

    def fit(self, X=None, y=None):
        if self.ell < 1 or self.q < 2:
            raise ValidationError(f"need ell >= 1 and q >= 2, got ell={self.ell}, q={self.q}")
        self.n_tuples_ = self.q ** self.ell
        return self

    def transform(self, X):
        check_is_fitted(self, "n_tuples_")
        X = check_sequences(X, q=self.q)
        out = np.zeros((X.shape[0], self.n_tuples_), dtype=np.uint8)
        for r, row in enumerate(X):
            seq = SymbolSeq._wrap(np.ascontiguousarray(row).tobytes(), self.q)
            out[r] = coverage(seq, self.ell, self.q).present
        return out
