"""Covering sequences for l-tuples: constrained codecs, de Bruijn sequences and exact counts."""
from .avoid import (
    AvoiderContext,
    build_context,
    compress_block,
    compress_stream,
    decompress_block,
    decompress_stream,
    f1,
    f2,
    sample_avoiding,
    supported_ells,
)
from .counting import (
    BoundValue,
    RateBounds,
    avoid_count,
    avoid_upper_bound,
    beta_count,
    beta_lower_bound,
    covering_count,
    covering_count_bruteforce,
    covering_lower_bound,
    covering_upper_bound,
    max_ell_single_bit,
    rate_bounds,
    union_bound_gap,
)
from .covering import decode, encode, length_schedule
from .debruijn import CoverageMap, coverage, debruijn_count, gen_debruijn
from .estimators import AvoidingCompressor, CoveringEncoder, TupleCoverage
from .exceptions import InvariantViolation, MalformedInputError, ValidationError
from .seqcore import Params, SymbolSeq, decode_index, encode_index, period

__version__ = "0.1.0"
