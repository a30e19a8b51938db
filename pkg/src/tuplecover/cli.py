"""Command-line interface.

Sequences are read and written one per line as digit strings. Exit status is 0
on success, 1 on invalid parameters or input (and for ``check-cover`` when the
input is not covering), 2 when an internal invariant fails.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

from . import avoid, counting, covering
from .debruijn import coverage, gen_debruijn
from .exceptions import InvariantViolation, ValidationError
from .seqcore import SymbolSeq

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _read_seq(path: str | None, q: int = 2) -> SymbolSeq:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise ValidationError(f"expected exactly one sequence line, got {len(lines)}")
    return SymbolSeq(lines[0], q)


def _emit(text: str, path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    # write-then-rename so a failure never leaves a partial file
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tuplecover-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _log_q(value: int, q: int) -> float | None:
    return math.log(value, q) if value > 0 else None


def _cmd_encode(args) -> int:
    covering.check_params(args.n, args.ell)
    w = _read_seq(args.input)
    if len(w) != args.n - 1:
        raise ValidationError(f"encode expects {args.n - 1} input symbols, got {len(w)}")
    _emit(str(covering.encode(w, args.ell)), args.output)
    return EXIT_OK


def _cmd_decode(args) -> int:
    covering.check_params(args.n, args.ell)
    x = _read_seq(args.input)
    if len(x) != args.n:
        raise ValidationError(f"decode expects {args.n} input symbols, got {len(x)}")
    _emit(str(covering.decode(x, args.ell)), args.output)
    return EXIT_OK


def _cmd_compress(args) -> int:
    ctx = avoid.build_context(SymbolSeq(args.v, 2))
    _emit(str(avoid.compress_stream(ctx, _read_seq(args.input))), args.output)
    return EXIT_OK


def _cmd_decompress(args) -> int:
    ctx = avoid.build_context(SymbolSeq(args.v, 2))
    _emit(str(avoid.decompress_stream(ctx, _read_seq(args.input), length=args.length)), args.output)
    return EXIT_OK


def _cmd_gen_debruijn(args) -> int:
    _emit(str(gen_debruijn(args.ell, args.q)), args.output)
    return EXIT_OK


def _cmd_check_cover(args) -> int:
    cov = coverage(_read_seq(args.input, args.q), args.ell, args.q)
    if cov.is_covering:
        _emit("covering", args.output)
        return EXIT_OK
    missing = " ".join(str(t) for t in cov.missing())
    _emit(f"not covering: {cov.missing_count} missing: {missing}", args.output)
    return EXIT_INVALID


def _cmd_count(args) -> int:
    if args.kind == "covering":
        if args.ell is None:
            raise ValidationError("count covering requires --ell")
        exact = counting.covering_count(args.n, args.ell, args.q)
        lower = counting.covering_lower_bound(args.n, args.ell, args.q)
        upper = None
        if args.q == 2 and args.n >= 2 ** args.ell + args.ell - 1:
            upper = counting.covering_upper_bound(args.n, args.ell)
        obj = {"n": args.n, "ell": args.ell, "q": args.q, "exact": exact,
               "lower": lower, "upper": upper, "logDomain": False}
    else:
        if args.v is None:
            raise ValidationError("count avoiding requires --v")
        v = SymbolSeq(args.v, args.q)
        if args.ell is not None and args.ell != len(v):
            raise ValidationError(f"--ell {args.ell} does not match |v| = {len(v)}")
        exact = counting.avoid_count(args.n, v, args.q)
        upper = None
        if len(v) <= args.n:
            upper = counting.avoid_upper_bound(args.n, len(v), args.q).logq_value
        obj = {"n": args.n, "ell": len(v), "q": args.q, "exact": exact,
               "lower": None, "upper": upper, "logDomain": True}
    _emit(json.dumps(obj), args.output)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    lower = _log_q(counting.covering_lower_bound(args.n, args.ell, args.q), args.q)
    upper = None
    if args.q == 2 and args.n >= 2 ** args.ell + args.ell - 1:
        upper = _log_q(counting.covering_upper_bound(args.n, args.ell), 2)
    obj = {"n": args.n, "ell": args.ell, "q": args.q, "lower": lower, "upper": upper, "logDomain": True}
    _emit(json.dumps(obj), args.output)
    return EXIT_OK


def _cmd_rate(args) -> int:
    rb = counting.rate_bounds(args.alpha)
    _emit(json.dumps({"alpha": rb.alpha, "lower": rb.lower, "upper": rb.upper}), args.output)
    return EXIT_OK


def _cmd_sample(args) -> int:
    _emit(str(avoid.sample_avoiding(SymbolSeq(args.v, 2), args.n, args.seed)), args.output)
    return EXIT_OK


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tuplecover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def io(p):
        p.add_argument("-i", "--input", default=None, help="input file (default: stdin)")
        p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")

    for name, fn, help_ in (("encode", _cmd_encode, "encode n-1 bits into a covering sequence"),
                            ("decode", _cmd_decode, "decode a covering sequence back to n-1 bits")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--n", type=_positive, required=True)
        p.add_argument("--ell", type=_positive, required=True)
        io(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("compress", help="compress a v-avoiding sequence")
    p.add_argument("--v", required=True)
    io(p)
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("decompress", help="invert compress")
    p.add_argument("--v", required=True)
    p.add_argument("--length", type=_positive, default=None, help="original length, when known")
    io(p)
    p.set_defaults(func=_cmd_decompress)

    p = sub.add_parser("gen-debruijn", help="print the lexicographically least de Bruijn sequence")
    p.add_argument("--ell", type=_positive, required=True)
    p.add_argument("--q", type=_positive, default=2)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_gen_debruijn)

    p = sub.add_parser("check-cover", help="report tuples missing from a sequence")
    p.add_argument("--ell", type=_positive, required=True)
    p.add_argument("--q", type=_positive, default=2)
    io(p)
    p.set_defaults(func=_cmd_check_cover)

    p = sub.add_parser("count", help="exact counts with bounds")
    p.add_argument("kind", choices=("covering", "avoiding"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=_positive, default=None)
    p.add_argument("--q", type=_positive, default=2)
    p.add_argument("--v", default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("bounds", help="log-domain lower/upper bounds on the covering count")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--ell", type=_positive, required=True)
    p.add_argument("--q", type=_positive, default=2)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("rate", help="asymptotic rate bounds for excess length alpha * 2^l")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_rate)

    p = sub.add_parser("sample-avoiding", help="uniform random v-avoiding sequence")
    p.add_argument("--v", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_sample)
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "q", 2) < 2:
            raise ValidationError("--q must be at least 2")
        return args.func(args)
    except InvariantViolation as exc:
        print(f"tuplecover: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValidationError, OSError) as exc:
        print(f"tuplecover: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
