"""Command-line driver.

Subcommands:
    decompose poly --vars D ["--field Q"] [--out FILE] EXPR
    decompose lie  --vars D --field {Q|F2|F3|F<p>} [--out FILE] EXPR
    verify FILE
    bound poly --vars D --degree N
    bound lie  --vars D --field F

Exit codes: 0 success or verified, 1 verification failure, 2 usage or parse
error, 3 unsupported input (positive characteristic for poly, d < 3 for
lie, degree cap exceeded).
"""

from __future__ import annotations

import argparse
import sys

from .document import dumps, lie_document, loads, poly_document, verify_document
from .errors import DegreeCapError, ParseError, PrimlenError, UnsupportedInputError
from .field import field_from_flag
from .liedecomp import decompose_lie, lie_bound
from .parsing import parse_lie, parse_poly
from .polydecomp import decompose, plength_bound

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="primlen",
        description="Decompose elements into sums of certified primitive elements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    dec = sub.add_parser("decompose", help="decompose an element and emit a JSON certificate document")
    dec.add_argument("algebra", choices=["poly", "lie"])
    dec.add_argument("expression")
    dec.add_argument("--vars", type=int, required=True, metavar="D", help="number of generators")
    dec.add_argument("--field", default="Q", help="Q (default) or F<p>")
    dec.add_argument("--out", help="write the document to this file instead of stdout")

    ver = sub.add_parser("verify", help="re-verify a decomposition document")
    ver.add_argument("file")

    bnd = sub.add_parser("bound", help="print the summand-count bound")
    bnd.add_argument("algebra", choices=["poly", "lie"])
    bnd.add_argument("--vars", type=int, required=True, metavar="D")
    bnd.add_argument("--degree", type=int, help="input degree (poly only)")
    bnd.add_argument("--field", default="Q")
    return parser


def _emit(document, out_path):
    text = dumps(document)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _run_decompose(args):
    try:
        field = field_from_flag(args.field)
    except UnsupportedInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.vars < 1:
        print("error: --vars must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.algebra == "poly":
            f = parse_poly(args.expression, args.vars, field)
            document = poly_document(decompose(f))
        else:
            u = parse_lie(args.expression, args.vars, field)
            document = lie_document(decompose_lie(u))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedInputError, DegreeCapError) as exc:
        print(f"unsupported input: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    _emit(document, args.out)
    return EXIT_OK


def _run_verify(args):
    try:
        with open(args.file, encoding="utf-8") as handle:
            doc = loads(handle.read())
    except (OSError, ValueError, PrimlenError) as exc:
        print(f"error: cannot load document: {exc}", file=sys.stderr)
        return EXIT_USAGE
    result = verify_document(doc)
    if result.ok:
        print("verified")
        return EXIT_OK
    for problem in result.problems:
        print(f"verification failed: {problem}", file=sys.stderr)
    return EXIT_VERIFY_FAILED


def _run_bound(args):
    try:
        field = field_from_flag(args.field)
        if args.algebra == "poly":
            if args.degree is None:
                print("error: bound poly needs --degree", file=sys.stderr)
                return EXIT_USAGE
            value = plength_bound(args.degree, args.vars)
        else:
            value = lie_bound(args.vars, field)
    except UnsupportedInputError as exc:
        print(f"unsupported input: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    print(value)
    return EXIT_OK


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.command == "decompose":
        return _run_decompose(args)
    if args.command == "verify":
        return _run_verify(args)
    return _run_bound(args)


if __name__ == "__main__":
    sys.exit(main())
