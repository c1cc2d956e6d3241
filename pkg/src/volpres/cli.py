"""Command-line entry point: ``volpres <command> ...``.

Exit codes:
    0  success (certify: certified)
    1  input error (unreadable file, malformed JSON, contract violation)
    2  certify: refuted
    3  apply --via-symbol: the symbol oracle disagrees with direct application
    4  verify: at least one suite failed

JSON results go to ``--out`` when given, otherwise to stdout; human-readable
notes go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import io
from . import operators as ops
from .geometry import volume_polynomial
from .lorentzian import certify_lorentzian
from .matroids import (
    bases_polynomial,
    coefficient_gap,
    generic_extension_polynomial,
    independent_polynomial,
    normalized_independent_polynomial,
)
from .suites import SUITE_ALIASES, SUITES, run_suite

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REFUTED = 2
EXIT_ORACLE = 3
EXIT_SUITE = 4


class InputError(Exception):
    pass


def _load(path: str) -> Any:
    try:
        text = Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _reject_float(token: str):
    raise io.FormatError(f"floating-point literal {token}; write rationals as strings like \"3/2\"")


def _emit(args: argparse.Namespace, obj: Any) -> None:
    text = io.dumps(obj)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _operator(args: argparse.Namespace) -> ops.LinearOperator:
    T = io.operator_from_json(_load(args.operator))
    if args.max_kappa is not None and any(k > args.max_kappa for k in T.kappa):
        raise InputError(f"kappa {list(T.kappa)} exceeds --max-kappa {args.max_kappa}")
    return T


def cmd_symbol(args: argparse.Namespace) -> int:
    T = _operator(args)
    _emit(args, io.poly_to_json(ops.symbol(T)))
    _note(f"degree {T.k + T.shift}")
    return EXIT_OK


def cmd_apply(args: argparse.Namespace) -> int:
    T = _operator(args)
    f = io.poly_from_json(_load(args.poly))
    out = ops.apply(T, f)
    if args.via_symbol:
        via = ops.apply_via_symbol(T, f)
        if via != out:
            _note(f"oracle mismatch: direct {out}, via symbol {via}")
            return EXIT_ORACLE
        _note("symbol oracle agrees")
    _emit(args, io.poly_to_json(out))
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    f = io.poly_from_json(_load(args.poly))
    report = certify_lorentzian(f)
    _emit(args, report.to_json())
    _note(f"{report.verdict} at stage {report.stage}")
    return EXIT_OK if report.certified else EXIT_REFUTED


def cmd_mixedvol(args: argparse.Namespace) -> int:
    polys = io.polytopes_from_json(_load(args.polytopes))
    dims = {P.dim for P in polys}
    if len(dims) != 1:
        raise InputError(f"polytopes live in different dimensions {sorted(dims)}")
    _emit(args, io.poly_to_json(volume_polynomial(polys)))
    return EXIT_OK


def cmd_matroid(args: argparse.Namespace) -> int:
    M = io.matroid_from_json(_load(args.matroid))
    if args.which == "B":
        f = bases_polynomial(M)
    elif args.which == "I":
        f = independent_polynomial(M)
    elif args.which == "NI":
        f = normalized_independent_polynomial(M)
    else:
        if args.m is None or args.m < 1:
            raise InputError("--which ext needs a positive --m")
        f = generic_extension_polynomial(M, args.m)
        _note(f"max coefficient gap to N(I): {coefficient_gap(f, normalized_independent_polynomial(M))}")
    _emit(args, io.poly_to_json(f))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES and args.suite not in SUITE_ALIASES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)} or 'all'")
    results = [run_suite(name, seed=args.seed, max_kappa=args.max_kappa) for name in names]
    for res in results:
        print(res.summary())
        for msg in res.failures[:5]:
            print(f"    {msg}")
    if args.out:
        Path(args.out).write_text(io.dumps({"seed": args.seed, "suites": [r.to_json() for r in results]}))
    return EXIT_OK if all(r.passed for r in results) else EXIT_SUITE


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        # argparse would exit 2, which is reserved for refutations
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="volpres", description="Exact checks for volume-polynomial preservers.")
    common = _Parser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write the JSON result here instead of stdout")
    common.add_argument("--max-kappa", type=int, metavar="K", help="reject or limit exponents above K")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("symbol", parents=[common], help="symbol polynomial of an operator")
    p.add_argument("operator")
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("apply", parents=[common], help="apply an operator to a polynomial")
    p.add_argument("operator")
    p.add_argument("poly")
    p.add_argument("--via-symbol", action="store_true", help="cross-check with the symbol contraction")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("certify", parents=[common], help="certify or refute the Lorentzian property")
    p.add_argument("poly")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("mixedvol", parents=[common], help="volume polynomial of a list of polytopes")
    p.add_argument("polytopes")
    p.set_defaults(func=cmd_mixedvol)

    p = sub.add_parser("matroid", parents=[common], help="generating polynomials of a matroid")
    p.add_argument("matroid")
    p.add_argument("--which", choices=["B", "I", "NI", "ext"], default="B")
    p.add_argument("--m", type=int, help="number of generic vectors for --which ext")
    p.set_defaults(func=cmd_matroid)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", help=f"one of {', '.join(sorted(SUITES))} or 'all'")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ops.OperatorError as exc:
        where = f" (alpha={list(exc.alpha)})" if exc.alpha is not None else ""
        _note(f"error: {exc}{where}")
    except (InputError, ValueError) as exc:
        _note(f"error: {exc}")
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
