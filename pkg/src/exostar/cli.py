"""Command-line interface: ``exostar {product,transvectant,quantize,conjugate,verify}``.

Exit codes: 0 on success, 1 on a mathematical violation or domain error
(failed suite, odd-parity pushforward), 2 on usage or parse errors.
"""

import argparse
import sys
from fractions import Fraction

from .expr import NormalizeError, ParseError, parse_phasefn, render
from .pdo import quantize
from .poly import QPoly
from .star import ParityError, ProductKind, phi_pullback, phi_pushforward, star_product, transvectant
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

FORMATS = ("text", "json", "latex")


class UsageError(Exception):
    pass


def _expr(src):
    try:
        return parse_phasefn(src)
    except (ParseError, NormalizeError) as exc:
        raise UsageError(f"{type(exc).__name__}: {exc} in {src!r}") from None


def _qpoly(src):
    try:
        return QPoly.coerce(_expr(src))
    except TypeError:
        raise UsageError(f"expected a polynomial in q without p, got {src!r}") from None


def cmd_product(args):
    F, G = _expr(args.lhs), _expr(args.rhs)
    kind = ProductKind.parse(args.kind)
    out = star_product(F, G, kind, args.max_order)
    if args.average:
        out = (out + star_product(G, F, kind, args.max_order)).scale(Fraction(1, 2))
    print(render(out, args.format))
    return EXIT_OK


def cmd_transvectant(args):
    if args.k < 0:
        raise UsageError(f"order k must be non-negative, got {args.k}")
    f, g = _qpoly(args.f), _qpoly(args.g)
    print(render(transvectant(f, g, args.m, args.n, args.k), args.format))
    return EXIT_OK


def cmd_quantize(args):
    kind = ProductKind.MOYAL if args.rep == "weyl" else ProductKind.EXOTIC
    print(render(quantize(_expr(args.expr), kind), args.format))
    return EXIT_OK


def cmd_conjugate(args):
    F = _expr(args.expr)
    if args.direction == "pullback":
        out = phi_pullback(F)
    else:
        try:
            out = phi_pushforward(F)
        except ParityError as exc:
            print(f"ParityError: {exc}", file=sys.stderr)
            return EXIT_VIOLATION
    print(render(out, args.format))
    return EXIT_OK


def cmd_verify(args):
    report = run_suite(
        args.suite, max_p=args.max_p, max_q=args.max_q, max_k=args.max_k, max_K=args.max_K, seed=args.seed
    )
    print(report.render(args.format))
    if not report.passed:
        print(f"suite {args.suite}: {len(report.failures)} counterexample(s) recorded", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _seed(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _nonneg(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("bound must be non-negative")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="exostar", description="Exact Moyal and exotic star-product computations.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=FORMATS, default="text", help="output format (default: text)")
        return p

    p = add("product", cmd_product, "Star product of two phase-space expressions.")
    p.add_argument("--kind", choices=[k.value for k in ProductKind], default="moyal")
    p.add_argument("--max-order", type=_nonneg, default=None, help="drop terms beyond this power of hbar")
    p.add_argument("--average", action="store_true", help="print (F*G + G*F)/2 instead of F*G")
    p.add_argument("lhs")
    p.add_argument("rhs")

    p = add("transvectant", cmd_transvectant, "Transvectant J_k^{m,n}(f, g) of two q-polynomials.")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("f")
    p.add_argument("g")

    p = add("quantize", cmd_quantize, "Quantize a symbol to a pseudodifferential operator in D = d/dq.")
    p.add_argument("--rep", choices=("weyl", "exotic"), default="weyl")
    p.add_argument("expr")

    p = add("conjugate", cmd_conjugate, "Apply the Phi pullback or its inverse.")
    p.add_argument("--direction", choices=("pullback", "pushforward"), required=True)
    p.add_argument("expr")

    suites = "\n".join(f"  {name:13s} {entry[2]}" for name, entry in SUITES.items())
    p = sub.add_parser(
        "verify",
        help="Run a named verification suite.",
        description="Run a named verification suite. Suites:\n" + suites,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.set_defaults(func=cmd_verify)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--suite", choices=list(SUITES), required=True)
    p.add_argument("--max-p", type=_nonneg, default=None)
    p.add_argument("--max-q", type=_nonneg, default=None)
    p.add_argument("--max-k", type=_nonneg, default=None)
    p.add_argument("--max-K", dest="max_K", type=_nonneg, default=None)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"exostar {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
