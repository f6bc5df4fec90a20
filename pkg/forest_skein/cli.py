"""
fsg command line
----------------
Subcommands over forest-skein group elements:

    eval, equal, identity, mul, inv, abelianize, cbar, germ,
    seminormal, grow-a, graph, free-words, selftest

Every subcommand takes `--n`. Elements come as positional arguments or, one per
line, from `--file`.

Exit codes
----------
- 0 success (graph output with singular rows included)
- 1 a check failed (selftest, free-words with identity hits) or a rewriting /
  transducer error
- 2 parse error (the message carries the position) or an unreadable `--file`
- 3 domain error (arity, type tag, precondition)
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from forest_skein import config
from forest_skein.dynamics import canonical_action, circle_germ, cone_image, germ_at, germ_classify, render
from forest_skein.errors import DomainError, FsgError, InputFileError, ParseError
from forest_skein.free_words import check_free_words
from forest_skein.groups import (
    GroupElement,
    abelianise,
    c_bar,
    equals,
    germ_at_zero,
    identity_witness,
    inverse,
    multiply,
    seminormal_form,
)
from forest_skein.graphs import graph_csv, write_graph
from forest_skein.points import RationalPoint
from forest_skein.selftest import run_selftest
from forest_skein.skein import SkeinContext, grow_to_a_tree
from forest_skein.syntax import (
    format_element,
    format_forest,
    format_point,
    format_tree,
    parse_element,
    parse_point,
    parse_tree,
    split_point,
)

logger = logging.getLogger("fsg")

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3


# --- Argument helpers ---------------------------------------------------------
def _elements(args: argparse.Namespace, ctx: SkeinContext, count: int | None) -> list[GroupElement]:
    texts = list(args.items)
    if args.file:
        try:
            lines = Path(args.file).read_text().splitlines()
        except OSError as exc:
            raise InputFileError(f"cannot read {args.file}: {exc.strerror or exc}") from exc
        texts = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")] + texts
    if count is not None and len(texts) < count:
        raise DomainError(f"{args.command} needs {count} element(s), got {len(texts)}")
    return [parse_element(t, ctx, args.type) for t in texts]


def _element_and_point(args: argparse.Namespace) -> tuple[list[str], str]:
    if not args.items:
        raise DomainError("eval needs an element and a point")
    *rest, point = args.items
    return rest, point


def _parse_circle(text: str) -> Fraction | RationalPoint:
    if "(" in text:
        return parse_point(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError("expected a point u(p) or a rational p/q", text, 0) from None


# --- Commands -----------------------------------------------------------------
def cmd_eval(args: argparse.Namespace, ctx: SkeinContext) -> int:
    rest, point = _element_and_point(args)
    args.items = rest
    (g,) = _elements(args, ctx, 1)[:1]
    u, period = split_point(point)
    image = canonical_action(g, RationalPoint(u, period))
    v = None if args.normal else cone_image(g, u)
    # the written prefix is kept when the cone maps by prefix replacement
    print(format_point(image) if v is None else f"{v}({period})")
    return EXIT_OK


def cmd_equal(args: argparse.Namespace, ctx: SkeinContext) -> int:
    x, y = _elements(args, ctx, 2)[:2]
    print(str(equals(x, y)).lower())
    return EXIT_OK


def cmd_identity(args: argparse.Namespace, ctx: SkeinContext) -> int:
    (g,) = _elements(args, ctx, 1)[:1]
    witness = identity_witness(g)
    print("true" if witness is None else "false")
    if witness is not None and args.verbose:
        print(f"witness {witness} ↦ {canonical_action(g, witness)}")
    return EXIT_OK


def cmd_mul(args: argparse.Namespace, ctx: SkeinContext) -> int:
    items = _elements(args, ctx, 1)
    out = items[0]
    for g in items[1:]:
        out = multiply(out, g)
    print(format_element(out))
    return EXIT_OK


def cmd_inv(args: argparse.Namespace, ctx: SkeinContext) -> int:
    (g,) = _elements(args, ctx, 1)[:1]
    print(format_element(inverse(g)))
    return EXIT_OK


def cmd_abelianize(args: argparse.Namespace, ctx: SkeinContext) -> int:
    (g,) = _elements(args, ctx, 1)[:1]
    print(f"{abelianise(g)} (mod {ctx.n})")
    return EXIT_OK


def cmd_cbar(args: argparse.Namespace, ctx: SkeinContext) -> int:
    (g,) = _elements(args, ctx, 1)[:1]
    sides = ["plus", "minus"] if args.side == "both" else [args.side]
    for side in sides:
        print(f"{side}: {c_bar(side, g)}")
    return EXIT_OK


def cmd_germ(args: argparse.Namespace, ctx: SkeinContext) -> int:
    if args.at is not None:
        at = _parse_circle(args.at)
        if not args.items and not args.file:
            print(germ_classify(at))
            return EXIT_OK
        (g,) = _elements(args, ctx, 1)[:1]
        germs = (germ_at(g, at),) if isinstance(at, RationalPoint) else circle_germ(g, at)
        for germ in germs:
            print(germ)
        return EXIT_OK
    (g,) = _elements(args, ctx, 1)[:1]
    plus, minus = germ_at_zero(g)
    print(f"({plus}, {minus})")
    return EXIT_OK


def cmd_seminormal(args: argparse.Namespace, ctx: SkeinContext) -> int:
    (g,) = _elements(args, ctx, 1)[:1]
    snf = seminormal_form(g)
    print(format_element(snf.element))
    if args.verbose:
        for line in snf.numerator_trace.lines():
            print(f"numerator {line}")
        for line in snf.denominator_trace.lines():
            print(f"denominator {line}")
    return EXIT_OK


def cmd_grow_a(args: argparse.Namespace, ctx: SkeinContext) -> int:
    if not args.items:
        raise DomainError("grow-a needs a tree")
    r = grow_to_a_tree(ctx, parse_tree(args.items[0]))
    print(format_tree(r.tree))
    print(f"growth {format_forest(r.growth)}")
    if args.verbose:
        for line in r.trace.lines():
            print(line)
    return EXIT_OK


def cmd_graph(args: argparse.Namespace, ctx: SkeinContext) -> int:
    (g,) = _elements(args, ctx, 1)[:1]
    graph = render(g, args.depth)
    if args.out is None:
        sys.stdout.write(graph_csv(graph))
        return EXIT_OK
    for path in write_graph(graph, args.out, args.format):
        print(f"[INFO] wrote {path}")
    if graph.singular:
        print(f"[WARN] {len(graph.singular)} singular interval(s) at depth {graph.depth}")
    return EXIT_OK


def cmd_free_words(args: argparse.Namespace, ctx: SkeinContext) -> int:
    report = check_free_words(ctx, args.len)
    print(f"checked {report.checked} reduced words up to length {report.max_len}")
    for w in report.identity_hits:
        print(f"identity hit: {w}")
    for i in report.generator_mismatches:
        print(f"c̄⁺ mismatch for generator g{i}")
    for w in report.word_mismatches:
        print(f"c̄⁺ mismatch for word {w}")
    if report.ok:
        print("no identity hits")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_selftest(args: argparse.Namespace, ctx: SkeinContext) -> int:
    results = run_selftest(ctx.n, args.seed)
    for name, ok, detail in results:
        print(f"[{'OK' if ok else 'FAIL'}] {name}: {detail}")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_FAIL


COMMANDS = {
    "eval": (cmd_eval, "apply an element to a rational point u(p)"),
    "equal": (cmd_equal, "decide whether two elements are equal"),
    "identity": (cmd_identity, "decide whether an element is trivial"),
    "mul": (cmd_mul, "multiply elements left to right"),
    "inv": (cmd_inv, "invert an element"),
    "abelianize": (cmd_abelianize, "abelianisation #b(t) - #b(s) mod n"),
    "cbar": (cmd_cbar, "germ quotient values in Γ⁺ / Γ⁻"),
    "germ": (cmd_germ, "germ at 0 of an element, or classify a point with --at"),
    "seminormal": (cmd_seminormal, "seminormal form with certified traces"),
    "grow-a": (cmd_grow_a, "grow a tree into an a-tree"),
    "graph": (cmd_graph, "render the circle action as CSV / SVG"),
    "free-words": (cmd_free_words, "check reduced free words map to non-identity elements"),
    "selftest": (cmd_selftest, "run the quick acceptance checks"),
}


# --- Parser -------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="index n >= 3 of F_n")
    common.add_argument("--type", choices=["F", "T", "V"], default=None, help="type tag of parsed elements")
    common.add_argument("--file", default=None, help="read elements from a file, one per line")
    common.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    common.add_argument("-v", "--verbose", action="store_true", help="print traces and witnesses")
    common.add_argument("--log-level", default=None)

    parser = argparse.ArgumentParser(prog="fsg", description="Forest-skein group computations.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("items", nargs="*", help="elements / trees / points")
        if name == "graph":
            p.add_argument("--depth", type=int, default=config.DEFAULT_DEPTH)
            p.add_argument("--out", default=None, help="output path without extension")
            p.add_argument("--format", choices=["csv", "svg", "both"], default="csv")
        elif name == "cbar":
            p.add_argument("--side", choices=["plus", "minus", "both"], default="both")
        elif name == "eval":
            p.add_argument("--normal", action="store_true", help="print the image in normal form")
        elif name == "germ":
            p.add_argument("--at", default=None, help="a point u(p) or a rational p/q")
        elif name == "free-words":
            p.add_argument("--len", type=int, default=4)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config.configure_logging(args.log_level or "WARNING")
    handler, _ = COMMANDS[args.command]
    try:
        ctx = SkeinContext(args.n)
        return handler(args, ctx)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InputFileError as exc:
        print(f"[WARN] {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FsgError as exc:
        logger.error("%s failed: %s", args.command, exc)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
