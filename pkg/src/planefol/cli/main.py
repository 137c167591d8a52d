"""Command-line entry point: ``planefol COMMAND [FILE] [options]``."""

from __future__ import annotations

import argparse
import sys

from ..errors import ParseError, PlanefolError
from .grammar import parse_input
from .reports import COMMANDS, Options, render, run_command

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="planefol",
        description="Reduction of singularities of plane foliations, ramifications and separatrices.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", nargs="?", default="-", help="input document ('-' for stdin)")
    p.add_argument("-e", "--expr", help="input given inline instead of a file")
    p.add_argument("--order", type=int, default=16, help="truncation order N (jets checked mod x^N)")
    p.add_argument("--dmax", type=int, default=12, help="largest ramification exponent tried")
    p.add_argument("--max-depth", type=int, default=50, help="blow-up depth guard")
    p.add_argument("--emit", choices=("text", "json", "dot"), default="text")
    p.add_argument("--graph", choices=("tree", "dual"), default="tree", help="what --emit dot draws")
    p.add_argument(
        "--force-blowup", action="store_true", help="blow up the origin once even if it is already reduced"
    )
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.expr is not None:
            text = args.expr
        elif args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        doc = parse_input(text)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    for w in doc.warnings if args.emit != "text" else ():
        print(f"warning: {w}", file=sys.stderr)
    opts = Options(args.order, args.dmax, args.max_depth, args.force_blowup)
    try:
        report, tree = run_command(doc, args.command, opts)
        out = render(report, tree, args.emit, args.graph)
    except PlanefolError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
