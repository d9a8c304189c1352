"""Command-line entry point: ``feitlab table|profile|verify``.

Exit codes: 0 when every hypothesis-satisfying check passes, 1 when one
fails, 2 on usage or corpus errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from ._arith import is_prime
from .chartable import render_table
from .errors import ClosureExceedsCap, FeitlabError
from .harness import (
    CHECKS,
    GroupData,
    bundled_corpus_text,
    corpus_digest,
    emit_report,
    parse_corpus,
    run_checks,
    summarize,
)
from .permgroup import DEFAULT_CAP

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_corpus(path: str) -> str:
    if path == "bundled":
        return bundled_corpus_text()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read corpus {path!r}: {exc.strerror}") from None


def _find(entries, name):
    for e in entries:
        if e.name == name:
            return e
    raise UsageError(f"no group named {name!r} in corpus (have: {', '.join(e.name for e in entries)})")


def _cmd_table(args) -> int:
    entries = parse_corpus(_read_corpus(args.corpus))
    gd = GroupData(_find(entries, args.group), args.seed, args.max_order)
    sys.stdout.write(render_table(gd.table, gd.entry.name))
    return EXIT_OK


def _cmd_profile(args) -> int:
    entries = parse_corpus(_read_corpus(args.corpus))
    gd = GroupData(_find(entries, args.group), args.seed, args.max_order)
    header = f"{'char':<6}{'degree':>7}{'feit':>6}{'det':>5}{'[Q(X):Q]':>10}  p-special"
    print(f"group {gd.entry.name}  order {gd.group.order}  solvable {str(gd.solvable).lower()}")
    print(header)
    for i, prof in enumerate(gd.profiles):
        special = "n/a" if prof.p_special_for is None else (",".join(map(str, prof.p_special_for)) or "-")
        print(f"{'X.' + str(i + 1):<6}{prof.degree:>7}{prof.feit:>6}{prof.det_order:>5}{prof.field_degree:>10}  {special}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    text = _read_corpus(args.corpus)
    entries = parse_corpus(text)
    if args.p == "all":
        p = None
    else:
        try:
            p = int(args.p)
        except ValueError:
            raise UsageError(f"--p must be a prime or 'all', got {args.p!r}") from None
        if not is_prime(p):
            raise UsageError(f"--p must be prime, got {p}")
    kept = []
    for entry in entries:
        try:
            entry.group(args.max_order)
        except ClosureExceedsCap:
            print(f"warning: skipping {entry.name}: order exceeds --max-order {args.max_order}", file=sys.stderr)
            continue
        kept.append(entry)
    results = run_checks(kept, args.check, p=p, seed=args.seed, cap=args.max_order)
    digest = corpus_digest(text)
    if args.json:
        Path(args.json).write_bytes(emit_report(results, "json", args.seed, digest))
    sys.stdout.buffer.write(emit_report(results, "text", args.seed, digest))
    sys.stdout.flush()
    return EXIT_FAIL if summarize(results)["fail"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="feitlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"feitlab {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, group: bool):
        p.add_argument("corpus", help="corpus file, or 'bundled' for the shipped corpus")
        if group:
            p.add_argument("--group", required=True, help="group name in the corpus")
        p.add_argument("--seed", type=int, default=0, help="seed for eigenspace splitting (default 0)")
        p.add_argument("--max-order", type=int, default=DEFAULT_CAP, dest="max_order",
                       help=f"largest group order to enumerate (default {DEFAULT_CAP})")

    p_table = sub.add_parser("table", help="print a character table")
    common(p_table, True)
    p_table.set_defaults(func=_cmd_table)

    p_prof = sub.add_parser("profile", help="degrees, Feit numbers, determinantal orders, p-special flags")
    common(p_prof, True)
    p_prof.set_defaults(func=_cmd_profile)

    p_ver = sub.add_parser("verify", help="run verification suites over the corpus")
    common(p_ver, False)
    p_ver.add_argument("--check", default="all", choices=[*CHECKS, "all"],
                       help="suite to run (default all)")
    p_ver.add_argument("--p", default="all", help="prime to test, or 'all' (default)")
    p_ver.add_argument("--json", metavar="PATH", help="also write the JSON report here")
    p_ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, FeitlabError) as exc:
        print(f"feitlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
