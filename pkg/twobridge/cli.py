"""
Command-line surface.

    python -m twobridge expand 1402/1813 --form blocks
    python -m twobridge braid 1813 1402 --explain
    python -m twobridge homfly 5 2 --format latex
    python -m twobridge verify --max-q 120 --out verify_report.json
    python -m twobridge fixtures --input data/fixtures.csv

Results go to stdout, status lines to stderr.
"""

import argparse
import json
import sys
from typing import List, Optional

from twobridge import config
from twobridge.blocks import canonical_block_form
from twobridge.braid import braid_index
from twobridge.contfrac import ExactRational, expand_even, expand_nonalternating
from twobridge.errors import DomainError, InvariantViolation, ReportIOError, UsageError
from twobridge.fixtures import format_table, load_fixtures, run_fixtures
from twobridge.homfly import homfly
from twobridge.link import validate_pair
from twobridge.sweep import parse_checks, run_sweep, status, write_report
from twobridge.utils import atomic_write_text

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

FORMS = ("nonalt", "even", "blocks")


# ==============================
# Subcommands
# ==============================

def _parse_fraction(text: str) -> ExactRational:
    try:
        r = ExactRational.parse(text, require_reduced=True)
    except DomainError as e:
        raise UsageError(str(e)) from e
    if r.is_infinite:
        raise UsageError(f"{text.strip()} is infinite; expand needs a finite p/q")
    return r


def _check_pair(q: int, p: int):
    try:
        validate_pair(q, p)
    except DomainError as e:
        raise UsageError(str(e)) from e


def cmd_expand(args) -> int:
    r = _parse_fraction(args.fraction)
    forms = [args.form] if args.form else list(FORMS)
    out = {}
    if "nonalt" in forms:
        first, second = expand_nonalternating(r)
        out["nonalt"] = [str(first)] if first == second else [str(first), str(second)]
    if "even" in forms:
        out["even"] = str(expand_even(r))
    if "blocks" in forms:
        _, dec = canonical_block_form(r)
        out["blocks"] = str(dec)

    if args.json:
        print(json.dumps({"fraction": str(r), **out}, indent=2))
        return EXIT_OK
    for form in forms:
        value = out[form]
        lines = value if isinstance(value, list) else [value]
        for line in lines:
            print(line if args.form else f"{form}: {line}")
    return EXIT_OK


def cmd_braid(args) -> int:
    _check_pair(args.q, args.p)
    report = braid_index(args.q, args.p)
    if args.json:
        print(report.model_dump_json(indent=2))
    elif args.explain:
        print(report.value)
        for name, value in report.formulas.items():
            print(f"  {name}: {value}")
        print(f"  used_mirror: {str(report.used_mirror).lower()}")
    else:
        print(report.value)
    return EXIT_OK


def cmd_homfly(args) -> int:
    _check_pair(args.q, args.p)
    poly, used_mirror = homfly(args.q, args.p)
    if args.format == "json":
        print(json.dumps({"q": args.q, "p": args.p, "used_mirror": used_mirror, "terms": poly.to_json()}))
    elif args.format == "latex":
        print(poly.latex())
    else:
        print(poly.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = parse_checks(args.checks)
    report = run_sweep(args.max_q, checks=checks, jobs=args.jobs, chunksize=args.chunksize)
    write_report(report, args.out)
    print(report.summary.model_dump_json())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_fixtures(args) -> int:
    results = run_fixtures(load_fixtures(args.input))
    print(format_table(results))
    if args.out:
        payload = json.dumps([r.model_dump() for r in results], indent=2)
        atomic_write_text(args.out, payload + "\n")
        status(f"📘 Fixture results written to {args.out}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


# ==============================
# Parser
# ==============================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twobridge",
        description="Invariants of rational (two-bridge) links b(q, p).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    expand = sub.add_parser("expand", help="continued-fraction forms of p/q")
    expand.add_argument("fraction", help="reduced fraction p/q")
    expand.add_argument("--form", choices=FORMS, help="print one form only")
    expand.add_argument("--json", action="store_true")
    expand.set_defaults(handler=cmd_expand)

    braid = sub.add_parser("braid", help="braid index of b(q, p)")
    braid.add_argument("q", type=int)
    braid.add_argument("p", type=int)
    braid.add_argument("--explain", action="store_true", help="show every formula")
    braid.add_argument("--json", action="store_true")
    braid.set_defaults(handler=cmd_braid)

    poly = sub.add_parser("homfly", help="HOMFLY polynomial of b(q, p)")
    poly.add_argument("q", type=int)
    poly.add_argument("p", type=int)
    poly.add_argument("--format", choices=("text", "json", "latex"), default="text")
    poly.set_defaults(handler=cmd_homfly)

    verify = sub.add_parser("verify", help="cross-check every formula over a range of links")
    verify.add_argument("--max-q", type=int, default=config.TWOBRIDGE_MAX_Q)
    verify.add_argument("--checks", help="comma-separated subset of checks")
    verify.add_argument("--out", default=config.TWOBRIDGE_REPORT_PATH)
    verify.add_argument("--jobs", type=int, default=config.TWOBRIDGE_JOBS, help="0 means one per CPU")
    verify.add_argument("--chunksize", type=int, default=config.TWOBRIDGE_CHUNKSIZE)
    verify.set_defaults(handler=cmd_verify)

    fixtures = sub.add_parser("fixtures", help="compare against a table of known invariants")
    fixtures.add_argument("--input", default=config.TWOBRIDGE_FIXTURES_PATH)
    fixtures.add_argument("--out", help="write the results as JSON")
    fixtures.set_defaults(handler=cmd_fixtures)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE

    try:
        return args.handler(args)
    except (UsageError, DomainError) as e:
        status(f"❌ {e}", always=True)
        return EXIT_USAGE
    except ReportIOError as e:
        status(f"❌ {e}", always=True)
        return EXIT_IO
    except InvariantViolation as e:
        status(f"❌ {e}", always=True)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
