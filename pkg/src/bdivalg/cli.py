"""Command line front end: ``bdivalg <kind> scenario.json``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .scenario import (
    EXIT_OPERATION,
    EXIT_PARSE,
    KINDS,
    RunOptions,
    ScenarioError,
    parse_document,
    run_document,
)

log = logging.getLogger("bdivalg")

# kinds that can run from defaults alone
_OPTIONAL_SCENARIO = {"example33", "suite"}


def _precision(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational or decimal number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("precision must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of standard output")
    common.add_argument("--seed", type=int, help="override the scenario seed")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for suite fan-out")
    common.add_argument("--degree-bound", type=int, help="override the scenario's main degree bound")
    common.add_argument("--precision", type=_precision, default=Fraction(1, 10 ** 12),
                        help="enclosure width for reported irrational quantities (default 1e-12)")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-determinism)")
    common.add_argument("--plot", help="write a static plot (plcone, fingen, diophantine)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="bdivalg",
        description="Exact checks for superadditive divisorial systems, straightenings and their generators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind, parents=[common], help=f"run a {kind} scenario")
        nargs = "?" if kind in _OPTIONAL_SCENARIO else None
        p.add_argument("scenario", nargs=nargs, help="scenario JSON file ('-' for standard input)")
    p = sub.add_parser("run", parents=[common], help="run a scenario, dispatching on its 'kind' field")
    p.add_argument("scenario")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    kind = None if args.command == "run" else args.command
    try:
        if args.scenario is None:
            doc = {"kind": kind}
        else:
            try:
                text = _read(args.scenario)
            except OSError as exc:
                print(f"bdivalg: cannot read {args.scenario}: {exc.strerror}", file=sys.stderr)
                return EXIT_PARSE
            doc = parse_document(text, args.scenario)
            if kind is not None:
                doc.setdefault("kind", kind)
        opts = RunOptions(seed=args.seed, jobs=args.jobs, degree_bound=args.degree_bound,
                          precision=args.precision, timings=args.timings, plot=args.plot)
        report = run_document(doc, kind, opts)
    except ScenarioError as exc:
        print(f"bdivalg: {exc}", file=sys.stderr)
        return exc.exit_code
    except RuntimeError as exc:  # plotting without matplotlib and similar
        print(f"bdivalg: {exc}", file=sys.stderr)
        return EXIT_OPERATION
    text = report.dumps(with_timings=args.timings)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    log.info("verdicts: %s", json.dumps(report.verdicts, sort_keys=True))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
