"""Command line: ``geotraj verify`` and ``geotraj inspect``.

Exit codes: 0 when everything passed, 1 when a proposition was falsified,
2 for usage errors (bad flags, malformed input, V = 0).
"""

from __future__ import annotations

import argparse
import json
import sys

from .minkowski import Metric
from .verify import (
    SUITES,
    ConfigError,
    RunConfig,
    inspect_point,
    inspect_text,
    parse_gamma,
    run_suites,
)

EXIT_PASS = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _signature(text: str) -> tuple[int, int]:
    try:
        g = Metric.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return (g.p, g.q)


def _suites(text: str) -> tuple[str, ...]:
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = [s for s in names if s not in SUITES]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown suites {bad}; choose from {','.join(SUITES)}")
    return names


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="geotraj", description="Verify the geometry of the space of geodesics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the randomized property suites")
    v.add_argument("--signature", type=_signature, default=(3, 1), help="metric signature p,q (default 3,1)")
    v.add_argument("--mode", choices=("exact", "float"), default="exact")
    v.add_argument("--samples", type=_positive_int, default=1000)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--tol", type=float, default=1e-6, help="comparison tolerance in float mode")
    v.add_argument("--suites", type=_suites, default=SUITES, help="comma separated subset of " + ",".join(SUITES))
    v.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    v.add_argument("--timings", action="store_true", help="include per-suite wall time in the JSON")
    v.add_argument("--workers", type=_positive_int, default=1, help="run suites in this many processes")
    v.add_argument("--quiet", action="store_true", help="print only the overall verdict")

    i = sub.add_parser("inspect", help="dump every computed structure at one geodesic")
    i.add_argument("--gamma", required=True, help='"x1,...,xn;v1,...,vn" (integers, p/q or decimals)')
    i.add_argument("--signature", type=_signature, default=(3, 1))
    i.add_argument("--json", metavar="PATH", help="write the data as JSON ('-' for stdout)")
    return parser


def _write_json(path: str, data: dict) -> None:
    text = json.dumps(data, indent=2, sort_keys=False) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_verify(args) -> int:
    cfg = RunConfig(
        signature=args.signature,
        mode=args.mode,
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        suites=args.suites,
    )
    try:
        report = run_suites(cfg, workers=args.workers)
    except ConfigError as exc:
        print(f"geotraj verify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        _write_json(args.json, report.to_json(timings=args.timings))
    if args.json != "-":
        text = report.to_text()
        print(text.splitlines()[-1] if args.quiet else text)
    return EXIT_PASS if report.passed else EXIT_FALSIFIED


def cmd_inspect(args) -> int:
    g = Metric(*args.signature)
    try:
        gamma = parse_gamma(args.gamma, g)
        info = inspect_point(g, gamma)
    except (ConfigError, ValueError) as exc:
        print(f"geotraj inspect: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"geotraj inspect: falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    if args.json:
        _write_json(args.json, info)
    if args.json != "-":
        print(inspect_text(info))
    return EXIT_PASS


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    return cmd_inspect(args)


if __name__ == "__main__":
    raise SystemExit(main())
