"""Command line interface: ``oswnet <command> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys

from .errors import ParameterError
from .harness import DEFAULT_NS, EXIT_INVALID, ExperimentConfig, parse_n_list, parse_vertex, run


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, n_required=True, n_help="size parameter n") -> None:
    p.add_argument("--n", required=n_required, help=n_help)
    p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    p.add_argument("--json", dest="json_path", help="write JSON output to this file instead of stdout")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--strict", action="store_true", help="exit 2 when a route is not delivered")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oswnet", description="Octahedral small-world graphs: generate, route, census, verify.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="dump the base graph (and optionally a sampled OSW overlay) as JSON")
    _common(p)
    p.add_argument("--osw", action="store_true", help="include sampled long-range edges")

    p = sub.add_parser("route", help="greedy route on a sampled OSW graph")
    _common(p)
    p.add_argument("--src", required=True, help='source vertex "x,y,z"')
    p.add_argument("--dst", required=True, help='target vertex "x,y,z"')

    p = sub.add_parser("census", help="directed C3 census of a sampled OSW graph")
    p.add_argument("--n")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", dest="csv_path")
    p.add_argument("--json", dest="json_path")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--exact-n1", action="store_true", help="print the exact n=1 expectation oracle")

    p = sub.add_parser("sphere-check", help="edge lengths after projection onto a sphere")
    p.add_argument("--n", required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--r", type=float, default=None, help="radius (default: the largest admissible one)")
    p.add_argument("--json", dest="json_path")

    p = sub.add_parser("bounds", help="closed-form bounds for a given n")
    p.add_argument("--n", required=True)
    p.add_argument("--json", dest="json_path")

    p = sub.add_parser("experiment", help="Monte Carlo sweeps writing CSV rows")
    p.add_argument("kind", choices=("routing", "census"))
    _common(p, n_required=False, n_help="comma-separated list of n (default 1,2,4,8,16,32)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--csv", dest="csv_path")
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    ns = parse_n_list(args.n) if getattr(args, "n", None) else []
    config = ExperimentConfig(command=args.command, ns=ns, seed=getattr(args, "seed", 0))
    for name in ("trials", "lam", "r", "osw", "exact_n1", "csv_path", "json_path", "threads", "strict"):
        if hasattr(args, name):
            setattr(config, name, getattr(args, name))
    if args.command == "route":
        config.src, config.dst = parse_vertex(args.src), parse_vertex(args.dst)
    if args.command == "experiment":
        config.experiment = args.kind
        if not ns:
            config.ns = list(DEFAULT_NS)
    return config


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help (0) or a usage error (1)
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = config_from_args(args)
    except ParameterError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
