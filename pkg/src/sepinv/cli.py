"""``sepinv`` command line.

Exit codes: 0 success, 2 mathematically negative result (the report is still
written), 1 usage or budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .acceptance import CRITERION_KEYS
from .blocks import BudgetExceeded
from .config import DEFAULT_SEED, ConfigError, RunConfig
from .report import render_text
from . import commands

EXIT_OK, EXIT_USAGE, EXIT_NEGATIVE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _join_point_values(argv: list[str]) -> list[str]:
    """Let ``--v -1,0,1`` through; argparse would read ``-1,0,1`` as an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--v", "--w"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _add_common(p: argparse.ArgumentParser) -> None:
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="print the JSON report")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="print a text summary (default)")
    p.add_argument("--out", help="write JSON here (bound writes the certificate)")
    p.add_argument("--workers", type=int, default=1, help="processes for subset checks")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sepinv",
        description="Certified degree bounds for separating invariants of finite abelian groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="smallest degree certified by condition (*)")
    p.add_argument("--group", required=True, help="e.g. C3xC3")
    p.add_argument("--field", default="Q", help="Q, R, C or units:k1,k2,...")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--degree", type=int, help="check this single degree only")
    p.add_argument("--figure", help="save a failing-subsets-per-degree chart")
    _add_common(p)

    p = sub.add_parser("atoms", help="enumerate irreducible product-one sequences")
    p.add_argument("--group", required=True)
    p.add_argument("--max-length", type=int, help="default |G|, which is exhaustive")
    p.add_argument("--figure", help="save an atom length histogram")
    _add_common(p)

    p = sub.add_parser("witness", help="check a bundled separation witness")
    p.add_argument("--preset", required=True, choices=["c4", "s3", "cp", "sec6"])
    p.add_argument("--p", type=int, default=3, help="prime for the cp preset")
    p.add_argument("--degree", type=int, help="first degree to test")
    _add_common(p)

    p = sub.add_parser("separate", help="do invariants of degree <= d separate v and w")
    p.add_argument("--group", required=True)
    p.add_argument("--field", default="Q")
    p.add_argument("--v", required=True, help="comma separated fractions, one per group element")
    p.add_argument("--w", required=True)
    p.add_argument("--degree", type=int)
    _add_common(p)

    p = sub.add_parser("decompose", help="write a product-one sequence over S")
    p.add_argument("--group", required=True)
    p.add_argument("sequence", help='"2*(1,0)+1*(1,1)" or sparse JSON {"index": value}')
    _add_common(p)

    p = sub.add_parser("reproduce", help="run every acceptance check")
    p.add_argument(
        "--only", action="append", choices=CRITERION_KEYS, metavar="KEY",
        help=f"restrict to a criterion (repeatable): {', '.join(CRITERION_KEYS)}",
    )
    _add_common(p)
    return parser


def _config(args) -> RunConfig:
    extra = {}
    for key in ("preset", "p", "v", "w", "sequence", "only"):
        value = getattr(args, key, None)
        if value is not None:
            extra[key] = value
    if args.command != "witness" or args.preset != "cp":
        extra.pop("p", None)
    max_degree = getattr(args, "max_degree", None) or getattr(args, "max_length", None)
    return RunConfig.from_env(
        args.command,
        group=getattr(args, "group", None),
        field=getattr(args, "field", None),
        max_degree=max_degree,
        degree=getattr(args, "degree", None),
        workers=args.workers,
        out=args.out,
        seed=args.seed,
        extra=extra,
    )


def _figure(args, report) -> None:
    path = getattr(args, "figure", None)
    if not path:
        return
    from . import figures

    data = report.result
    if args.command == "bound":
        figures.plot_degree_trail(data["trail"], f"{data['group']} over {data['field']}", path)
    elif args.command == "atoms":
        counts = {int(k): v for k, v in data["length_counts"].items()}
        figures.plot_atom_lengths(counts, f"atoms of {data['group']}", path)


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_point_values(argv))
    try:
        config = _config(args)
        runner = {
            "atoms": commands.run_atoms,
            "witness": commands.run_witness,
            "separate": commands.run_separate,
            "decompose": commands.run_decompose,
            "reproduce": commands.run_reproduce,
        }
        payload = None
        if args.command == "bound":
            report, payload = commands.run_bound(config)
        else:
            report = runner[args.command](config)
    except (commands.UsageError, ConfigError, ValueError) as exc:
        print(f"sepinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"sepinv: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if not args.timing:
        report.timing = None
    if args.out:
        out = payload if payload is not None else report.to_json()
        Path(args.out).write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
    _figure(args, report)
    if args.fmt == "json":
        sys.stdout.write(report.dumps())
    else:
        sys.stdout.write(render_text(report.to_json()))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
