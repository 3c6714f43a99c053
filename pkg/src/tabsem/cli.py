"""Command line entry point.

Exit codes: 0 success, 1 input or flag error (and failed axiom checks),
2 computational failure (no convergence, column budget exceeded).
"""
from __future__ import annotations

import argparse
import sys

from . import tables
from .errors import NoConvergenceError, ResourceError, TabsemError
from .graphio import parse_graph, parse_morphism, render_apsp
from .scalars import check_semiring_axioms, format_value, parse_law, parse_semiring
from .semimatrix import apsp_with_addresses


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_apsp(args, out) -> int:
    g = parse_graph(_read(args.graph))
    if args.tie_epsilon < 0:
        raise UsageError("--tie-epsilon must be >= 0")
    result = apsp_with_addresses(g, tie_epsilon=args.tie_epsilon)
    out.write(render_apsp(g, result, args.format))
    return 0


def cmd_table(args, out) -> int:
    spec = parse_semiring(args.semiring)
    law = parse_law(args.law) if args.law else None
    lhs = tables.parse_table(_read(args.lhs))
    if args.op in ("pointwise", "convolution"):
        if args.rhs is None:
            raise UsageError(f"{args.op} needs --rhs")
        rhs = tables.parse_table(_read(args.rhs))
        if args.op == "pointwise":
            result = tables.pointwise(lhs, rhs, law or spec.add)
        else:
            if law is not None:
                raise UsageError("convolution takes its laws from --semiring, not --law")
            result = tables.convolution(lhs, rhs, spec)
        out.write(tables.render_table(result))
    elif args.op == "mass":
        out.write(format_value(tables.mass(lhs, law or spec.add)) + "\n")
    else:
        h = parse_morphism(_read(args.morphism)) if args.morphism else tables.erase_alphabet(lhs)
        out.write(tables.render_table(tables.map_indices(lhs, h, law or spec.add)))
    return 0


def cmd_axioms(args, out) -> int:
    spec = parse_semiring(args.semiring)
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    report = check_semiring_axioms(spec, args.samples, args.seed, args.tol)
    out.write(f"# {spec.name}: {args.samples} samples, seed {args.seed}, tol {format_value(args.tol)}\n")
    out.write(str(report) + "\n")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tabsem", description="Tables over semirings and shortest paths with addresses.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("apsp", help="all-pairs shortest paths with path addresses")
    p.add_argument("--graph", required=True, help="graph file ('-' for stdin)")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--tie-epsilon", type=float, default=0.0)
    p.set_defaults(run=cmd_apsp)

    p = sub.add_parser("table", help="operations on table files")
    p.add_argument("op", choices=("pointwise", "convolution", "mass", "project"))
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs")
    p.add_argument("--semiring", required=True)
    p.add_argument("--law", help="override the semiring's sum, e.g. min, max, log:a=2")
    p.add_argument("--morphism", help="letter map file for 'project' (default: erase every letter)")
    p.set_defaults(run=cmd_table)

    p = sub.add_parser("axioms", help="check the semiring identities on random samples")
    p.add_argument("--semiring", required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=0.0)
    p.set_defaults(run=cmd_axioms)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except UsageError as exc:
        print(f"tabsem: {exc}", file=sys.stderr)
        return 1
    except (NoConvergenceError, ResourceError) as exc:
        print(f"tabsem: {exc}", file=sys.stderr)
        return 2
    except (TabsemError, OSError) as exc:
        print(f"tabsem: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
