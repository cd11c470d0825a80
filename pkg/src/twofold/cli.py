"""Command-line front end: demos, benchmarks, and a one-shot evaluator.

The CLI contains no numeric logic of its own; it parses arguments,
dispatches into the library, and prints ``value[error]`` renderings at
six significant digits (override with ``--digits``).  Usage problems
exit nonzero with a diagnostic on stderr; numeric specials (inf, nan)
are valid printed results, never errors.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import arith, bench, demos
from .fp_core import format_twofold, renormalize, two_diff, two_prod, two_sum

__all__ = ["main", "format_twofold"]


# eval accepts each op at fixed operand counts: a twofold is two numbers,
# a dotted (plain) operand is one.  Binary ops given two dotted numbers
# promote to the exact-transform path, mirroring the library shape rules.
_EVAL_OPS = {
    "tadd": {4: lambda a, b, c, d: arith.tadd((a, b), (c, d)),
             2: lambda a, b: two_sum(a, b)},
    "tsub": {4: lambda a, b, c, d: arith.tsub((a, b), (c, d)),
             2: lambda a, b: two_diff(a, b)},
    "tmul": {4: lambda a, b, c, d: arith.tmul((a, b), (c, d)),
             2: lambda a, b: two_prod(a, b)},
    "tdiv": {4: lambda a, b, c, d: arith.tdiv((a, b), (c, d)),
             2: lambda a, b: arith.tdiv0(a, b)},
    "tadd1": {3: lambda a, b, c: arith.tadd1((a, b), c)},
    "tsub1": {3: lambda a, b, c: arith.tsub1((a, b), c)},
    "tmul1": {3: lambda a, b, c: arith.tmul1((a, b), c)},
    "tdiv1": {3: lambda a, b, c: arith.tdiv1((a, b), c)},
    "tadd1r": {3: lambda a, b, c: arith.tadd1r(a, (b, c))},
    "tsub1r": {3: lambda a, b, c: arith.tsub1r(a, (b, c))},
    "tmul1r": {3: lambda a, b, c: arith.tmul1r(a, (b, c))},
    "tdiv1r": {3: lambda a, b, c: arith.tdiv1r(a, (b, c))},
    "tsqrt": {2: lambda a, b: arith.tsqrt((a, b)),
              1: lambda a: arith.tsqrt0(a)},
    "tsqrt0": {1: lambda a: arith.tsqrt0(a)},
    "psqrt": {2: lambda a, b: arith.psqrt((a, b))},
    "tdiv0": {2: lambda a, b: arith.tdiv0(a, b)},
    "two_sum": {2: lambda a, b: two_sum(a, b)},
    "two_diff": {2: lambda a, b: two_diff(a, b)},
    "two_prod": {2: lambda a, b: two_prod(a, b)},
    "pmul": {4: lambda a, b, c, d: arith.pmul((a, b), (c, d))},
    "pdiv": {4: lambda a, b, c, d: arith.pdiv((a, b), (c, d))},
    "padd": {4: lambda a, b, c, d: arith.padd((a, b), (c, d)),
             2: lambda a, b: two_sum(a, b)},
    "psub": {4: lambda a, b, c, d: arith.psub((a, b), (c, d)),
             2: lambda a, b: two_diff(a, b)},
    "pmul_coupled": {4: lambda a, b, c, d: arith.pmul_coupled((a, b), (c, d)),
                     2: lambda a, b: two_prod(a, b)},
    "pdiv_coupled": {4: lambda a, b, c, d: arith.pdiv_coupled((a, b), (c, d)),
                     2: lambda a, b: arith.tdiv0(a, b)},
    "padd1": {3: lambda a, b, c: arith.padd1((a, b), c)},
    "psub1": {3: lambda a, b, c: arith.psub1((a, b), c)},
    "pmul1": {3: lambda a, b, c: arith.pmul1((a, b), c)},
    "pdiv1": {3: lambda a, b, c: arith.pdiv1((a, b), c)},
    "padd1r": {3: lambda a, b, c: arith.padd1r(a, (b, c))},
    "psub1r": {3: lambda a, b, c: arith.psub1r(a, (b, c))},
    "pmul1r": {3: lambda a, b, c: arith.pmul1r(a, (b, c))},
    "pdiv1r": {3: lambda a, b, c: arith.pdiv1r(a, (b, c))},
    "renormalize": {2: lambda a, b: renormalize((a, b))},
    "tneg": {2: lambda a, b: arith.tneg((a, b))},
    "tabs": {2: lambda a, b: arith.tabs((a, b))},
}

_DEMOS = {
    "sum100h": lambda args: demos.sum100h(args.fmt, args.hours),
    "gauss": lambda args: demos.gauss_solve(args.fmt, args.case),
    "quadratic": lambda args: demos.quadratic_roots(args.fmt, args.c_spec),
}


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="twofold",
        description="twofold arithmetic: demos, benchmarks, one-shot evaluation",
    )
    sub = top.add_subparsers(dest="command", required=True)

    d = sub.add_parser("demo", help="run an application study and print its log")
    d.add_argument("name", choices=sorted(_DEMOS))
    d.add_argument("--format", dest="fmt", choices=["f32", "f64"], default="f64")
    d.add_argument("--hours", type=int, default=100,
                   help="sum100h: hours of tenth-second steps to accumulate")
    d.add_argument("--case", choices=["well3", "ill3"], default="well3",
                   help="gauss: which 3x3 system to solve")
    d.add_argument("--c", dest="c_spec", default="1e-8",
                   help="quadratic: constant coefficient, e.g. 1e-8 or 1+1e-8")
    d.add_argument("--digits", type=int, default=6)

    b = sub.add_parser("bench", help="measure kernel throughput vs plain loops")
    b.add_argument("--ops", help="comma-separated kernel names (default: all)")
    b.add_argument("--sizes", help="comma-separated size classes (default: all)")
    b.add_argument("--format", dest="formats",
                   help="comma-separated formats f32,f64 (default: both)")
    b.add_argument("--csv", help="also write records to this CSV path")
    b.add_argument("--reps", type=int, default=5)

    e = sub.add_parser("eval", help="apply one operation and print value[error]")
    e.add_argument("op")
    e.add_argument("numbers", nargs="*")
    e.add_argument("--format", dest="fmt", choices=["f32", "f64"], default="f64")
    e.add_argument("--digits", type=int, default=6)
    return top


def _split(text):
    return None if text is None else [s for s in text.split(",") if s]


def _cmd_demo(args) -> int:
    report = _DEMOS[args.name](args)
    print(report.render(args.digits), end="")
    return 0


def _cmd_bench(args) -> int:
    plan = bench.make_plan(_split(args.ops), _split(args.formats),
                           _split(args.sizes))
    records = bench.run_bench(plan, repetitions=args.reps)
    print(bench.format_table(records), end="")
    if args.csv:
        bench.write_csv(records, args.csv)
    return 0


def _cmd_eval(args) -> int:
    table = _EVAL_OPS.get(args.op)
    if table is None:
        raise ValueError("unknown operation %r (choose from: %s)"
                         % (args.op, ", ".join(sorted(_EVAL_OPS))))
    try:
        vals = [float(s) for s in args.numbers]
    except ValueError:
        raise ValueError("operands must be numbers, got %r" % (args.numbers,))
    fn = table.get(len(vals))
    if fn is None:
        counts = " or ".join(str(c) for c in sorted(table))
        raise ValueError("%s takes %s numbers, got %d"
                         % (args.op, counts, len(vals)))
    if args.fmt == "f32":
        vals = [np.float32(v) for v in vals]
    v, e = fn(*vals)
    print(format_twofold(v, e, args.digits))
    return 0


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    run = {"demo": _cmd_demo, "bench": _cmd_bench, "eval": _cmd_eval}[args.command]
    try:
        return run(args)
    except ValueError as exc:
        print("twofold: error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
