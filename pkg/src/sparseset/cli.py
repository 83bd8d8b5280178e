"""Command-line front end: ``sparseset {check,fuzz,solve,bench}``.

Exit codes: 0 success, 1 a check found a violation or the problem is
unsatisfiable, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import bench, oracle, solver
from .mutants import MUTANTS

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _impl(name):
    return oracle.REFERENCE if name is None else MUTANTS[name]


def cmd_check(args, out) -> int:
    impl = _impl(args.mutant)
    if args.script:
        try:
            with open(args.script) as fp:
                script = oracle.OpScript.from_text(fp.read())
            bad = oracle.run_script(script, impl)
        except OSError as exc:
            print(f"error: cannot read script: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except oracle.ScriptError as exc:
            print(f"error: ill-formed script {args.script}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if bad is None:
            print(f"Checking {args.script} ({len(script)} ops, n={script.n}) ... OK", file=out)
            return EXIT_OK
        print(f"Checking {args.script} ... ERROR", file=out)
        print(bad.describe(), file=out)
        return EXIT_FAIL

    result = oracle.exhaustive_suite(args.max_n, args.max_len, impl)
    for event, labels in oracle.CHECKS.items():
        for label in labels:
            status = "ERROR" if (event, label) in result.failures else "OK"
            print(f"Checking {event}_pi_{label} ... {status}", file=out)
    print(
        f"{result.scripts} scripts, n <= {args.max_n}, length <= {args.max_len}, "
        f"implementation {impl.name}: {len(result.failures)} failed checks",
        file=out,
    )
    for violation, script in result.failures.values():
        print(f"\ncounterexample (n={script.n}): {', '.join(map(str, script.ops)) or '<empty>'}", file=out)
        print(violation.describe(), file=out)
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_fuzz(args, out) -> int:
    impl = _impl(args.mutant)
    status = EXIT_OK
    for seed in range(args.seed, args.seed + args.seeds):
        script = oracle.random_script(seed, args.n, args.len, args.max_depth)
        bad = oracle.run_script(script, impl)
        if bad is None:
            print(f"seed {seed}: n={args.n}, {len(script)} ops ... OK", file=out)
        else:
            print(f"seed {seed}: n={args.n} ... ERROR", file=out)
            print(bad.describe(), file=out)
            status = EXIT_FAIL
    return status


def cmd_solve(args, out) -> int:
    csp = solver.nqueens(args.nqueens)
    if args.count:
        print(solver.solve(csp, "count", debug=args.debug), file=out)
        return EXIT_OK
    sol = solver.solve(csp, "first", debug=args.debug)
    if sol is None:
        print("unsat", file=out)
        return EXIT_FAIL
    print(" ".join(map(str, sol)), file=out)
    k = args.nqueens
    if k <= 16:
        for col in sol:
            print(" ".join("Q" if c == col else "." for c in range(k)), file=out)
    return EXIT_OK


def cmd_bench(args, out) -> int:
    report = bench.BenchReport()
    for n in args.n:
        report.extend(bench.bench_ops(n, args.ops, args.seed, args.repeats))
    big = max(args.n)
    for k in args.removed:
        if k < big:
            report.extend(bench.bench_restore(big, k, args.seed, args.repeats))
    for n in args.n:
        if n != big and args.removed and min(args.removed) < n:
            report.extend(bench.bench_restore(n, min(args.removed), args.seed, args.repeats))
    print(report.table(), file=out)
    if args.csv:
        try:
            with open(args.csv, "w", newline="") as fp:
                report.write_csv(fp)
        except OSError as exc:
            print(f"error: cannot write {args.csv}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _natural(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sparseset", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="exhaustive lockstep check, or replay one script file")
    c.add_argument("--max-n", type=_positive, default=3)
    c.add_argument("--max-len", type=_natural, default=5)
    c.add_argument("--script", metavar="FILE")
    c.add_argument("--mutant", choices=sorted(MUTANTS), help="check a seeded-bug variant instead")
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("fuzz", help="random guard-respecting scripts")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--seeds", type=_positive, default=1, help="number of consecutive seeds")
    f.add_argument("--n", type=_positive, default=64)
    f.add_argument("--len", type=_natural, default=1000)
    f.add_argument("--max-depth", type=_natural, default=8)
    f.add_argument("--mutant", choices=sorted(MUTANTS))
    f.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("solve", help="N-queens via labeling over sparse-set domains")
    s.add_argument("--nqueens", type=_positive, required=True, metavar="K")
    s.add_argument("--count", action="store_true", help="count all solutions")
    s.add_argument("--debug", action="store_true", help="check domain invariants at every node")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="timing of contains/remove/restore vs baselines")
    b.add_argument("--n", type=_positive, nargs="+", default=[2**10, 2**14, 2**18])
    b.add_argument("--ops", type=_positive, default=100_000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=_positive, default=5)
    b.add_argument("--removed", type=_natural, nargs="*", default=[10, 1000, 100_000])
    b.add_argument("--csv", metavar="PATH")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return args.func(args, out)


if __name__ == "__main__":
    sys.exit(main())
