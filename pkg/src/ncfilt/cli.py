"""Command-line front end: ``ncfilt <subcommand> [options]``."""

import argparse
import json
import random
import sys
import time

from . import __version__

USAGE_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


class _Usage(Exception):
    pass


def _session_args(p, expr=True):
    p.add_argument("--n", type=int, default=2, help="number of generators x1..xn")
    p.add_argument("--d", type=int, default=2, help="truncation: compute modulo F^(d+1)")
    p.add_argument("--g", default=None, help="localize at this polynomial, e.g. 'x1' or 'x1*x4 - x2*x3'")
    p.add_argument("--format", choices=("text", "json"), default="text")
    if expr:
        p.add_argument("expr", help="expression, e.g. 'x2*inv(x1)'")


def build_parser():
    top = _Parser(prog="ncfilt", description="Exact computation in NC-nilpotent truncations.")
    top.add_argument("--version", action="version", version=f"ncfilt {__version__}")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("nf", help="evaluate an expression to its normal form")
    _session_args(p)
    p.add_argument("--trace", action="store_true", help="print each ordered-symbol swap (polynomial sessions)")
    p.add_argument("--fraction", action="store_true", help="print localized results as left fractions")

    p = sub.add_parser("ord", help="NC-order of an expression")
    _session_args(p)

    p = sub.add_parser("hall", help="list the Lyndon basis of the free Lie algebra")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--max-deg", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("dims", help="bracket-monomial and graded dimension tables")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--max-deg", type=int, default=None, help="also tabulate gr^k by word degree up to this")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("invert", help="two-sided inverse in the localization at --g")
    _session_args(p)
    p.add_argument("--fraction", action="store_true")

    p = sub.add_parser("matinv", help="invert a square matrix over the localization")
    p.add_argument("--tautological", type=int, default=None, metavar="M",
                   help="the M x M matrix of generators x1..x(M^2), localized at its determinant")
    p.add_argument("--rows", default=None, help="entries, rows separated by ';' and columns by ','")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--g", default=None)
    p.add_argument("--route", choices=("rational", "fraction"), default="rational")
    p.add_argument("--verify", action="store_true", help="check both products against the identity")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("cocycle-check", help="gluing checks for NC projective space")
    p.add_argument("--n", type=int, default=2, help="dimension of the projective space")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--line-bundle", action="store_true", help="also check the tautological line bundle cocycle")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("selftest", help="run the acceptance suite and golden fixtures")
    p.add_argument("--criteria", default=None, help="comma-separated subset, e.g. '1,2,10'")
    p.add_argument("--fixtures", default=None, help="directory of golden JSON files")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("bench", help="multiplication timings over an (n, d, degree) grid")
    p.add_argument("--n", default="1,2,3")
    p.add_argument("--d", default="1,2,3")
    p.add_argument("--max-deg", type=int, default=3)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return top


# -- helpers ---------------------------------------------------------------------

def _session(args, trace=None):
    from .parsing import Session
    return Session(args.n, args.d, args.g, trace=trace)


def _emit(args, text, obj):
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _value(args, v, fraction=False):
    from . import serialize
    from .parsing import to_text
    if args.format == "json":
        return serialize.to_obj(v)
    return to_text(v, rational=not fraction)


# -- subcommands -----------------------------------------------------------------

def cmd_nf(args):
    from .parsing import evaluate, parse
    lines = []
    S = _session(args, trace=lines.append if args.trace else None)
    v = evaluate(parse(args.expr), S)
    if args.trace and args.format == "text":
        for ln in lines:
            print(ln)
    out = _value(args, v, args.fraction)
    print(json.dumps(out, sort_keys=True) if args.format == "json" else out)
    return 0


def cmd_ord(args):
    from .localization import LeftFraction, to_rational_normal_form
    from .parsing import evaluate, parse
    v = evaluate(parse(args.expr), _session(args))
    if isinstance(v, LeftFraction):
        v = to_rational_normal_form(v)
    o = v.nc_order()
    text = "inf" if o == float("inf") else str(o)
    _emit(args, text, {"ord": None if o == float("inf") else o})
    return 0


def cmd_hall(args):
    from .lie import lie_basis
    if args.n < 1 or args.max_deg < 1:
        raise _Usage("need --n >= 1 and --max-deg >= 1")
    basis = lie_basis(args.n, args.max_deg)
    names = [basis.name(i) for i in range(len(basis))]
    words = ["".join(f"x{a + 1}" for a in w) for w in basis.words]
    text = "\n".join(f"{i + 1:>3}  deg {len(w)}  {nm}" for i, (w, nm) in enumerate(zip(basis.words, names)))
    _emit(args, text, {"basis": [{"bracket": nm, "word": wd} for nm, wd in zip(names, words)]})
    return 0


def cmd_dims(args):
    from .normal import graded_count, q_dimension
    qs = [q_dimension(args.n, k) for k in range(args.d + 1)]
    lines = ["k  dim Q^k"] + [f"{k}  {q}" for k, q in enumerate(qs)]
    obj = {"n": args.n, "q_dimension": qs}
    if args.max_deg is not None:
        table = [[graded_count(args.n, k, m) for m in range(args.max_deg + 1)] for k in range(args.d + 1)]
        lines.append("")
        lines.append("gr^k by word degree m = 0.." + str(args.max_deg))
        for k, row in enumerate(table):
            lines.append(f"k={k}: " + " ".join(str(x) for x in row))
        obj["graded_count"] = table
    _emit(args, "\n".join(lines), obj)
    return 0


def cmd_invert(args):
    from .parsing import EvalError, evaluate, parse
    if args.g is None:
        raise EvalError("inversion requires a localization context")
    S = _session(args)
    v = S.invert(evaluate(parse(args.expr), S))
    out = _value(args, v, args.fraction)
    print(json.dumps(out, sort_keys=True) if args.format == "json" else out)
    return 0


def _matrix_from_args(args):
    from .acceptance import tautological
    from .parsing import Session, evaluate, parse
    if args.tautological is not None:
        if args.rows:
            raise _Usage("give either --tautological or --rows")
        ctx, M = tautological(args.tautological, args.d)
        return ctx, M
    if not args.rows:
        raise _Usage("matinv needs --tautological M or --rows")
    if args.g is None or args.n is None:
        raise _Usage("--rows needs --n and --g")
    S = Session(args.n, args.d, args.g)
    M = [[evaluate(parse(e), S) for e in row.split(",")] for row in args.rows.split(";")]
    if any(len(r) != len(M) for r in M):
        raise _Usage("matrix must be square")
    return S.ctx, M


def cmd_matinv(args):
    from . import serialize
    from .localization import (identity_matrix, is_identity_product, matmul, matrix_invert,
                               matrix_invert_rational, to_rational_normal_form)
    from .parsing import to_text
    ctx, M = _matrix_from_args(args)
    t0 = time.perf_counter()
    if args.route == "rational":
        M = [[to_rational_normal_form(ctx.lift(x)) for x in row] for row in M]
        Mi = matrix_invert_rational(ctx, M)
    else:
        Mi = matrix_invert(M, ctx, route="fraction")
    dt = time.perf_counter() - t0
    status = 0
    obj = {"g": serialize.to_obj(ctx.g), "seconds": round(dt, 3)}
    if args.format == "json":
        obj["inverse"] = [[serialize.to_obj(x) for x in row] for row in Mi]
    else:
        print(f"localized at g = {ctx.g}")
        for i, row in enumerate(Mi):
            for j, x in enumerate(row):
                print(f"C{i + 1}{j + 1} = {to_text(x)}")
        print(f"inverted in {dt:.2f}s")
    if args.verify:
        if args.route == "rational":
            ok = is_identity_product(M, Mi, ctx) and is_identity_product(Mi, M, ctx)
        else:
            ident = identity_matrix(len(M), ctx.one(), ctx.zero())
            ok = matmul(M, Mi, ctx.zero()) == ident and matmul(Mi, M, ctx.zero()) == ident
        obj["verified"] = ok
        if args.format == "text":
            print("M * M^-1 = M^-1 * M = I: " + ("PASS" if ok else "FAIL"))
        status = 0 if ok else 1
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True))
    return status


def cmd_cocycle(args):
    from .geometry import cocycle_check, line_bundle_cocycle
    reports = [cocycle_check(args.n, args.d)]
    if args.line_bundle:
        reports.append(line_bundle_cocycle(args.n, args.d))
    if args.format == "json":
        print(json.dumps([{"name": r.name, "passed": r.passed, "checks": r.checks,
                           "failures": [[lab, None if res is None else str(res)] for lab, res in r.failures]}
                          for r in reports], sort_keys=True))
    else:
        for r in reports:
            print("\n".join(r.lines()))
    return 0 if all(r.passed for r in reports) else 1


def cmd_selftest(args):
    from .acceptance import CRITERIA, run
    nums = None
    if args.criteria:
        try:
            nums = [int(x) for x in args.criteria.split(",")]
        except ValueError:
            raise _Usage("--criteria expects comma-separated integers") from None
        bad = [k for k in nums if k not in CRITERIA]
        if bad:
            raise _Usage(f"unknown criteria {bad}")
    outcomes = run(nums, fixtures=args.fixtures)
    ok = all(o.passed for o in outcomes)
    if args.format == "json":
        print(json.dumps({"passed": ok, "criteria": [
            {"number": o.number, "title": o.title, "passed": o.passed, "checks": o.checks,
             "failures": o.failures, "seconds": round(o.seconds, 3)} for o in outcomes]}, sort_keys=True))
    else:
        for o in outcomes:
            print(o.line())
            for f in o.failures[:10]:
                print(f"    failed: {f}")
        print("selftest: " + ("PASS" if ok else "FAIL"))
    return 0 if ok else 1


def _int_list(s):
    try:
        return [int(x) for x in s.split(",")]
    except ValueError:
        raise _Usage(f"expected comma-separated integers, got {s!r}") from None


def cmd_bench(args):
    from .acceptance import random_nf
    from .normal import algebra
    rng = random.Random(args.seed)
    rows = []
    for n in _int_list(args.n):
        for d in _int_list(args.d):
            algebra(n, d).table00()
            for deg in range(1, args.max_deg + 1):
                pairs = [(random_nf(rng, n, d, deg), random_nf(rng, n, d, deg)) for _ in range(args.reps)]
                t0 = time.perf_counter()
                for a, b in pairs:
                    a * b
                dt = (time.perf_counter() - t0) / args.reps
                rows.append({"n": n, "d": d, "degree": deg, "ms_per_product": round(1000 * dt, 3)})
    text = "\n".join(["   n  d  deg  ms/product"] +
                     [f"{r['n']:>4} {r['d']:>2} {r['degree']:>4}  {r['ms_per_product']:>10.3f}" for r in rows])
    _emit(args, text, {"rows": rows})
    return 0


COMMANDS = {
    "nf": cmd_nf, "ord": cmd_ord, "hall": cmd_hall, "dims": cmd_dims, "invert": cmd_invert,
    "matinv": cmd_matinv, "cocycle-check": cmd_cocycle, "selftest": cmd_selftest, "bench": cmd_bench,
}


def run_command(argv):
    """Run one command; returns the exit code (output goes to stdout/stderr)."""
    from .arith import ArithmeticError_
    from .parsing import EvalError, ParseError
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return USAGE_ERROR
        return COMMANDS[args.command](args)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return USAGE_ERROR
    except ParseError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        if exc.src:
            print(f"  {exc.src}\n  {' ' * exc.pos}^", file=sys.stderr)
        return 1
    except (EvalError, ArithmeticError_, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
