"""Command-line entry point.

Exit status: 0 on success (and when every verification check passes),
1 when a check fails, 2 on usage or input errors, 3 on capacity errors.
Data goes to stdout unless ``--out`` is given; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .boolfun import anf, degree, legendre_variables, sparsity, truth_table_from_arith
from .exceptions import CapacityError
from .experiments import (
    default_results_dir,
    run_figure1,
    run_figure2,
    run_figure3,
    run_nqr_distribution,
)
from .numtheory import generate_sequence, least_qnr, parse_kind, patched_legendre_sequence, sieve_primes
from .seqanalysis import CorrelationQuery, bm_profile, correlation_measure, lattice_level
from .sequence import BitSequence
from .verify import DEFAULTS, SUITES, verify_all

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

KINDS = ["legendre", "liouville", "f2-liouville"]


class UsageError(Exception):
    pass


def _add_kind(parser, required=True):
    parser.add_argument("--kind", choices=KINDS, required=required,
                        help="arithmetic function: Legendre symbol or a Liouville function")
    parser.add_argument("--p", type=int, help="odd prime modulus (Legendre only)")


def _add_out(parser):
    parser.add_argument("--out", help="output file name, placed under --out-dir (default: stdout)")


def _kind(args):
    if args.kind == "legendre" and args.p is None:
        raise UsageError("--kind legendre requires --p")
    if args.kind != "legendre" and args.p is not None:
        raise UsageError(f"--p is only valid with --kind legendre, not {args.kind}")
    try:
        return parse_kind(args.kind, args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _out_path(args) -> Path | None:
    if not getattr(args, "out", None):
        return None
    base = Path(args.out_dir).resolve()
    path = (base / args.out).resolve()
    if base != path and base not in path.parents:
        raise UsageError(f"--out {args.out!r} escapes the output directory {base}")
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _emit_text(args, text: str) -> None:
    path = _out_path(args)
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)
        print(f"wrote {path}", file=sys.stderr)


def _sequence(args, length: int) -> BitSequence:
    if args.input:
        seq = BitSequence.load(args.input)
        if len(seq) < length:
            raise UsageError(f"input has {len(seq)} terms, need {length}")
        return seq
    if not args.kind:
        raise UsageError("give either --kind or --input")
    return generate_sequence(_kind(args), length)


# -- subcommands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.length < 1:
        raise UsageError("--length must be positive")
    if args.patched:
        if args.kind != "legendre" or args.p is None:
            raise UsageError("--patched needs --kind legendre --p P")
        seq = patched_legendre_sequence(args.p, args.length)
    else:
        seq = generate_sequence(_kind(args), args.length)
    if args.format == "ascii":
        _emit_text(args, seq.to_ascii() + "\n")
        return EXIT_OK
    path = _out_path(args)
    if path is None:
        sys.stdout.buffer.write(seq.to_bytes())
    else:
        path.write_bytes(seq.to_bytes())
        print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def cmd_anf(args) -> int:
    if args.report:
        if args.p_max is None:
            raise UsageError("--report needs --p-max")
        return _anf_report(args)
    kind = _kind(args)
    r = args.r
    if r is None:
        if kind.kind != "legendre":
            raise UsageError(f"--r is required for --kind {args.kind}")
        r = legendre_variables(kind.p)
    table = truth_table_from_arith(kind, r, args.c)
    a = anf(table)
    _emit_text(args, a.dump(f"r={r} c={args.c} kind={kind}"))
    print(f"deg={degree(a)} spr={sparsity(a)}", file=sys.stderr)
    return EXIT_OK


def _anf_report(args) -> int:
    from io import StringIO

    from .numtheory import legendre

    buf = StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "r", "class_mod8", "nqr", "c", "deg", "spr"])
    for p in (int(q) for q in sieve_primes(args.p_max - 1) if q > 2):
        r = legendre_variables(p)
        for c in (0, 1):
            a = anf(truth_table_from_arith(legendre(p), r, c))
            writer.writerow([p, r, p % 8, least_qnr(p), c, degree(a), sparsity(a)])
    _emit_text(args, buf.getvalue())
    return EXIT_OK


def cmd_lcprofile(args) -> int:
    seq = _sequence(args, args.length)
    prof = bm_profile(seq, args.length)
    _emit_text(args, prof.to_csv())
    return EXIT_OK


def cmd_lattice(args) -> int:
    seq = _sequence(args, args.n)
    res = lattice_level(seq, args.n)
    _emit_text(args, f"N={res.N} level={res.level}\n")
    return EXIT_OK


def cmd_corr(args) -> int:
    shifts = None
    if args.shifts:
        shifts = tuple(int(x) for x in args.shifts.split(","))
    try:
        query = CorrelationQuery(args.k, args.n, args.budget, shifts)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    seq = _sequence(args, args.n)
    value = correlation_measure(seq, query)
    _emit_text(args, f"k={args.k} N={args.n} C={value}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_all(args.suite, p_max=args.p_max, r_max=args.r_max, length=args.length)
    text = json.dumps(report, indent=2, default=str) + "\n"
    _emit_text(args, text)
    for s in report["suites"]:
        status = "PASS" if s["passed"] else "FAIL"
        line = f"[{status}] {s['name']}: {s['claim']} ({s['checked']} checks, {s['seconds']} s)"
        if not s["passed"]:
            line += f" witness={s['witness']}"
        print(line, file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED


def cmd_figure(args) -> int:
    use_cache = not args.no_cache
    if args.id == 1:
        run = run_figure1(args.p_max or 10000, args.out_dir, args.jobs, use_cache)
    elif args.id == 2:
        run = run_figure2(args.p_max or 10000, args.out_dir, args.jobs, use_cache)
    else:
        run = run_figure3(args.p or 100049, args.out_dir, use_cache)
    print(f"{run.id}: {run.directory}{' (cached)' if run.cached else ''}", file=sys.stderr)
    print(json.dumps(run.summary, sort_keys=True), file=sys.stderr)
    return EXIT_OK


def cmd_nqr_dist(args) -> int:
    if args.x < 100:
        raise UsageError("--x must be at least 100")
    run = run_nqr_distribution(args.x, args.out_dir)
    sys.stdout.write(run.csv_path.read_text())
    print(json.dumps(run.summary, sort_keys=True), file=sys.stderr)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arithrand",
        description="Pseudorandomness measures for the Legendre symbol and Liouville functions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", default=str(default_results_dir()),
                        help="directory for all written files (default: $ARITHRAND_RESULTS_DIR "
                             "or ./results)")
    common.add_argument("--jobs", type=int, default=None,
                        help="worker processes for sweeps (default: available CPUs)")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("gen", parents=[common], help="generate a sequence s_1..s_N")
    _add_kind(p)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--format", choices=["ascii", "raw"], default="ascii",
                   help="ascii 0/1 text, or raw: u64 LE length + packed u64 LE words")
    p.add_argument("--patched", action="store_true",
                   help="Legendre with s_2kp = 1 - s_kp forced (p = 3, 5 mod 8)")
    _add_out(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("anf", parents=[common],
                       help="algebraic normal form of the Boolean function of f")
    _add_kind(p, required=False)
    p.add_argument("--r", type=int, help="number of variables (Legendre default: floor(log2 p))")
    p.add_argument("--c", type=int, choices=[0, 1], default=0, help="value B(0,...,0)")
    p.add_argument("--report", action="store_true",
                   help="CSV p,r,class_mod8,nqr,c,deg,spr for all odd primes below --p-max")
    p.add_argument("--p-max", type=int)
    _add_out(p)
    p.set_defaults(func=cmd_anf)

    for name, func, helptext in [
        ("lcprofile", cmd_lcprofile, "linear complexity profile L(S,N), N = 1..length"),
        ("lattice", cmd_lattice, "N-th lattice level by GF(2) rank"),
        ("corr", cmd_corr, "correlation measure C_k(S,N)"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        _add_kind(p, required=False)
        p.add_argument("--input", help="read the sequence from an ascii or raw file instead")
        if name == "lcprofile":
            p.add_argument("--length", type=int, required=True)
        else:
            p.add_argument("--n", type=int, required=True, help="window length N")
        if name == "corr":
            p.add_argument("--k", type=int, required=True, help="order k")
            p.add_argument("--shifts", help="fixed shifts d_1,...,d_k (maximise over M only)")
            p.add_argument("--budget", type=int, default=10**8, help="enumeration budget")
        _add_out(p)
        p.set_defaults(func=func)

    suites_help = "\n".join(f"  {s.name:16s} {s.claim}" for s in SUITES.values())
    p = sub.add_parser(
        "verify", parents=[common],
        help="run verification suites; exit 1 if any check fails",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="suites:\n" + suites_help,
    )
    p.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"],
                   help="suite to run (repeatable; default: all)")
    p.add_argument("--p-max", type=int, help=f"prime bound (default {DEFAULTS['p_max']})")
    p.add_argument("--r-max", type=int, help=f"largest r for Liouville tables (default {DEFAULTS['r_max']})")
    p.add_argument("--length", type=int, help=f"Liouville sequence length (default {DEFAULTS['length']})")
    _add_out(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", parents=[common],
                       help="regenerate a figure into <out-dir>/figureN/<hash>/")
    p.add_argument("--id", type=int, choices=[1, 2, 3], required=True,
                   help="1: sparsity distance, 2: max LC deviation, 3: LC deviation curve")
    p.add_argument("--p-max", type=int, help="prime bound for figures 1 and 2 (default 10000)")
    p.add_argument("--p", type=int, help="prime for figure 3 (default 100049)")
    p.add_argument("--no-cache", action="store_true", help="recompute even if cached")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("nqr-dist", parents=[common],
                       help="distribution of the least quadratic non-residue")
    p.add_argument("--x", type=int, default=10**6, help="prime bound (default 10^6)")
    p.set_defaults(func=cmd_nqr_dist)
    for sp in sub.choices.values():
        sp.set_defaults(subparser=sp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        args.subparser.print_usage(sys.stderr)
        print(f"arithrand {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"arithrand {args.command}: capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValueError, OSError) as exc:
        print(f"arithrand {args.command}: input error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
