"""Command line front end: solve, convergence tables, ratio/a_n figure data,
and bound reports.

Every command appends one JSON line to ``manifest.jsonl`` in the output
directory with the command line, configuration, wall time and SHA-256 digests
of the files written.  Outputs themselves are deterministic.

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import error_analysis as ea
from . import theory_bounds as tb
from .bigfloat import DOUBLE, BigFloatError, default_digits, extended
from .moment_system import as_fraction, write_state
from .propagator import PropagationError
from .solver import STUDY_EPS, REFERENCE_ORDER, Study, as_initial_condition, resolved_modes

EXIT_USAGE = 2
EXIT_NUMERIC = 3
DEFAULT_FIGURE_NMAX = 12


class UsageError(Exception):
    pass


def _rational(text):
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _arith(bits):
    return DOUBLE if not bits else extended(bits)


def _frac_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _write(path, text, written):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
    written.append(path)


def _digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _append_manifest(outdir, argv, config, wall, written):
    record = {
        "command": argv,
        "config": config,
        "precision": config.get("precision") or "double",
        "wall_time_s": round(wall, 3),
        "outputs": {os.path.relpath(p, outdir): _digest(p) for p in written},
    }
    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, "manifest.jsonl"), "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")


def _check_ic(text):
    try:
        return as_initial_condition(text)
    except (OSError, ValueError) as exc:
        raise UsageError(f"bad --ic {text!r}: {exc}") from exc


def _check_eps(eps):
    if not 0 < eps <= 1:
        raise UsageError("--eps must lie in (0, 1]")


# -- commands -------------------------------------------------------------------------

def cmd_solve(args, written):
    if args.N < 1:
        raise UsageError("--N must be at least 1")
    _check_eps(args.eps)
    if args.t < 0:
        raise UsageError("--t must be nonnegative")
    ic = _check_ic(args.ic)
    arith = _arith(args.precision)
    modes = resolved_modes(args.t, args.eps, args.modes)
    study = Study(ic, arith, modes, args.coefficients)
    state = study.solve(args.N, args.eps, args.t)
    digits = args.digits or (17 if arith.is_double else default_digits(arith.precision))
    path = args.out or os.path.join(
        args.outdir, f"state_{args.ic.replace(':', '_').replace('/', '_')}_N{args.N}"
                     f"_eps{_frac_str(args.eps).replace('/', '_')}_t{_frac_str(args.t).replace('/', '_')}.csv")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    write_state(state, path, digits)
    written.append(path)
    return {"ic": args.ic, "N": args.N, "eps": _frac_str(args.eps), "t": _frac_str(args.t),
            "modes": study.modes, "coefficients": args.coefficients,
            "precision": args.precision}


def _table_prefix(args, kind):
    if args.out:
        return args.out
    n = f"Nmax{args.Nmax}" if kind == "total" else f"N{args.N}"
    t = _frac_str(args.t).replace("/", "_")
    return os.path.join(args.outdir, f"table_{kind}_{args.ic.replace(':', '_').replace('/', '_')}_{n}_t{t}")


def cmd_table(args, written):
    kind = args.kind
    if kind == "total":
        if args.Nmax is None or args.Nmax < 1:
            raise UsageError("table total needs --Nmax >= 1")
        if args.Nmax >= REFERENCE_ORDER:
            raise UsageError(f"--Nmax must stay below the reference order {REFERENCE_ORDER}")
    else:
        if args.N is None or args.N < 1:
            raise UsageError(f"table {kind} needs --N >= 1")
        if args.N >= REFERENCE_ORDER:
            raise UsageError(f"--N must stay below the reference order {REFERENCE_ORDER}")
    if args.t <= 0:
        raise UsageError("--t must be positive")
    ic = _check_ic(args.ic)
    arith = _arith(args.precision)
    study = Study(ic, arith, args.modes or 100, args.coefficients)
    if kind == "total":
        tables = [ea.total_error_table(study, args.t, STUDY_EPS, tuple(range(1, args.Nmax + 1)))]
    else:
        xi, f = ea.moment_tables(study, args.t, args.N, STUDY_EPS)
        tables = [xi if kind == "moment" else f]
    prefix = _table_prefix(args, kind)
    raw_digits = 17 if arith.is_double else default_digits(arith.precision)
    for table in tables:
        _write(prefix + ".csv", table.to_csv(args.digits or 6), written)
        _write(prefix + ".md", table.to_markdown(3), written)
        _write(prefix + ".raw.csv", table.to_csv(raw_digits), written)
    return {"kind": kind, "ic": args.ic, "Nmax": args.Nmax, "N": args.N, "t": _frac_str(args.t),
            "modes": study.modes, "precision": args.precision}


def cmd_figure(args, written):
    if args.kind == "an-ratio":
        if args.s is None or args.s <= 0:
            raise UsageError("an-ratio needs --s > 0")
        if args.nmax < 1 or args.K < 1:
            raise UsageError("an-ratio needs --nmax >= 1 and --K >= 1")
        prec = args.precision or 53
        lines = ["n,ratio,reference"]
        prev = tb.a_n(args.s, 1, args.K, prec)
        for n in range(1, args.nmax + 1):
            nxt = tb.a_n(args.s, n + 1, args.K, prec)
            ratio = nxt / prev
            lines.append(f"{n},{_sci(ratio, args.digits)},{_sci(tb.mp(Fraction(n + 1) / args.s), args.digits)}")
            prev = nxt
        path = args.out or os.path.join(args.outdir, f"an_ratio_s{_frac_str(args.s).replace('/', '_')}_K{args.K}.csv")
        _write(path, "\n".join(lines) + "\n", written)
        return {"kind": "an-ratio", "s": _frac_str(args.s), "nmax": args.nmax, "K": args.K,
                "precision": args.precision}
    if args.Nmax < 1:
        raise UsageError("--Nmax must be at least 1")
    if args.Nmax + 1 >= REFERENCE_ORDER:
        raise UsageError(f"--Nmax must stay below {REFERENCE_ORDER - 1}")
    if args.t <= 0:
        raise UsageError("--t must be positive")
    _check_eps(args.eps)
    ic = _check_ic(args.ic)
    arith = _arith(args.precision)
    rows = ea.ratio_profile(ic, args.t, args.eps, args.Nmax, args.quantity, arith, args.modes)
    lines = ["N,value,flag"]
    for n, _raw, norm, flagged in rows:
        value = "" if norm is None else f"{norm:.6e}"
        lines.append(f"{n},{value},{'below_floor' if flagged else ''}")
    path = args.out or os.path.join(
        args.outdir, f"ratio_{args.ic}_{args.quantity}_t{_frac_str(args.t).replace('/', '_')}"
                     f"_eps{_frac_str(args.eps).replace('/', '_')}.csv")
    _write(path, "\n".join(lines) + "\n", written)
    return {"kind": "ratio", "ic": args.ic, "t": _frac_str(args.t), "eps": _frac_str(args.eps),
            "quantity": args.quantity, "Nmax": args.Nmax,
            "modes": resolved_modes(args.t, args.eps, args.modes), "precision": args.precision}


def _sci(x, digits):
    import mpmath
    return mpmath.nstr(x, digits or 6, min_fixed=1, max_fixed=0)


def cmd_bounds(args, written):
    if args.N < 1 or args.N >= REFERENCE_ORDER:
        raise UsageError(f"--N must lie in 1..{REFERENCE_ORDER - 1}")
    _check_eps(args.eps)
    if args.t <= 0:
        raise UsageError("--t must be positive")
    ic = _check_ic(args.ic)
    arith = _arith(args.precision)
    study = Study(ic, arith, args.modes or 100, args.coefficients)
    ref = study.reference(args.eps, args.t)
    approx = study.solve(args.N, args.eps, args.t)
    reports = tb.theorem_bounds(study, args.N, args.t, args.eps, ref=ref, approx=approx)
    reports += tb.lemma_checks(study, args.N, args.t, args.eps, ref=ref, approx=approx)
    path = args.out or os.path.join(
        args.outdir, f"bounds_{args.ic}_N{args.N}_eps{_frac_str(args.eps).replace('/', '_')}"
                     f"_t{_frac_str(args.t).replace('/', '_')}.csv")
    _write(path, tb.reports_to_text(reports, args.digits or 6), written)
    return {"ic": args.ic, "N": args.N, "eps": _frac_str(args.eps), "t": _frac_str(args.t),
            "modes": study.modes, "precision": args.precision}


# -- parser -------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="pnkinetic", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--precision", type=int, default=0,
                        help="mantissa bits; 0 (default) uses native doubles")
        sp.add_argument("--digits", type=int, default=None, help="significant digits in outputs")
        sp.add_argument("--outdir", default=".", help="directory for outputs and manifest.jsonl")
        sp.add_argument("--out", default=None, help="output path (prefix for tables)")
        sp.add_argument("--modes", type=int, default=None,
                        help="grid points M (Fourier cutoff M/2); default from the resolution table")
        sp.add_argument("--coefficients", choices=("grid", "exact"), default="grid",
                        help="initial Fourier coefficients from grid samples or exact integrals")

    s = sub.add_parser("solve", help="solve one P_N system and write the state")
    common(s)
    s.add_argument("--ic", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--eps", type=_rational, required=True)
    s.add_argument("--t", type=_rational, required=True)

    t = sub.add_parser("table", help="error/order table over eps = 2 * 4^-m, m = 1..5")
    common(t)
    t.add_argument("kind", choices=("total", "moment", "coefficient"))
    t.add_argument("--ic", required=True)
    t.add_argument("--Nmax", type=int, default=None)
    t.add_argument("--N", type=int, default=None)
    t.add_argument("--t", type=_rational, default=Fraction(1))

    f = sub.add_parser("figure", help="error-ratio or a_n-ratio data")
    common(f)
    f.add_argument("kind", choices=("ratio", "an-ratio"))
    f.add_argument("--ic", default="g2")
    f.add_argument("--t", type=_rational, default=Fraction(1))
    f.add_argument("--eps", type=_rational, default=Fraction(1, 8))
    f.add_argument("--quantity", choices=("total", "m0", "m1", "m2"), default="total")
    f.add_argument("--Nmax", type=int, default=DEFAULT_FIGURE_NMAX)
    f.add_argument("--s", type=_rational, default=None)
    f.add_argument("--nmax", type=int, default=120)
    f.add_argument("--K", type=int, default=tb.SERIES_CUTOFF)

    b = sub.add_parser("bounds", help="compare computed errors with the theoretical bounds")
    common(b)
    b.add_argument("--ic", required=True)
    b.add_argument("--N", type=int, required=True)
    b.add_argument("--eps", type=_rational, required=True)
    b.add_argument("--t", type=_rational, required=True)
    return p


COMMANDS = {"solve": cmd_solve, "table": cmd_table, "figure": cmd_figure, "bounds": cmd_bounds}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on malformed flags
    if args.precision and args.precision < 16:
        parser.error("--precision must be 0 (double) or at least 16 bits")
    if args.modes is not None and args.modes < 2:
        parser.error("--modes must be at least 2")
    written = []
    start = time.perf_counter()
    try:
        config = COMMANDS[args.command](args, written)
    except UsageError as exc:
        print(f"pnkinetic {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PropagationError, BigFloatError, OverflowError, ArithmeticError) as exc:
        print(f"pnkinetic {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    config["precision"] = args.precision or None
    _append_manifest(args.outdir, ["pnkinetic"] + argv, config, time.perf_counter() - start, written)
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
