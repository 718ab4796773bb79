"""Command-line entry point.

Exit codes: 0 success, 1 decoding failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import fixtures
from .analysis.simulate import CSV_FIELDS, simulate
from .irs.codec import (
    RECOVERIES, STRATEGIES, DEFAULT_STRATEGY, decode, encode, format_word, parse_code_config, parse_word,
)
from .spi.core import format_instance, parse_instance, spi_monomialize
from .spi.solver import VARIANTS, iteration_count, solve


class UsageError(Exception):
    pass


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=1, default=str))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _int_list(s: str) -> list:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def _str_list(choices):
    def parse(s):
        items = [x.strip() for x in s.split(",") if x.strip()]
        for x in items:
            if x not in choices:
                raise argparse.ArgumentTypeError(f"{x!r} not one of {', '.join(choices)}")
        return items
    return parse


# commands ----------------------------------------------------------------------

def cmd_spi_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    sol = solve(inst, args.variant, debug=args.debug or None, trace=args.trace)
    ic = iteration_count(sol, inst)
    data = {"lambda": list(sol.lam.coeffs), "degree": sol.lam.deg(), "variant": sol.variant,
            "n_it": ic.observed, "predicted": ic.predicted}
    lines = [f"lambda: {sol.lam.to_text()}", f"degree: {sol.lam.deg()}",
             f"variant: {sol.variant}", f"n_it: {ic.observed}", f"predicted: {ic.predicted}"]
    if args.trace:
        data["trace"] = sol.trace
        for ev in sol.trace:
            lines.append("trace: " + " ".join(f"{k}={v}" for k, v in ev.items()))
    if args.debug:
        data["assertion_checks"] = sol.assertion_checks
        lines.append(f"assertion_checks: {sol.assertion_checks}")
    _emit(args, "\n".join(lines), data)
    return 0


def cmd_spi_monomialize(args) -> int:
    inst = parse_instance(_read(args.instance))
    new, meta = spi_monomialize(inst, args.u)
    text = format_instance(new)
    if args.out:
        Path(args.out).write_text(text)
    data = {"u": meta.u, "instance": text, "w": [list(w.coeffs) for w in meta.w]}
    _emit(args, f"# u = {meta.u}\n{text}" if not args.out else f"u: {meta.u}\nwritten: {args.out}", data)
    return 0


def cmd_rs_encode(args) -> int:
    code = parse_code_config(_read(args.code))
    msgs = parse_word(_read(args.messages))
    rows = encode(code, msgs)
    text = format_word(rows)
    if args.out:
        Path(args.out).write_text(text)
    _emit(args, text, {"codeword": rows})
    return 0


def cmd_rs_decode(args) -> int:
    code = parse_code_config(_read(args.code))
    Y = parse_word(_read(args.received))
    rep = decode(code, Y, args.strategy, args.recovery, check_paths=args.check_paths,
                 debug=args.debug or None)
    lines = [f"status: {rep.status}"]
    if rep.reason:
        lines.append(f"reason: {rep.reason}")
    if rep.locator is not None:
        lines.append(f"locator: {rep.locator.to_text()}")
    lines.append(f"support: {','.join(map(str, rep.support))}")
    lines.append(f"iterations: {rep.iterations}")
    if rep.paths_agree is not None:
        lines.append(f"paths_agree: {rep.paths_agree}")
    if rep.ok:
        lines.append("corrected:")
        lines.append(format_word(rep.corrected).rstrip("\n"))
        if args.out:
            Path(args.out).write_text(format_word(rep.corrected))
    _emit(args, "\n".join(lines), rep.to_dict())
    if not rep.ok:
        print(f"decoding failure: {rep.reason}", file=sys.stderr)
        return 1
    return 0


def cmd_rs_simulate(args) -> int:
    code = parse_code_config(_read(args.code))
    reports = []
    for strategy in args.strategy:
        for t in args.t:
            reports.append(simulate(code, t, args.trials, args.seed, args.error_model, strategy,
                                    args.recovery, check_condition=args.check_condition,
                                    zero_codeword=args.zero_codeword, workers=args.workers,
                                    debug=args.debug or None))
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.to_dict())
    if args.csv:
        Path(args.csv).write_text(buf.getvalue())
    if args.plot:
        from .plotting import plot_simulation

        plot_simulation(reports, args.plot, title=code.describe())
    summary = [f"# code: {code.describe()}", f"# seed: {args.seed}, trials per row: {args.trials}"]
    for r in reports:
        cond = "" if r.failures_condition is None else f" condition_failures={r.failures_condition}"
        bound = f"{r.bound_float:.4g}" if r.bound_float is not None else r.bound_note
        summary.append(f"# t={r.t} {r.strategy}: failures={r.failures_decode} "
                       f"miscorrections={r.miscorrections}{cond} rate={r.empirical_rate:.4g} bound={bound} "
                       f"({r.runtime:.1f}s)")
    summary.append(f"# guaranteed radius {reports[0].guaranteed_radius}, max radius {reports[0].max_radius}")
    if args.plot:
        summary.append(f"# figure: {args.plot}")
    text = ("" if args.csv else buf.getvalue() + "\n") + "\n".join(summary)
    _emit(args, text, [r.to_dict() for r in reports])
    return 0


def cmd_gen_fixtures(args) -> int:
    files = fixtures.gen_fixtures(args.family, args.out, args.seed)
    _emit(args, "\n".join(str(f) for f in files), {"files": [str(f) for f in files]})
    return 0


# parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def sub(parent, name, **kw):
        p = parent.add_parser(name, allow_abbrev=False, **kw)
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = argparse.ArgumentParser(prog="spirs", allow_abbrev=False,
                                description="SPI solvers and interleaved Reed-Solomon decoding.")
    top = p.add_subparsers(dest="group", required=True)

    spi = top.add_parser("spi", allow_abbrev=False, help="SPI instances").add_subparsers(dest="cmd", required=True)
    s = sub(spi, "solve", help="solve an instance file")
    s.add_argument("--instance", required=True)
    s.add_argument("--variant", choices=VARIANTS + ("auto",), default="auto")
    s.add_argument("--trace", action="store_true", help="dump per-iteration solver state")
    s.add_argument("--debug", action="store_true", help="check solver invariants while running")
    s.set_defaults(func=cmd_spi_solve)
    s = sub(spi, "monomialize", help="rewrite an instance with power-of-x moduli")
    s.add_argument("--instance", required=True)
    s.add_argument("--u", type=int, default=None, help="degree bound (default: D)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_spi_monomialize)

    rs = top.add_parser("rs", allow_abbrev=False, help="interleaved RS codes").add_subparsers(dest="cmd", required=True)
    s = sub(rs, "encode", help="encode message rows")
    s.add_argument("--code", required=True)
    s.add_argument("--messages", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_rs_encode)
    s = sub(rs, "decode", help="decode a received word")
    s.add_argument("--code", required=True)
    s.add_argument("--received", required=True)
    s.add_argument("--strategy", choices=STRATEGIES, default=DEFAULT_STRATEGY)
    s.add_argument("--recovery", choices=RECOVERIES, default="interp")
    s.add_argument("--check-paths", action="store_true", help="run every recovery formula and compare")
    s.add_argument("--debug", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_rs_decode)
    s = sub(rs, "simulate", help="Monte Carlo decoding failure rates")
    s.add_argument("--code", required=True)
    s.add_argument("--t", type=_int_list, required=True, help="comma list of error counts")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--error-model", default="uniform", help="uniform or rank:<r>")
    s.add_argument("--strategy", type=_str_list(STRATEGIES), default=[DEFAULT_STRATEGY],
                   help="comma list of strategies")
    s.add_argument("--recovery", choices=RECOVERIES, default="interp")
    s.add_argument("--check-condition", action="store_true",
                   help="also test the partial-inverse condition of every error pattern")
    s.add_argument("--zero-codeword", action="store_true", help="transmit the zero word")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--debug", action="store_true")
    s.add_argument("--csv", help="write the CSV rows here instead of stdout")
    s.add_argument("--plot", help="write a failure-rate figure (PNG/PDF/SVG)")
    s.set_defaults(func=cmd_rs_simulate)

    s = sub(top, "gen-fixtures", help="write deterministic test fixtures")
    s.add_argument("--family", choices=fixtures.FAMILIES, required=True)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen_fixtures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
