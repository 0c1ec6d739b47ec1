"""mflab command line.

One subcommand per subsystem; JSON on stdout by default, CSV opt-in via
--out csv (or a .csv path), binary only for sieve tables.  Numeric output
is printed with 12 significant digits.  Exit codes: 0 success, 1 failed
report assertion, 2 usage error.  A repeated invocation with the same
arguments and seed produces byte-identical output; wall-clock timings are
emitted only under --timing so they never break that.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import admissible, chowla, correlations, mirsky, report, sampling, walsh
from .sieve import ArithFunction, sieve, write_table

_FUNCTIONS = {
    "mobius": ArithFunction.MOBIUS,
    "liouville": ArithFunction.LIOUVILLE,
    "squarefree": ArithFunction.SQUAREFREE,
}

_RNG_NOTE = "numpy PCG64 (default_rng), SeedSequence((seed, sample_index))"


def _twelve_digits(obj):
    """Recursively round floats to 12 significant digits for printing."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _twelve_digits(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_twelve_digits(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(f"{float(obj):.12g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_twelve_digits(v) for v in obj.tolist()]
    return obj


def _emit(payload: dict, args: argparse.Namespace, csv_rows=None, csv_header=None) -> None:
    """Write JSON (default) or CSV to stdout or to --out FILE."""
    out = getattr(args, "out", None)
    want_csv = out == "csv" or (out and out.lower().endswith(".csv"))
    if want_csv:
        if csv_rows is None:
            raise SystemExit("this subcommand has no CSV form")
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(csv_header)
        for row in csv_rows:
            writer.writerow(_twelve_digits(list(row)))
        text = buffer.getvalue()
    else:
        text = json.dumps(_twelve_digits(payload), indent=2, sort_keys=True) + "\n"
    if out and out != "csv":
        Path(out).write_text(text)
        print(json.dumps({"written": out}))
    else:
        sys.stdout.write(text)


def _cmd_sieve(args) -> int:
    function = _FUNCTIONS[args.function]
    table = sieve(function, args.max_n)
    payload = {
        "function": args.function,
        "max_n": args.max_n,
        "sum": int(table.values.sum(dtype=np.int64)),
    }
    if args.table:
        write_table(table, args.table)
        payload["table"] = args.table
        payload["bytes"] = 13 + args.max_n
    elif args.max_n <= 10_000:
        payload["values"] = [int(v) for v in table.values]
    else:
        payload["note"] = "values omitted; pass --table FILE for the binary table"
    _emit(payload, args)
    return 0


def _cmd_admissible(args) -> int:
    word = admissible.parse_block(args.block)
    _emit(admissible.admissibility_report(word), args)
    return 0


def _cmd_mirsky(args) -> int:
    block = admissible.parse_block(args.block)
    density = mirsky.mirsky_cylinder(block, args.cutoff)
    payload = {
        "block": admissible.format_block(block),
        "value": density.value,
        "error_bound": density.error_bound,
        "P": density.prime_cutoff,
    }
    if args.empirical:
        payload["empirical"] = mirsky.mirsky_empirical(block, args.empirical)
        payload["empirical_windows"] = args.empirical
    _emit(payload, args)
    return 0


def _cmd_chowla(args) -> int:
    base = admissible.parse_block(args.base)
    support = admissible.block_support(base)
    signs = args.signs or ""
    if len(signs) != len(support):
        raise SystemExit(
            f"--signs must give one +/- per support position ({len(support)} needed)"
        )
    negatives = frozenset(
        pos for pos, ch in zip(support, signs) if ch == "-"
    )
    if any(ch not in "+-" for ch in signs):
        raise SystemExit("--signs must be drawn from '+' and '-'")
    cylinder = chowla.SignedCylinder(base, negatives)
    density = chowla.chowla_cylinder(cylinder, args.cutoff)
    _emit(
        {
            "base": admissible.format_block(base),
            "signs": signs,
            "word": admissible.format_block(cylinder.word()),
            "value": density.value,
            "error_bound": density.error_bound,
            "P": density.prime_cutoff,
        },
        args,
    )
    return 0


def _cmd_verify_admissible(args) -> int:
    level = chowla.AdmissibleMeasureLevel.build(args.level, args.cutoff)
    outcome = chowla.verify_admissible_level(level, args.cutoff, tol=args.tol)
    payload = outcome.as_dict()
    payload["total_mass"] = level.total_mass()
    _emit(payload, args)
    return 0


def _cmd_hadamard(args) -> int:
    payload = {}
    if args.det is not None:
        sign, log2_abs = walsh.walsh_det_log2(args.det)
        payload["det"] = {
            "n": args.det,
            "sign": sign,
            "log2_abs": log2_abs,
            "value": str(sign * (1 << log2_abs)) if log2_abs <= 256 else None,
        }
    if args.circulant:
        row = admissible.parse_block(args.circulant)
        matrix = walsh.circulant_from_row(row)
        payload["circulant"] = {
            "row": admissible.format_block(row),
            "order": len(row),
            "hadamard": walsh.is_hadamard(matrix),
        }
    if not payload:
        raise SystemExit("pass --det N and/or --circulant ROW")
    _emit(payload, args)
    return 0


def _cmd_walsh_solve(args) -> int:
    x = walsh.solve_uniform_system(args.n, args.a)
    _emit({"n": args.n, "a": args.a, "nu": [float(v) for v in x]}, args)
    return 0


def _cmd_barker(args) -> int:
    found = walsh.barker_search(args.max_len)
    payload = {
        "max_len": args.max_len,
        "lengths_nonempty": sorted(n for n, seqs in found.items() if seqs),
        "sequences": {
            str(n): ["".join("+" if v > 0 else "-" for v in s) for s in seqs]
            for n, seqs in found.items()
        },
    }
    rows = [
        (n, "".join("+" if v > 0 else "-" for v in s))
        for n in sorted(found)
        for s in found[n]
    ]
    _emit(payload, args, csv_rows=rows, csv_header=("length", "sequence"))
    return 0


def _cmd_correlate(args) -> int:
    shifts = tuple(int(s) for s in args.shifts.split(","))
    exponents = tuple(int(e) for e in args.exponents.split(","))
    spec = correlations.CorrelationSpec(shifts, exponents)
    table = sieve(_FUNCTIONS[args.function], args.N + shifts[-1])
    if args.mode == "cesaro":
        mode = correlations.CESARO
    elif args.normalizer == "harmonic":
        mode = correlations.LOG_HARMONIC
    else:
        mode = correlations.LOGARITHMIC
    value = correlations.chowla_sum(table, spec, args.N, mode)
    normalizer = mode.normalizer if mode.kind == "logarithmic" else ""
    payload = {
        "function": args.function,
        "shifts": list(shifts),
        "exponents": list(exponents),
        "N": args.N,
        "mode": mode.kind,
        "normalizer": normalizer,
        "value": value,
        "density_mode": spec.density_mode,
    }
    rows = [(args.N, mode.kind, normalizer, value)]
    _emit(payload, args, csv_rows=rows, csv_header=("N", "mode", "normalizer", "value"))
    return 0


def _cmd_orbit_coverage(args) -> int:
    result = correlations.orbit_block_coverage(args.len, args.N)
    _emit(
        {
            "block_length": result.block_length,
            "N": result.n_windows,
            "seen": result.seen,
            "admissible_total": result.admissible_total,
            "ratio": result.ratio,
            "missing_sample": [admissible.format_block(w) for w in result.missing],
        },
        args,
    )
    return 0


def _cmd_sample(args) -> int:
    cutoff = args.cutoff or sampling.default_cutoff(args.len)
    cfg = sampling.SampleConfig(args.len, cutoff, args.seed)
    lines = []
    for index in range(args.count):
        block = sampling.chowla_sample(cfg, index)
        lines.append(admissible.format_block(int(v) for v in block))
    payload = {
        "length": args.len,
        "cutoff": cutoff,
        "seed": args.seed,
        "count": args.count,
        "rng": _RNG_NOTE,
        "tv_error_bound": cfg.tv_error_bound,
    }
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n")
        payload["written"] = args.out
        sys.stdout.write(json.dumps(_twelve_digits(payload), indent=2, sort_keys=True) + "\n")
    else:
        payload["samples"] = lines
        sys.stdout.write(json.dumps(_twelve_digits(payload), indent=2, sort_keys=True) + "\n")
    return 0


def _report_csv_rows(outcome: dict):
    rows = []
    for criterion in outcome["criteria"]:
        if criterion["diagnostic"]:
            checks = criterion["details"]["checks"]
            status = "diagnostic" if all(c["within"] for c in checks.values()) else "diagnostic-miss"
        else:
            status = "pass" if criterion["passed"] else "fail"
        rows.append((criterion["id"], criterion["name"], status))
    return rows


def _cmd_report(args) -> int:
    outcome = report.run_acceptance(quick=args.quick, seed=args.seed, timing=args.timing)
    for criterion in outcome["criteria"]:
        print(report.status_line(criterion), file=sys.stderr)
    if args.outdir:
        outdir = Path(args.outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        rows = _report_csv_rows(outcome)
        with open(outdir / "report.csv", "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("id", "name", "status"))
            writer.writerows(rows)
        from .figures import render_report_figures

        written = render_report_figures(outcome, outdir)
        outcome["artifacts"] = {
            "csv": str(outdir / "report.csv"),
            "figures": [str(p) for p in written],
        }
    _emit(outcome, args)
    return 0 if outcome["passed"] else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mflab",
        description="Squarefree patterns, admissible blocks, Walsh-Hadamard systems, "
        "Barker searches, and correlation diagnostics.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("MFLAB_THREADS", "0")) or None,
        help="cap worker threads (falls back to MFLAB_THREADS; informational, "
        "computations are vectorized in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="sieve a function table, optionally to a binary file")
    p.add_argument("--function", choices=sorted(_FUNCTIONS), required=True)
    p.add_argument("--max-n", dest="max_n", type=int, required=True)
    p.add_argument("--table", help="write the binary MFL1 table here")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sieve)

    p = sub.add_parser("admissible", help="admissibility of a block like +0-0")
    p.add_argument("--block", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_admissible)

    p = sub.add_parser("mirsky", help="cylinder value of a 0/1 block")
    p.add_argument("--block", required=True)
    p.add_argument("--cutoff", type=int, default=100_000)
    p.add_argument("--empirical", type=int, help="also scan this many sieve windows")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_mirsky)

    p = sub.add_parser("chowla", help="signed-cylinder value over a 0/1 base")
    p.add_argument("--base", required=True)
    p.add_argument("--signs", default="", help="one +/- per support position")
    p.add_argument("--cutoff", type=int, default=100_000)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_chowla)

    p = sub.add_parser("verify-admissible", help="check the defining properties at a level")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=10_000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify_admissible)

    p = sub.add_parser("hadamard", help="determinant identity and circulant checks")
    p.add_argument("--det", type=int, help="ground-set size for the determinant")
    p.add_argument("--circulant", help="first row, e.g. +++-")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_hadamard)

    p = sub.add_parser("walsh-solve", help="solve the uniform subset sign system")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_walsh_solve)

    p = sub.add_parser("barker", help="exhaustive Barker search up to a length")
    p.add_argument("--max-len", dest="max_len", type=int, required=True)
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_barker)

    p = sub.add_parser("correlate", help="Cesaro or logarithmic correlation sums")
    p.add_argument("--function", choices=("mobius", "liouville"), required=True)
    p.add_argument("--shifts", required=True, help="comma separated, starting at 0")
    p.add_argument("--exponents", required=True, help="comma separated 1/2 values")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--mode", choices=("cesaro", "log"), default="cesaro")
    p.add_argument("--normalizer", choices=("log", "harmonic"), default="log")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("orbit-coverage", help="admissible blocks seen as Mobius windows")
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_orbit_coverage)

    p = sub.add_parser("sample", help="draw signed pattern windows")
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--cutoff", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", help="write one +/-/0 line per sample to this file")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("report", help="run the acceptance suite")
    p.add_argument("--quick", action="store_true", help="reduced problem sizes")
    p.add_argument("--seed", type=int, default=report.DEFAULT_SEED)
    p.add_argument("--timing", action="store_true", help="include wall times (non-reproducible)")
    p.add_argument("--outdir", help="write report.csv and figures here")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        parser.exit(2, f"mflab: error: {exc}\n")


if __name__ == "__main__":
    raise SystemExit(main())
