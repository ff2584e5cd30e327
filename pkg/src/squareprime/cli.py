"""Command-line front end: deterministic CSV/JSON reports on SP numbers.

Data goes to stdout (or --output); diagnostics go to stderr.  Exit codes:
0 for success and clean verifications, 1 when a verification finds
exceptions (or no Pell witness exists below the table limit), 2 for usage
errors.  Output bytes depend only on the arguments, never on --workers.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import conjectures, density, digits, pell
from .errors import ResourceLimitError
from .sieve import DEFAULT_SEGMENT_SIZE, build_table, is_sp

_REAL_FMT = ".15g"


@dataclass(frozen=True)
class RunConfig:
    limit: int
    segment_size: int
    format: str
    output: str | None
    workers: int


def _fmt_cell(v) -> str:
    if isinstance(v, float):
        return format(v, _REAL_FMT)
    if v is None:
        return ""
    return str(v)


def _emit(columns: list[str], rows: list[dict], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt_cell(r[c]) for c in columns) for r in rows]
        return "\n".join(lines) + "\n"
    objs = [
        {
            c: float(format(r[c], _REAL_FMT)) if isinstance(r[c], float) else r[c]
            for c in columns
        }
        for r in rows
    ]
    return json.dumps(objs, indent=2) + "\n"


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", newline="") as fh:
            fh.write(text)


def _config(args) -> RunConfig:
    return RunConfig(
        limit=args.limit,
        segment_size=args.segment_size,
        format=args.format,
        output=args.output,
        workers=args.workers,
    )


def _table(cfg: RunConfig):
    return build_table(cfg.limit, cfg.segment_size)


def _decomp_row(n: int) -> tuple[int, int]:
    dec = is_sp(n)
    assert dec is not None
    return dec.p, dec.a


def _cmd_sieve(args) -> int:
    cfg = _config(args)
    table = _table(cfg)
    rows = [{"n": d.n, "p": d.p, "a": d.a} for d in table.sp_list(1, cfg.limit)]
    _write(_emit(["n", "p", "a"], rows, cfg.format), cfg.output)
    return 0


def _cmd_count(args) -> int:
    cfg = _config(args)
    table = _table(cfg)
    n = cfg.limit
    rows = [
        {
            "n": n,
            "sp_count": table.sp_count(n),
            "sp_count_via_pi": density.sp_count_via_pi(table, n),
            "pi_n": table.prime_count(n),
        }
    ]
    _write(_emit(["n", "sp_count", "sp_count_via_pi", "pi_n"], rows, cfg.format),
           cfg.output)
    return 0


def _default_checkpoints(limit: int) -> list[int]:
    pts = []
    p = 10
    while p <= limit:
        pts.append(p)
        p *= 10
    if not pts or pts[-1] != limit:
        pts.append(limit)
    return pts


def _cmd_density(args) -> int:
    cfg = _config(args)
    if args.checkpoints:
        pts = [int(x) for x in args.checkpoints.split(",")]
    else:
        pts = _default_checkpoints(cfg.limit)
    table = _table(cfg)
    records = density.density_table(table, pts)
    if cfg.format == "csv":
        _write(density.density_csv(records), cfg.output)
    else:
        _write(density.density_json(records), cfg.output)
    return 0


def _cmd_goldbach(args) -> int:
    cfg = _config(args)
    lo = args.from_ if args.from_ is not None else conjectures.GOLDBACH_THRESHOLD
    hi = args.to if args.to is not None else cfg.limit
    table = _table(cfg)
    exceptions = conjectures.verify_goldbach_range(table, lo, hi, workers=cfg.workers)
    _write(_emit(["n"], [{"n": e} for e in exceptions], cfg.format), cfg.output)
    if exceptions:
        print(f"{len(exceptions)} exceptions in [{lo}, {hi}]", file=sys.stderr)
        return 1
    return 0


def _cmd_sp_goldbach(args) -> int:
    cfg = _config(args)
    table = _table(cfg)
    exceptions = conjectures.verify_sp_goldbach(
        table, cfg.limit, threshold=args.threshold, workers=cfg.workers
    )
    _write(_emit(["n"], [{"n": e} for e in exceptions], cfg.format), cfg.output)
    if exceptions:
        print(
            f"{len(exceptions)} SP exceptions in ({args.threshold}, {cfg.limit}]",
            file=sys.stderr,
        )
        return 1
    return 0


def _cmd_squares(args) -> int:
    cfg = _config(args)
    k_max = args.kmax if args.kmax is not None else math.isqrt(cfg.limit) - 1
    table = _table(cfg)
    failures = conjectures.verify_squares_range(
        table, args.kmin, k_max, workers=cfg.workers
    )
    _write(_emit(["k"], [{"k": k} for k in failures], cfg.format), cfg.output)
    if failures:
        print(f"{len(failures)} empty square intervals in [{args.kmin}, {k_max}]",
              file=sys.stderr)
        return 1
    return 0


def _cmd_gaps(args) -> int:
    cfg = _config(args)
    table = _table(cfg)
    recs = conjectures.gap_histogram(table, cfg.limit)
    rows = [{"g": r.g, "first_lo": r.first_lo, "count": r.count} for r in recs]
    _write(_emit(["g", "first_lo", "count"], rows, cfg.format), cfg.output)
    return 0


def _cmd_twins(args) -> int:
    cfg = _config(args)
    table = _table(cfg)
    rows = []
    for u, v in conjectures.twin_pairs(table, cfg.limit):
        pu, au = _decomp_row(u)
        pv, av = _decomp_row(v)
        rows.append({"u": u, "p_u": pu, "a_u": au, "v": v, "p_v": pv, "a_v": av})
    _write(_emit(["u", "p_u", "a_u", "v", "p_v", "a_v"], rows, cfg.format), cfg.output)
    return 0


def _cmd_pell(args) -> int:
    cfg = _config(args)
    table = _table(cfg)
    witness = pell.find_witness(table, args.gap)
    if witness is None:
        print(
            f"no distinct-prime witness for gap {args.gap} below {cfg.limit}",
            file=sys.stderr,
        )
        return 1
    rows = []
    for small, large in pell.generate_gap_pairs(witness, args.count):
        rows.append(
            {
                "g": args.gap,
                "u": small.n,
                "p_u": small.p,
                "a_u": small.a,
                "v": large.n,
                "p_v": large.p,
                "a_v": large.a,
            }
        )
    _write(
        _emit(["g", "u", "p_u", "a_u", "v", "p_v", "a_v"], rows, cfg.format),
        cfg.output,
    )
    return 0


def _cmd_digits(args) -> int:
    cfg = _config(args)
    table = _table(cfg)
    report = digits.digit_report(table)
    rows = [
        {
            "digit": r.digit,
            "count": r.count,
            "share": r.share,
            "predicted_share": r.predicted_share,
            "constant_literal": report.constant_literal,
            "constant_corrected": report.constant_corrected,
        }
        for r in report.rows
    ]
    cols = ["digit", "count", "share", "predicted_share",
            "constant_literal", "constant_corrected"]
    _write(_emit(cols, rows, cfg.format), cfg.output)
    return 0


def _cmd_zeta(args) -> int:
    try:
        c = Fraction(args.c)
    except (ValueError, ZeroDivisionError):
        print(f"error: cannot parse --c value {args.c!r}", file=sys.stderr)
        return 2
    val = digits.hurwitz_zeta2(c)
    rows = [{"c": val.c, "value": val.value, "abs_error_bound": val.abs_error_bound}]
    _write(_emit(["c", "value", "abs_error_bound"], rows, args.format), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squareprime",
        description="Generate, count and verify square-prime numbers (p * a**2, "
        "p prime, a >= 2).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="write data here, not stdout")

    table_opts = argparse.ArgumentParser(add_help=False, parents=[common])
    table_opts.add_argument("--limit", type=int, required=True,
                            help="sieve table upper bound (inclusive)")
    table_opts.add_argument("--segment-size", type=int,
                            default=DEFAULT_SEGMENT_SIZE)
    table_opts.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("sieve", parents=[table_opts],
                       help="list SP numbers with decompositions")
    p.set_defaults(fn=_cmd_sieve)

    p = sub.add_parser("count", parents=[table_opts],
                       help="exact counts at the limit, both routes, plus pi")
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("density", parents=[table_opts],
                       help="exact counts against the asymptotic estimate")
    p.add_argument("--checkpoints", default=None,
                   help="comma-separated checkpoints (default: powers of 10)")
    p.set_defaults(fn=_cmd_density)

    p = sub.add_parser("goldbach", parents=[table_opts],
                       help="list integers that are not sums of two SP numbers")
    p.add_argument("--from", dest="from_", type=int, default=None,
                   help=f"range start (default {conjectures.GOLDBACH_THRESHOLD})")
    p.add_argument("--to", type=int, default=None, help="range end (default limit)")
    p.set_defaults(fn=_cmd_goldbach)

    p = sub.add_parser("sp-goldbach", parents=[table_opts],
                       help="list SP numbers above a threshold that are not "
                            "sums of two SP numbers")
    p.add_argument("--threshold", type=int,
                   default=conjectures.SP_GOLDBACH_THRESHOLD)
    p.set_defaults(fn=_cmd_sp_goldbach)

    p = sub.add_parser("squares", parents=[table_opts],
                       help="list k with no SP number in (k**2, (k+1)**2)")
    p.add_argument("--kmin", type=int, default=conjectures.SQUARES_K_MIN)
    p.add_argument("--kmax", type=int, default=None,
                   help="default: largest k with (k+1)**2 <= limit")
    p.set_defaults(fn=_cmd_squares)

    p = sub.add_parser("gaps", parents=[table_opts],
                       help="histogram of gaps between consecutive SP numbers")
    p.set_defaults(fn=_cmd_gaps)

    p = sub.add_parser("twins", parents=[table_opts],
                       help="consecutive-integer SP pairs")
    p.set_defaults(fn=_cmd_twins)

    p = sub.add_parser("pell", parents=[table_opts],
                       help="generate SP pairs at a fixed gap from a Pell orbit")
    p.add_argument("--gap", type=int, required=True)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(fn=_cmd_pell)

    p = sub.add_parser("digits", parents=[table_opts],
                       help="last-digit distribution against the predicted share")
    p.set_defaults(fn=_cmd_digits)

    p = sub.add_parser("zeta", parents=[common],
                       help="Hurwitz zeta(2, c) with an error bound")
    p.add_argument("--c", required=True,
                   help="rational in (0, 2], e.g. 1/10 or 0.3")
    p.set_defaults(fn=_cmd_zeta)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, ResourceLimitError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
