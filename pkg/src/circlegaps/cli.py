"""Command-line front end.

Subcommands: generate, gaps, windows, discrepancy, paircorr, verify, fit,
theorem1.  Exit codes: 0 on success, 1 when a verification fails or a file
cannot be written, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import List, Optional

from . import experiments, reports
from .sequences import build_prefix, parse_kind
from .stats import gap_vector


def parse_int_list(spec: str) -> List[int]:
    """Comma-separated integers and a:b or a:b:step inclusive ranges."""
    out: List[int] = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            parts = [int(p) for p in token.split(":")]
            if len(parts) == 2:
                lo, hi, step = parts[0], parts[1], 1
            elif len(parts) == 3:
                lo, hi, step = parts
            else:
                raise ValueError(f"bad range {token!r}")
            out.extend(range(lo, hi + 1, step))
        else:
            out.append(int(token))
    if not out:
        raise ValueError(f"empty integer list {spec!r}")
    return out


def _add_common(p: argparse.ArgumentParser, needs_r: bool = True) -> None:
    p.add_argument("--kind", default=None, help="vdc2 | vdc:<b> | kronecker-phi | debruijn-log")
    p.add_argument("--n", default=None, help="prefix sizes, e.g. 16,31,1:100:7")
    if needs_r:
        p.add_argument("--r", default=None, help="window widths (scales s for paircorr)")
    origin = p.add_mutually_exclusive_group()
    origin.add_argument("--origin", dest="origin", action="store_true", default=None)
    origin.add_argument("--no-origin", dest="origin", action="store_false")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--config", default=None, help="JSON file with defaults; flags win")


def _merged_options(args: argparse.Namespace, parser: argparse.ArgumentParser) -> dict:
    options = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                options.update(json.load(fh))
        except OSError as exc:
            parser.error(f"cannot read config {args.config}: {exc}")
    for key in ("kind", "n", "r", "origin", "format", "out", "jobs"):
        value = getattr(args, key, None)
        if value is not None:
            options[key] = value
    options.setdefault("format", "csv")
    options.setdefault("jobs", 1)
    options.setdefault("origin", None)
    return options


def _sweep_config(options: dict, parser, needs_r=True) -> experiments.SweepConfig:
    if not options.get("kind") or not options.get("n") or (needs_r and not options.get("r")):
        parser.error("--kind, --n and --r are required (via flags or --config)")
    try:
        kind = parse_kind(str(options["kind"]))
        n_values = parse_int_list(str(options["n"]))
        r_values = parse_int_list(str(options["r"])) if needs_r else [1]
        return experiments.SweepConfig(
            kind=kind,
            n_values=n_values,
            r_values=r_values,
            include_origin=options.get("origin"),
            fmt=options["format"],
            out=options.get("out"),
            jobs=int(options["jobs"]),
        )
    except ValueError as exc:
        parser.error(str(exc))


def _write_or_print(path: Optional[str], emit) -> int:
    try:
        if path is None:
            emit(sys.stdout)
        else:
            with open(path, "w", newline="") as fh:
                emit(fh)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_generate(args, parser) -> int:
    options = _merged_options(args, parser)
    if not options.get("kind") or not options.get("n"):
        parser.error("--kind and --n are required")
    kind = parse_kind(str(options["kind"]))
    n = parse_int_list(str(options["n"]))[-1]
    prefix = build_prefix(kind, n, options.get("origin"))

    def emit(fh):
        writer = csv.DictWriter(
            fh, fieldnames=["sorted_pos", "seq_index", "value_exact", "value_float"]
        )
        writer.writeheader()
        for row in prefix.csv_rows():
            writer.writerow(row)

    return _write_or_print(options.get("out"), emit)


def cmd_gaps(args, parser) -> int:
    options = _merged_options(args, parser)
    if not options.get("kind") or not options.get("n"):
        parser.error("--kind and --n are required")
    kind = parse_kind(str(options["kind"]))
    n = parse_int_list(str(options["n"]))[-1]
    vec = gap_vector(build_prefix(kind, n, options.get("origin")))

    def emit(fh):
        writer = csv.DictWriter(fh, fieldnames=["kind", "n", "pos", "gap_exact", "gap_float"])
        writer.writeheader()
        for pos, gap in enumerate(vec.gaps):
            writer.writerow(
                {
                    "kind": options["kind"],
                    "n": n,
                    "pos": pos,
                    "gap_exact": reports.render_exact(gap),
                    "gap_float": repr(float(gap)),
                }
            )

    return _write_or_print(options.get("out"), emit)


def _run_sweep(args, parser, runner, row_adapter, writer) -> int:
    options = _merged_options(args, parser)
    config = _sweep_config(options, parser)
    config_out, config.out = config.out, None  # write below with error context
    rows = [row_adapter(r) for r in runner(config)]
    if config_out is None:
        writer(sys.stdout, rows, config.fmt)
        return 0
    try:
        with open(config_out, "w", newline="") as fh:
            writer(fh, rows, config.fmt)
    except OSError as exc:
        print(f"error: cannot write {config_out}: {exc}", file=sys.stderr)
        return 1
    return 0


def _windows_writer(fh, rows, fmt):
    if fmt == "csv":
        w = csv.DictWriter(fh, fieldnames=reports.WINDOW_FIELDS)
        w.writeheader()
        for row in rows:
            w.writerow(reports._window_dict(row))
    else:
        json.dump([reports._window_dict(r) for r in rows], fh, indent=1)
        fh.write("\n")


def _discrepancy_writer(fh, rows, fmt):
    if fmt == "csv":
        w = csv.DictWriter(fh, fieldnames=reports.DISCREPANCY_FIELDS)
        w.writeheader()
        for row in rows:
            w.writerow(reports._discrepancy_dict(row))
    else:
        json.dump([reports._discrepancy_dict(r) for r in rows], fh, indent=1)
        fh.write("\n")


def _paircorr_writer(fh, rows, fmt):
    if fmt == "csv":
        w = csv.DictWriter(fh, fieldnames=reports.PAIRCORR_FIELDS)
        w.writeheader()
        for row in rows:
            w.writerow(reports._paircorr_dict(row))
    else:
        json.dump([reports._paircorr_dict(r) for r in rows], fh, indent=1)
        fh.write("\n")


def cmd_windows(args, parser) -> int:
    return _run_sweep(
        args, parser, experiments.run_ratio_sweep, reports.window_row, _windows_writer
    )


def cmd_discrepancy(args, parser) -> int:
    return _run_sweep(
        args,
        parser,
        experiments.run_discrepancy_sweep,
        reports.discrepancy_row,
        _discrepancy_writer,
    )


def cmd_paircorr(args, parser) -> int:
    return _run_sweep(
        args,
        parser,
        experiments.run_paircorr_sweep,
        reports.paircorr_row,
        _paircorr_writer,
    )


def cmd_verify(args, parser) -> int:
    ok, entries = experiments.verify_all(args.t_max, args.n_max)
    payload = [e.as_dict() for e in entries]

    def emit(fh):
        json.dump(payload, fh, indent=1)
        fh.write("\n")

    status = _write_or_print(args.out, emit)
    if status:
        return status
    for entry in entries:
        marker = "ok" if entry.all_passed else "FAIL"
        print(f"[{marker}] {entry.lemma} ({entry.parameter_range})", file=sys.stderr)
    return 0 if ok else 1


def cmd_fit(args, parser) -> int:
    quantity = {
        "ratio": "ratio_bound",
        "discrepancy": "discrepancy_bound",
        "paircorr": "paircorr_bound",
    }[args.quantity]
    fmt = args.format or ("json" if args.table.endswith(".json") else "csv")
    try:
        if quantity == "ratio_bound":
            rows = reports.read_windows(args.table, fmt)
        elif quantity == "discrepancy_bound":
            rows = reports.read_discrepancy(args.table, fmt)
        else:
            rows = reports.read_paircorr(args.table, fmt)
    except OSError as exc:
        print(f"error: cannot read {args.table}: {exc}", file=sys.stderr)
        return 1
    try:
        fit = experiments.fit_constant(rows, quantity)
    except experiments.InsufficientData as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = {
        "quantity": fit.quantity,
        "fitted_c": fit.fitted_c,
        "r_range": list(fit.r_range),
        "n_max": fit.n_max,
        "residuals": {str(k): v for k, v in fit.residuals.items()},
    }

    def emit(fh):
        json.dump(payload, fh, indent=1)
        fh.write("\n")

    return _write_or_print(args.out, emit)


def cmd_theorem1(args, parser) -> int:
    record = experiments.log_gap_extremes(args.n_max, burn_in=args.burn_in)
    payload = {
        "n_max": record.n_max,
        "burn_in": record.burn_in,
        "limsup_n_times_longest": record.n_times_longest,
        "limsup_n_times_shortest": record.n_times_shortest,
        "limsup_ratio": record.ratio,
        "err_bound": record.err_bound,
    }

    def emit(fh):
        json.dump(payload, fh, indent=1)
        fh.write("\n")

    return _write_or_print(args.out, emit)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlegaps",
        description="Exact gap statistics of low-discrepancy circle sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sorted prefix as CSV")
    _add_common(p, needs_r=False)
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("gaps", help="circular gap vector as CSV")
    _add_common(p, needs_r=False)
    p.set_defaults(handler=cmd_gaps)

    p = sub.add_parser("windows", help="r-window extremes sweep")
    _add_common(p)
    p.set_defaults(handler=cmd_windows)

    p = sub.add_parser("discrepancy", help="short-interval count extremes sweep")
    _add_common(p)
    p.set_defaults(handler=cmd_discrepancy)

    p = sub.add_parser("paircorr", help="pair correlation sweep (--r lists the scales s)")
    _add_common(p)
    p.set_defaults(handler=cmd_paircorr)

    p = sub.add_parser("verify", help="run all structure verifiers")
    p.add_argument("--t-max", type=int, default=8)
    p.add_argument("--n-max", type=int, default=1024)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("fit", help="fit an envelope constant from a sweep table")
    p.add_argument("--quantity", choices=("ratio", "discrepancy", "paircorr"), required=True)
    p.add_argument("--table", required=True, help="sweep output file")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("theorem1", help="extremal gap constants of the log sequence")
    p.add_argument("--n-max", type=int, default=1_000_000)
    p.add_argument("--burn-in", type=int, default=1024)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_theorem1)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.handler(args, parser)


if __name__ == "__main__":
    sys.exit(main())
