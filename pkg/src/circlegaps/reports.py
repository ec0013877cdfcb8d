"""Lossless serialization of experiment rows.

Exact values travel as strings: rationals as ``p/q``, quadratic-field
values as ``(p)+(q)sqrt5``, fixed-point log values as ``~mant/2^80``.
A float rendering rides along for human readers; parsing the exact string
reproduces the in-memory value bit for bit.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Union

from .exactnum import FIXED_BITS, CircleValue, FixedReal, GoldenNumber
from .stats import DiscrepancyReport, PairCorrelationReport, WindowReport
from .sequences import kind_token


def render_exact(value: CircleValue) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, GoldenNumber):
        return f"({value.p})+({value.q})sqrt5"
    if isinstance(value, FixedReal):
        return f"~{value.mant}/2^{FIXED_BITS}"
    raise TypeError(f"cannot render {value!r}")


_GOLDEN_RE = re.compile(r"^\((-?\d+(?:/\d+)?)\)\+\((-?\d+(?:/\d+)?)\)sqrt5$")
_FIXED_RE = re.compile(r"^~(-?\d+)/2\^(\d+)$")


def parse_exact(text: str) -> CircleValue:
    text = text.strip()
    m = _GOLDEN_RE.match(text)
    if m:
        return GoldenNumber(Fraction(m.group(1)), Fraction(m.group(2)))
    m = _FIXED_RE.match(text)
    if m:
        if int(m.group(2)) != FIXED_BITS:
            raise ValueError(f"unsupported fixed-point scale in {text!r}")
        return FixedReal(int(m.group(1)), 2)
    return Fraction(text)


WINDOW_FIELDS = ["kind", "n", "r", "min_sum", "max_sum", "ratio_float"]
DISCREPANCY_FIELDS = ["kind", "n", "r", "max_count", "min_count", "max_abs_dev"]
PAIRCORR_FIELDS = ["kind", "N", "s", "F_value"]


@dataclass(frozen=True)
class WindowRow:
    kind: str
    n: int
    r: int
    min_sum: CircleValue
    max_sum: CircleValue
    ratio_float: float


@dataclass(frozen=True)
class DiscrepancyRow:
    kind: str
    n: int
    r: int
    max_count: int
    min_count: int
    max_abs_dev: int


@dataclass(frozen=True)
class PairCorrRow:
    kind: str
    N: int
    s: Union[Fraction, GoldenNumber]
    F_value: Fraction


def window_row(report: WindowReport) -> WindowRow:
    return WindowRow(
        kind=kind_token(report.kind),
        n=report.n,
        r=report.r,
        min_sum=report.min_sum,
        max_sum=report.max_sum,
        ratio_float=report.ratio_float,
    )


def discrepancy_row(report: DiscrepancyReport) -> DiscrepancyRow:
    return DiscrepancyRow(
        kind=kind_token(report.kind),
        n=report.n,
        r=report.r,
        max_count=report.max_count,
        min_count=report.min_count,
        max_abs_dev=report.max_abs_dev,
    )


def paircorr_row(report: PairCorrelationReport) -> PairCorrRow:
    return PairCorrRow(
        kind=kind_token(report.kind),
        N=report.N,
        s=report.s,
        F_value=report.value,
    )


def _window_dict(row: WindowRow) -> dict:
    return {
        "kind": row.kind,
        "n": row.n,
        "r": row.r,
        "min_sum": render_exact(row.min_sum),
        "max_sum": render_exact(row.max_sum),
        "ratio_float": repr(row.ratio_float),
    }


def _discrepancy_dict(row: DiscrepancyRow) -> dict:
    return {
        "kind": row.kind,
        "n": row.n,
        "r": row.r,
        "max_count": row.max_count,
        "min_count": row.min_count,
        "max_abs_dev": row.max_abs_dev,
    }


def _paircorr_dict(row: PairCorrRow) -> dict:
    return {
        "kind": row.kind,
        "N": row.N,
        "s": render_exact(row.s),
        "F_value": render_exact(row.F_value),
    }


def _write_table(path, fields: Sequence[str], dicts: Iterable[dict], fmt: str):
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(fields))
            writer.writeheader()
            for d in dicts:
                writer.writerow(d)
    elif fmt == "json":
        with open(path, "w") as fh:
            json.dump(list(dicts), fh, indent=1)
            fh.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def write_windows(path, rows: Iterable[WindowRow], fmt: str = "csv") -> None:
    _write_table(path, WINDOW_FIELDS, (_window_dict(r) for r in rows), fmt)


def write_discrepancy(path, rows: Iterable[DiscrepancyRow], fmt: str = "csv") -> None:
    _write_table(path, DISCREPANCY_FIELDS, (_discrepancy_dict(r) for r in rows), fmt)


def write_paircorr(path, rows: Iterable[PairCorrRow], fmt: str = "csv") -> None:
    _write_table(path, PAIRCORR_FIELDS, (_paircorr_dict(r) for r in rows), fmt)


def _read_dicts(path, fmt: str) -> List[dict]:
    if fmt == "csv":
        with open(path, newline="") as fh:
            return list(csv.DictReader(fh))
    if fmt == "json":
        with open(path) as fh:
            return json.load(fh)
    raise ValueError(f"unknown format {fmt!r}")


def read_windows(path, fmt: str = "csv") -> List[WindowRow]:
    return [
        WindowRow(
            kind=d["kind"],
            n=int(d["n"]),
            r=int(d["r"]),
            min_sum=parse_exact(d["min_sum"]),
            max_sum=parse_exact(d["max_sum"]),
            ratio_float=float(d["ratio_float"]),
        )
        for d in _read_dicts(path, fmt)
    ]


def read_discrepancy(path, fmt: str = "csv") -> List[DiscrepancyRow]:
    return [
        DiscrepancyRow(
            kind=d["kind"],
            n=int(d["n"]),
            r=int(d["r"]),
            max_count=int(d["max_count"]),
            min_count=int(d["min_count"]),
            max_abs_dev=int(d["max_abs_dev"]),
        )
        for d in _read_dicts(path, fmt)
    ]


def read_paircorr(path, fmt: str = "csv") -> List[PairCorrRow]:
    rows = []
    for d in _read_dicts(path, fmt):
        s = parse_exact(d["s"])
        F = parse_exact(d["F_value"])
        assert isinstance(F, Fraction)
        rows.append(PairCorrRow(kind=d["kind"], N=int(d["N"]), s=s, F_value=F))
    return rows
