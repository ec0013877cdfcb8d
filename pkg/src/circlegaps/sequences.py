"""Point generators and exact sorted prefixes.

Three constructions are supported:

* digit reversal in an integer base b >= 2 (values are exact rationals),
* fractional parts of multiples of the golden ratio (exact in Q(sqrt5)),
* frac(log2(2k-1)), carried as 80-bit fixed-point values with error bounds.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

import mpmath

from .exactnum import (
    FIXED_BITS,
    CircleValue,
    FixedReal,
    GoldenNumber,
    golden_frac,
)


@dataclass(frozen=True)
class VanDerCorput:
    base: int = 2

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")


@dataclass(frozen=True)
class KroneckerGolden:
    pass


@dataclass(frozen=True)
class DeBruijnErdosLog:
    pass


SequenceKind = Union[VanDerCorput, KroneckerGolden, DeBruijnErdosLog]

VDC2 = VanDerCorput(2)
KRONECKER_PHI = KroneckerGolden()
DEBRUIJN_LOG = DeBruijnErdosLog()


def kind_token(kind: SequenceKind) -> str:
    """Stable text form of a sequence kind, used in CSV rows and the CLI."""
    if isinstance(kind, VanDerCorput):
        return "vdc2" if kind.base == 2 else f"vdc:{kind.base}"
    if isinstance(kind, KroneckerGolden):
        return "kronecker-phi"
    if isinstance(kind, DeBruijnErdosLog):
        return "debruijn-log"
    raise TypeError(f"unknown sequence kind {kind!r}")


def parse_kind(token: str) -> SequenceKind:
    token = token.strip().lower()
    if token == "vdc2":
        return VDC2
    if token.startswith("vdc:"):
        return VanDerCorput(int(token[4:]))
    if token == "kronecker-phi":
        return KRONECKER_PHI
    if token == "debruijn-log":
        return DEBRUIJN_LOG
    raise ValueError(f"unknown sequence kind token {token!r}")


class DuplicatePoint(ValueError):
    """Two generated points compared equal; signals a generator bug."""


class PrecisionWarning(UserWarning):
    """An ordering decision fell inside the fixed-point error band."""


# Sorted log-sequence points closer than 2^-TIE_BITS are flagged rather
# than silently ordered.
TIE_BITS = 50
_TIE_ULPS = 1 << (FIXED_BITS - TIE_BITS)


def radical_inverse(m: int, base: int = 2) -> Fraction:
    """Digit reversal of m in the given base, placed after the radix point.

    radical_inverse(6, 3): 6 = (2 0) in base 3, reversed digits give
    0/3 + 2/9 = 2/9.
    """
    if m < 1:
        raise ValueError(f"index must be >= 1, got {m}")
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    num = 0
    den = 1
    while m:
        m, digit = divmod(m, base)
        num = num * base + digit
        den *= base
    return Fraction(num, den)


_LOG_WORK_PREC = FIXED_BITS + 30


def log2_frac_fixed(m: int) -> FixedReal:
    """frac(log2 m) for an integer m >= 1 as an 80-bit fixed-point value.

    The integer part of log2 m is m.bit_length() - 1, so the fractional
    part is log2 of the exactly-representable mantissa m / 2^(bitlen-1).
    Worst-case error: one rounding of mpmath.log at 110 bits plus the final
    floor, safely under 2 ulps of 2^-80.
    """
    if m < 1:
        raise ValueError(f"argument must be >= 1, got {m}")
    if m & (m - 1) == 0:
        return FixedReal(0, 0)
    with mpmath.workprec(_LOG_WORK_PREC):
        y = mpmath.log(mpmath.mpf(m) / (1 << (m.bit_length() - 1)), 2)
        mant = int(mpmath.floor(y * (1 << FIXED_BITS)))
    return FixedReal(mant, 2)


def sequence_point(kind: SequenceKind, m: int) -> CircleValue:
    """The m-th point (m >= 1) of the chosen sequence, in [0, 1)."""
    if m < 1:
        raise ValueError(f"index must be >= 1, got {m}")
    if isinstance(kind, VanDerCorput):
        return radical_inverse(m, kind.base)
    if isinstance(kind, KroneckerGolden):
        return golden_frac(m)
    if isinstance(kind, DeBruijnErdosLog):
        return log2_frac_fixed(2 * m - 1)
    raise TypeError(f"unknown sequence kind {kind!r}")


def _zero_value(kind: SequenceKind) -> CircleValue:
    if isinstance(kind, VanDerCorput):
        return Fraction(0)
    if isinstance(kind, KroneckerGolden):
        return GoldenNumber(0, 0)
    return FixedReal(0, 0)


def default_origin(kind: SequenceKind) -> bool:
    """Resolve the origin convention per sequence.

    The splitting analyses set x_0 = 0 for the digit-reversal and golden
    rotations; the log sequence already starts at 0 (its first point is
    frac(log2 1)), so adding a second origin would be a duplicate.
    """
    return not isinstance(kind, DeBruijnErdosLog)


@dataclass(frozen=True)
class Prefix:
    """The first n points of a sequence, sorted on the circle.

    ``points`` are strictly increasing in [0, 1); ``index_map[i]`` is the
    original 1-based sequence index of ``points[i]`` (0 marks the origin).
    """

    kind: SequenceKind
    n: int
    include_origin: bool
    points: Tuple[CircleValue, ...]
    index_map: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.points)

    def csv_rows(self):
        from .reports import render_exact

        for pos, (value, idx) in enumerate(zip(self.points, self.index_map)):
            yield {
                "sorted_pos": pos,
                "seq_index": idx,
                "value_exact": render_exact(value),
                "value_float": repr(float(value)),
            }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(
                fh, fieldnames=["sorted_pos", "seq_index", "value_exact", "value_float"]
            )
            writer.writeheader()
            for row in self.csv_rows():
                writer.writerow(row)


def build_prefix(
    kind: SequenceKind, n: int, include_origin: Optional[bool] = None
) -> Prefix:
    """Sorted prefix of the first n sequence points, exact per kind."""
    if n < 1:
        raise ValueError(f"prefix size must be >= 1, got {n}")
    if include_origin is None:
        include_origin = default_origin(kind)
    pairs = [(sequence_point(kind, m), m) for m in range(1, n + 1)]
    if include_origin:
        pairs.append((_zero_value(kind), 0))

    if isinstance(kind, DeBruijnErdosLog):
        pairs.sort(key=lambda pv: pv[0].mant)
        for (u, ui), (v, vi) in zip(pairs, pairs[1:]):
            if u.mant == v.mant:
                raise DuplicatePoint(f"points {ui} and {vi} coincide")
            if v.mant - u.mant <= _TIE_ULPS:
                warnings.warn(
                    f"points {ui} and {vi} are closer than 2^-{TIE_BITS}; "
                    "their order is below the precision guarantee",
                    PrecisionWarning,
                    stacklevel=2,
                )
    else:
        pairs.sort(key=lambda pv: pv[0])
        for (u, ui), (v, vi) in zip(pairs, pairs[1:]):
            if u == v:
                raise DuplicatePoint(f"points {ui} and {vi} coincide")

    return Prefix(
        kind=kind,
        n=n,
        include_origin=include_origin,
        points=tuple(p for p, _ in pairs),
        index_map=tuple(i for _, i in pairs),
    )
