"""Exact circular gap statistics.

Everything here works on sorted prefixes and their induced circular gap
vectors: extremes of r consecutive gaps, point counts over all circular
intervals of length r/n, and pair correlation.  All comparisons are exact
for the rational and quadratic-field sequences; the log sequence carries
its fixed-point error bounds through.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .exactnum import FIXED_ONE, CircleValue, FixedReal, GoldenNumber
from .sequences import Prefix, SequenceKind


class InvalidWindow(ValueError):
    """Window width out of range for the given gap vector or prefix."""


@dataclass(frozen=True)
class GapVector:
    """Circular arc lengths induced by a prefix, in circle order.

    ``gaps[i]`` is the arc from sorted point i to point i+1; the last gap
    wraps through 1 back to the first point.  For exact kinds the gaps sum
    to exactly 1.
    """

    kind: SequenceKind
    n: int
    include_origin: bool
    gaps: Tuple[CircleValue, ...]

    def __len__(self) -> int:
        return len(self.gaps)

    def total(self) -> CircleValue:
        t = self.gaps[0]
        for g in self.gaps[1:]:
            t = t + g
        return t


def gap_vector(prefix: Prefix) -> GapVector:
    """Circular differences of the sorted points; wrap gap closes the circle."""
    pts = prefix.points
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    gaps.append((pts[0] + 1) - pts[-1])
    vec = GapVector(
        kind=prefix.kind,
        n=prefix.n,
        include_origin=prefix.include_origin,
        gaps=tuple(gaps),
    )
    total = vec.total()
    if isinstance(total, FixedReal):
        assert abs(total.mant - FIXED_ONE) <= total.err
    else:
        assert total == 1
    return vec


@dataclass(frozen=True)
class WindowReport:
    """Extremes over all circular windows of r consecutive gaps."""

    kind: SequenceKind
    n: int
    r: int
    min_sum: CircleValue
    min_pos: int
    max_sum: CircleValue
    max_pos: int
    ratio: Optional[Union[Fraction, GoldenNumber]]
    ratio_float: float


def window_extremes(gaps: GapVector, r: int) -> WindowReport:
    """Min and max sum of r consecutive gaps, by one circular sliding pass.

    Positions are gap indices of the window start; ties report the first
    position in scan order.
    """
    m = len(gaps)
    if not 1 <= r <= m:
        raise InvalidWindow(f"window width {r} out of range 1..{m}")
    g = gaps.gaps
    window = g[0]
    for j in range(1, r):
        window = window + g[j]
    min_sum = max_sum = window
    min_pos = max_pos = 0
    for i in range(1, m):
        window = window - g[i - 1] + g[(i + r - 1) % m]
        if window < min_sum:
            min_sum, min_pos = window, i
        if window > max_sum:
            max_sum, max_pos = window, i
    if isinstance(min_sum, FixedReal):
        ratio: Optional[Union[Fraction, GoldenNumber]] = None
        ratio_float = float(max_sum) / float(min_sum)
    else:
        ratio = max_sum / min_sum
        ratio_float = float(ratio)
    return WindowReport(
        kind=gaps.kind,
        n=gaps.n,
        r=r,
        min_sum=min_sum,
        min_pos=min_pos,
        max_sum=max_sum,
        max_pos=max_pos,
        ratio=ratio,
        ratio_float=ratio_float,
    )


@dataclass(frozen=True)
class DiscrepancyReport:
    """Point-count extremes over circular intervals of length r/n."""

    kind: SequenceKind
    n: int
    r: int
    max_count: int
    min_count: int
    max_abs_dev: int


def local_discrepancy(prefix: Prefix, r: int, wrap: bool = True) -> DiscrepancyReport:
    """Extreme point counts over intervals of length r/n.

    Counts use the half-open convention [x, x + r/n).  The maximum over all
    placements is attained with the left endpoint at a point, the minimum
    immediately after a point, so one two-pointer sweep over the sorted
    points with exact threshold comparisons finds both.  With wrap=False
    only placements with x in [0, 1 - r/n] are considered.
    """
    n = prefix.n
    if not 1 <= r < n:
        raise InvalidWindow(f"need 1 <= r < n, got r={r}, n={n}")
    pts = list(prefix.points)
    if isinstance(pts[0], FixedReal):
        length: CircleValue = FixedReal((r * FIXED_ONE) // n, 1)
        one: CircleValue = FixedReal(FIXED_ONE, 0)
    else:
        length = Fraction(r, n)
        one = Fraction(1)
    total = len(pts)
    doubled = pts + [p + 1 for p in pts]

    max_count = 0
    min_count = total
    jl = 0  # strict:   points strictly below the threshold
    jr = 0  # loose:    points at or below the threshold
    for i in range(total):
        limit = doubled[i] + length
        if jl < i:
            jl = i
        if jr < i:
            jr = i
        while jl < i + total and doubled[jl] < limit:
            jl += 1
        while jr < i + total and not limit < doubled[jr]:
            jr += 1
        if wrap or not one < limit:
            max_count = max(max_count, jl - i)
        if wrap or limit < one:
            min_count = min(min_count, jr - i - 1)
    if not wrap:
        # Domain edges x = 0 and x = 1 - r/n are placements of their own.
        c_zero = 0
        while c_zero < total and pts[c_zero] < length:
            c_zero += 1
        max_count = max(max_count, c_zero)
        min_count = min(min_count, c_zero)
        left = one - length
        c_edge = 0
        while c_edge < total and pts[c_edge] < left:
            c_edge += 1
        max_count = max(max_count, total - c_edge)
        min_count = min(min_count, total - c_edge)
    dev = max(abs(max_count - r), abs(min_count - r))
    return DiscrepancyReport(
        kind=prefix.kind,
        n=n,
        r=r,
        max_count=max_count,
        min_count=min_count,
        max_abs_dev=dev,
    )


@dataclass(frozen=True)
class PairCorrelationReport:
    """Normalized count of ordered pairs within circular distance s/N."""

    kind: SequenceKind
    N: int
    s: Union[Fraction, GoldenNumber]
    value: Fraction


def pair_correlation(
    prefix: Prefix, s: Union[Fraction, GoldenNumber]
) -> PairCorrelationReport:
    """(1/N) * #{ordered pairs m != n with circular distance <= s/N}.

    The circular distance is min(d, 1-d).  Requires a prefix without the
    origin point, since the pair statistic counts sequence elements only.
    The scale s is exact (rational, or quadratic-field for thresholds that
    sit exactly at a golden-rotation distance).
    """
    if prefix.include_origin:
        raise ValueError("pair correlation requires a prefix without the origin")
    positive = s.sign() > 0 if isinstance(s, GoldenNumber) else s > 0
    if not positive:
        raise ValueError("scale s must be positive")
    N = prefix.n
    if N == 1:
        return PairCorrelationReport(kind=prefix.kind, N=N, s=s, value=Fraction(0))
    threshold: CircleValue
    threshold = s / N if not isinstance(s, GoldenNumber) else s * Fraction(1, N)
    # Circular distances never exceed 1/2.
    if not threshold < Fraction(1, 2):
        return PairCorrelationReport(
            kind=prefix.kind, N=N, s=s, value=Fraction(N - 1)
        )
    pts = list(prefix.points)
    if isinstance(pts[0], FixedReal):
        if isinstance(s, GoldenNumber):
            raise TypeError("quadratic-field scales pair only with exact prefixes")
        threshold = FixedReal((s.numerator * FIXED_ONE) // (s.denominator * N), 1)
    doubled = pts + [p + 1 for p in pts]
    unordered = 0
    j = 0
    for i in range(N):
        if j < i + 1:
            j = i + 1
        limit = doubled[i] + threshold
        while j < i + N and not limit < doubled[j]:
            j += 1
        unordered += j - i - 1
    return PairCorrelationReport(
        kind=prefix.kind, N=N, s=s, value=Fraction(2 * unordered, N)
    )
