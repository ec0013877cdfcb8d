"""Integer kernels behind the large sweeps.

The contract-level operations in :mod:`circlegaps.stats` compare exact
objects one at a time, which is the right tool up to a few thousand points.
The sweeps in the experiment suite need millions of point inspections, so
this module maps each sequence onto plain integers first:

* digit-reversal points with denominator 2^K become int64 values scaled by
  2^K.  Every comparison and window sum on them is exact integer
  arithmetic.
* golden-rotation points become 61-bit fixed-point mantissas derived from
  an exact 96-bit accumulator.  Decisions taken on them are validated
  against a separation margin at run time; the margin is a factor ~2^40
  above the accumulated error for every scale used here, so a violation
  raises :class:`PrecisionError` instead of returning a wrong count.
* the log sequence keeps 80-bit mantissas (exact integers) throughout.

Positions, counts and window sums produced here agree exactly with the
contract operations; the test suite asserts this on overlapping ranges.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exactnum import FIXED_BITS
from .sequences import log2_frac_fixed


class PrecisionError(ArithmeticError):
    """A fixed-point decision fell inside the guaranteed error margin."""


# ---------------------------------------------------------------------------
# Digit-reversal (base 2) points as exact scaled integers


def bit_reversal_table(bits: int) -> np.ndarray:
    """rev[i] = bit-reversal of i over `bits` bits, as int64."""
    rev = np.zeros(1, dtype=np.int64)
    for level in range(1, bits + 1):
        doubled = np.empty(1 << level, dtype=np.int64)
        doubled[0::2] = rev
        doubled[1::2] = rev + (1 << (level - 1))
        rev = doubled
    return rev


def vdc_scaled_points(n: int, scale_bits: Optional[int] = None) -> np.ndarray:
    """Exact values radical_inverse(m, 2) * 2^scale_bits for m = 1..n."""
    bits = n.bit_length()
    if scale_bits is None:
        scale_bits = bits
    if scale_bits < bits or scale_bits > 62:
        raise ValueError(f"scale_bits {scale_bits} out of range for n={n}")
    vals = np.empty(n, dtype=np.int64)
    rev = np.zeros(1, dtype=np.int64)
    for level in range(1, bits + 1):
        doubled = np.empty(1 << level, dtype=np.int64)
        doubled[0::2] = rev
        doubled[1::2] = rev + (1 << (level - 1))
        rev = doubled
        lo = 1 << (level - 1)
        hi = min(n + 1, 1 << level)
        vals[lo - 1 : hi - 1] = rev[lo:hi] << (scale_bits - level)
    return vals


@lru_cache(maxsize=None)
def _vdc_prefix_cached(n: int, scale_bits: int, origin: bool) -> np.ndarray:
    pts = vdc_scaled_points(n, scale_bits)
    if origin:
        pts = np.concatenate([np.zeros(1, dtype=np.int64), pts])
    pts = np.sort(pts)
    pts.setflags(write=False)  # shared across callers
    return pts


def vdc_sorted_scaled(n: int, origin: bool = True, scale_bits: Optional[int] = None):
    """Sorted scaled prefix; returns (points, scale_bits)."""
    bits = n.bit_length()
    if scale_bits is None:
        scale_bits = bits
    if n <= 4096:
        return _vdc_prefix_cached(n, scale_bits, origin), scale_bits
    pts = vdc_scaled_points(n, scale_bits)
    if origin:
        pts = np.concatenate([np.zeros(1, dtype=np.int64), pts])
    return np.sort(pts), scale_bits


# ---------------------------------------------------------------------------
# Golden-rotation points as validated fixed-point mantissas

_B96 = 96
# floor(frac(phi) * 2^96); frac(phi) = (sqrt5 - 1)/2
_PHI_FRAC_96 = (math.isqrt(5 << (2 * _B96)) - (1 << _B96)) // 2
KRON_BITS = 61
_KRON_SHIFT = _B96 - KRON_BITS
KRON_ONE = 1 << KRON_BITS
# Accumulated mantissa error in 2^-61 units stays below this for n <= 2^25.
KRON_ERR_UNITS = 4
# Decisions closer than this to a threshold escalate to PrecisionError.
KRON_MARGIN = 1 << 12


def kron_mant96(n: int) -> List[int]:
    """Exact-accumulator mantissas floor96({m phi}) - e_m, 0 <= e_m <= m."""
    out = [0] * n
    acc = 0
    mask = (1 << _B96) - 1
    for m in range(n):
        acc = (acc + _PHI_FRAC_96) & mask
        out[m] = acc
    return out


@lru_cache(maxsize=8)
def _kron_mant61_upto(n_max: int) -> np.ndarray:
    m96 = kron_mant96(n_max)
    out = np.array([v >> _KRON_SHIFT for v in m96], dtype=np.int64)
    out.setflags(write=False)  # shared across callers
    return out


def kron_scaled_points(n: int, n_max_hint: int = 0) -> np.ndarray:
    """61-bit mantissas of {m phi}, m = 1..n (unsorted, sequence order)."""
    table = _kron_mant61_upto(max(n, n_max_hint))
    return table[:n]


def kron_sorted_scaled(n: int, origin: bool = True, n_max_hint: int = 0) -> np.ndarray:
    pts = kron_scaled_points(n, n_max_hint)
    if origin:
        pts = np.concatenate([np.zeros(1, dtype=np.int64), pts])
    pts = np.sort(pts)
    diffs = np.diff(pts)
    if len(diffs) and int(diffs.min()) <= 2 * KRON_ERR_UNITS:
        raise PrecisionError("golden-rotation points too close to order safely")
    return pts


# ---------------------------------------------------------------------------
# Window sums (exact integer gap arithmetic on scaled points)


def circular_gaps(sorted_pts: np.ndarray, one_scaled: int) -> np.ndarray:
    gaps = np.empty(len(sorted_pts), dtype=np.int64)
    gaps[:-1] = np.diff(sorted_pts)
    gaps[-1] = one_scaled - int(sorted_pts[-1]) + int(sorted_pts[0])
    return gaps


def window_minmax_table(
    gaps: np.ndarray, r_values: Sequence[int]
) -> List[Tuple[int, int, int, int, int]]:
    """For each r: (r, min_sum, min_pos, max_sum, max_pos) over circular windows.

    Sums are int64-exact: gap totals equal the circle scale, far below 2^62.
    """
    m = len(gaps)
    csum = np.zeros(2 * m + 1, dtype=np.int64)
    np.cumsum(np.concatenate([gaps, gaps]), out=csum[1:])
    out = []
    for r in r_values:
        if not 1 <= r <= m:
            continue
        w = csum[r : r + m] - csum[:m]
        kmin = int(np.argmin(w))
        kmax = int(np.argmax(w))
        out.append((r, int(w[kmin]), kmin, int(w[kmax]), kmax))
    return out


# ---------------------------------------------------------------------------
# Short-interval counts via sorted search with exact tie handling


def interval_count_extremes(
    sorted_pts: np.ndarray,
    one_scaled: int,
    n_seq: int,
    r: int,
    exact: bool,
) -> Tuple[int, int]:
    """(max_count, min_count) over circular half-open windows of length r/n.

    Scaled threshold r*one_scaled/n is irrational-free: with exact=True the
    points are exact multiples, so floor arithmetic plus searchsorted side
    selection reproduces the strict/loose comparisons without error.  With
    exact=False a margin check guards every boundary decision.
    """
    npts = len(sorted_pts)
    doubled = np.concatenate([sorted_pts, sorted_pts + one_scaled])
    num = r * one_scaled
    r1 = num // n_seq
    tie = (num % n_seq) == 0
    idx = np.arange(npts, dtype=np.int64)

    thr = sorted_pts + r1
    # strict "<" threshold count: points below x_i + r/n
    strict_side = "left" if tie else "right"
    pos_strict = np.searchsorted(doubled, thr, side=strict_side)
    max_count = int((pos_strict - idx).max())
    # loose "<=" threshold count: points at or below x_i + r/n
    pos_loose = np.searchsorted(doubled, thr, side="right")
    min_count = int((pos_loose - idx - 1).min())

    if not exact:
        _assert_margins(doubled, thr, pos_strict, KRON_MARGIN)
        _assert_margins(doubled, thr, pos_loose, KRON_MARGIN)
    return max_count, min_count


def _assert_margins(doubled, thr, pos, margin):
    up = doubled[np.minimum(pos, len(doubled) - 1)] - thr
    down = thr - doubled[np.maximum(pos - 1, 0)]
    if int(np.minimum(up, down).min()) < margin:
        raise PrecisionError(
            "interval boundary within fixed-point margin; exact fallback required"
        )


def pair_count(
    sorted_pts: np.ndarray, one_scaled: int, s_num: int, s_den: int, exact: bool
) -> int:
    """#ordered pairs at circular distance <= (s_num/s_den)/N on the circle."""
    npts = len(sorted_pts)
    num = s_num * one_scaled
    t1 = num // (s_den * npts)
    if 2 * num >= s_den * npts * one_scaled:
        return npts * (npts - 1)
    doubled = np.concatenate([sorted_pts, sorted_pts + one_scaled])
    thr = sorted_pts + t1
    pos = np.searchsorted(doubled, thr, side="right")
    if not exact:
        _assert_margins(doubled, thr, pos, KRON_MARGIN)
    forward = pos - np.arange(npts, dtype=np.int64) - 1
    return 2 * int(forward.sum())


# ---------------------------------------------------------------------------
# Log-sequence mantissas and per-n gap extremes

_LOG_TIE_ULPS = 1 << (FIXED_BITS - 50)


def log_mantissas(n_max: int) -> List[int]:
    """80-bit mantissas of frac(log2(2k-1)), k = 1..n_max; error <= 2 ulps."""
    return [log2_frac_fixed(2 * k - 1).mant for k in range(1, n_max + 1)]


def _find_fill(nxt: np.ndarray, start: int) -> int:
    # path-halving find over the "next unassigned slot" forest
    i = int(start)
    while nxt[i] != i:
        nxt[i] = nxt[int(nxt[i])]
        i = int(nxt[i])
    return i


def log_gap_extreme_curves(n_max: int) -> Tuple[List[int], List[int], int]:
    """Per-n shortest and longest circular gap mantissas for the log sequence.

    Returns (min_mant, max_mant, tie_flags) where min_mant[n-1] is the
    shortest gap among the first n points in 2^-80 units.  Built offline:
    one global sort, then reverse deletion to recover every gap's lifetime
    [birth, death), then two monotone fills (ascending values for the
    minimum curve, descending for the maximum).  tie_flags counts sorted
    neighbors closer than the 2^-50 tie threshold.
    """
    mants = log_mantissas(n_max)
    hi = np.array([v >> 40 for v in mants], dtype=np.int64)
    lo = np.array([v & ((1 << 40) - 1) for v in mants], dtype=np.int64)
    order = np.lexsort((lo, hi))  # sorted positions -> point index (0-based)
    ties = 0
    for a, b in zip(order, order[1:]):
        d = mants[int(b)] - mants[int(a)]
        if d <= 0:
            raise PrecisionError("duplicate log-sequence mantissas")
        if d <= _LOG_TIE_ULPS:
            ties += 1

    pos_of = np.empty(n_max, dtype=np.int64)
    pos_of[order] = np.arange(n_max, dtype=np.int64)
    nxt_pos = np.roll(np.arange(n_max, dtype=np.int64), -1)
    prv_pos = np.roll(np.arange(n_max, dtype=np.int64), 1)

    full = 1 << FIXED_BITS

    def gap_value(pa: int, pb: int) -> int:
        # circular arc from sorted position pa forward to pb
        va = mants[int(order[pa])]
        vb = mants[int(order[pb])]
        return vb - va if pb > pa else vb - va + full

    births: List[int] = []
    deaths: List[int] = []
    values: List[int] = []

    # final configuration: every adjacency alive until beyond n_max
    for p in range(n_max):
        q = int(nxt_pos[p])
        if q == p:  # n_max == 1: the lone point keeps the whole circle
            births.append(1)
        else:
            births.append(max(int(order[p]) + 1, int(order[q]) + 1))
        deaths.append(n_max + 1)
        values.append(full if q == p else gap_value(p, q))

    # reverse deletion: removing point k merges its two arcs; the merged
    # arc was alive from the later of its endpoints until step k
    for k in range(n_max, 1, -1):
        p = int(pos_of[k - 1])
        left = int(prv_pos[p])
        right = int(nxt_pos[p])
        if left == right:
            # two points remained; the merge restores the full circle
            births.append(int(order[left]) + 1)
            deaths.append(k)
            values.append(full)
        else:
            births.append(max(int(order[left]) + 1, int(order[right]) + 1))
            deaths.append(k)
            values.append(gap_value(left, right))
        nxt_pos[left] = right
        prv_pos[right] = left

    births_a = np.array(births, dtype=np.int64)
    deaths_a = np.array(deaths, dtype=np.int64)
    vhi = np.array([v >> 40 for v in values], dtype=np.int64)
    vlo = np.array([v & ((1 << 40) - 1) for v in values], dtype=np.int64)
    by_value = np.lexsort((vlo, vhi))

    min_curve: List[int] = [0] * (n_max + 1)
    max_curve: List[int] = [0] * (n_max + 1)
    for target, scan in ((min_curve, by_value), (max_curve, by_value[::-1])):
        nxt = np.arange(n_max + 2, dtype=np.int64)
        for gid in scan:
            g = int(gid)
            i = _find_fill(nxt, births_a[g])
            d = int(deaths_a[g])
            v = values[g]
            while i < d:
                target[i] = v
                nxt[i] = i + 1
                i = _find_fill(nxt, i + 1)
    return min_curve[1:], max_curve[1:], ties
