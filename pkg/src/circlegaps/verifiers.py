"""Machine checks for the combinatorial structure of the base-2
digit-reversal sequence, plus the Fibonacci-side toolkit.

Each verifier is exhaustive over its stated parameter range and works in
exact integer arithmetic.  They return plain booleans; the sweep variants
used by the aggregated verification report collect counterexamples
instead of stopping at the first failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .engines import circular_gaps, vdc_sorted_scaled
from .exactnum import PHI, GoldenNumber, golden_frac
from .sequences import radical_inverse


class MalformedBits(ValueError):
    """Bit-string arguments with inconsistent lengths."""


class InvalidRange(ValueError):
    """Matching parameters outside the 2^t - 1 prefix."""


# ---------------------------------------------------------------------------
# Canonical dyadic intervals and their split indices


@dataclass(frozen=True)
class CanonicalInterval:
    """Dyadic interval [a/2^t, (a+1)/2^t]."""

    t: int
    a: int

    def __post_init__(self):
        if self.t < 0 or not 0 <= self.a < (1 << self.t):
            raise InvalidRange(f"no canonical interval t={self.t}, a={self.a}")

    def left(self) -> Fraction:
        return Fraction(self.a, 1 << self.t)

    def right(self) -> Fraction:
        return Fraction(self.a + 1, 1 << self.t)

    def midpoint(self) -> Fraction:
        return Fraction(2 * self.a + 1, 1 << (self.t + 1))


def _bitrev(value: int, bits: int) -> int:
    out = 0
    for _ in range(bits):
        out = (out << 1) | (value & 1)
        value >>= 1
    return out


def split_index(interval: CanonicalInterval) -> int:
    """Sequence index of the first point strictly inside the interval.

    That point is the interval midpoint: the index is the (t+1)-bit
    reversal of the midpoint numerator 2a+1.  Every earlier index has at
    most t digits or reverses to a numerator outside (a, a+1).
    """
    return _bitrev(2 * interval.a + 1, interval.t + 1)


def _bits_to_int_msb(bits: str) -> int:
    value = 0
    for ch in bits:
        if ch not in "01":
            raise MalformedBits(f"bit strings may contain only 0/1, got {bits!r}")
        value = (value << 1) | (ch == "1")
    return value


def verify_split_precedence(t: int, a_bits: str, b_bits: str, c_bits: str) -> bool:
    """Split-order comparison for endpoints written A0C and B1C.

    The digit string of a left endpoint is its binary fraction expansion,
    t digits after the point (equivalently the endpoint numerator read
    most-significant-bit first).  The interval whose string carries the 0
    between A and C is split strictly earlier, for every A, B of equal
    length: the two split indices share the high bits 1,rev(C) and then
    differ at the 0/1 slot before rev(A)/rev(B) can matter.
    """
    if len(a_bits) != len(b_bits):
        raise MalformedBits("A and B must have equal length")
    if len(a_bits) + 1 + len(c_bits) != t:
        raise MalformedBits(f"|A|+1+|C| must equal t={t}")
    cs = len(c_bits)
    a0c = (_bits_to_int_msb(a_bits) << (cs + 1)) | _bits_to_int_msb(c_bits)
    b1c = (
        (_bits_to_int_msb(b_bits) << (cs + 1))
        | (1 << cs)
        | _bits_to_int_msb(c_bits)
    )
    return split_index(CanonicalInterval(t, a0c)) < split_index(
        CanonicalInterval(t, b1c)
    )


def split_precedence_counterexamples(t_max: int) -> List[dict]:
    """Exhaustive split-precedence check for all t <= t_max, all (A, B, C).

    Endpoint numerators sharing their low bits C differ only in the A/B
    block above the distinguishing bit, so per level the quantifier over
    (A, B) collapses to a max/min comparison along the high-bit axis and
    the whole sweep vectorizes.
    """
    bad: List[dict] = []
    for t in range(1, t_max + 1):
        splits = np.array(
            [split_index(CanonicalInterval(t, a)) for a in range(1 << t)],
            dtype=np.int64,
        )
        for cs in range(t):
            grouped = splits.reshape(1 << (t - cs - 1), 2, 1 << cs)
            worst_zero = grouped[:, 0, :].max(axis=0)
            best_one = grouped[:, 1, :].min(axis=0)
            if not (worst_zero < best_one).all():
                for c in np.nonzero(worst_zero >= best_one)[0]:
                    bad.append({"t": t, "bit_pos_from_low": cs, "c_low_bits": int(c)})
    return bad


# ---------------------------------------------------------------------------
# The recursive even/odd matching between an interior run and the
# left-aligned run of equal length


@dataclass(frozen=True)
class ElementMatching:
    """Bijection between the level-t arcs of [x_g, x_{g+j}] and [0, x_j].

    With 2^t - 1 points plus the origin the sorted points form the full
    dyadic grid, so arcs are canonical intervals indexed by their left
    endpoint numerator: sources are g..g+j-1, targets 0..j-1.  ``pairs``
    maps target arc -> source arc.
    """

    t: int
    g: int
    j: int
    pairs: Tuple[Tuple[int, int], ...]

    def is_valid(self) -> bool:
        targets = [p[0] for p in self.pairs]
        sources = [p[1] for p in self.pairs]
        if sorted(targets) != list(range(self.j)):
            return False
        if sorted(sources) != list(range(self.g, self.g + self.j)):
            return False
        return all(
            split_index(CanonicalInterval(self.t, tgt))
            <= split_index(CanonicalInterval(self.t, src))
            for tgt, src in self.pairs
        )


def _matching_pairs(t: int, g: int, j: int) -> List[Tuple[int, int]]:
    if j == 0:
        return []
    if t == 0:
        # single arc [0, 1]
        return [(0, 0)]
    evens_src = [a for a in range(g, g + j) if a % 2 == 0]
    odds_src = [a for a in range(g, g + j) if a % 2 == 1]
    e_src = len(evens_src)
    o_src = len(odds_src)
    e_tgt = (j + 1) // 2
    g_even = (g + 1) // 2
    g_odd = g // 2

    pairs: List[Tuple[int, int]] = []
    sub_even = _matching_pairs(t - 1, g_even, e_src)
    pairs.extend((2 * tgt, 2 * src) for tgt, src in sub_even)
    sub_odd = _matching_pairs(t - 1, g_odd, o_src)
    if e_src == e_tgt:
        pairs.extend((2 * tgt + 1, 2 * src + 1) for tgt, src in sub_odd)
    else:
        # Unequal parity split (g and j both odd): the target block has one
        # more even arc and one fewer odd arc.  The odd recursion then hands
        # one source the out-of-range target arc j; reassign it to the last
        # even arc j-1, which the even recursion left unused and which is
        # split before arc j.
        for tgt, src in sub_odd:
            target = 2 * tgt + 1
            if target == j:
                target = j - 1
            pairs.append((target, 2 * src + 1))
    return pairs


def build_element_matching(t: int, g: int, j: int) -> ElementMatching:
    """Construct the recursive even/odd matching for a 2^t - 1 prefix."""
    if t < 0 or g < 0 or j < 0 or g + j > (1 << t):
        raise InvalidRange(f"matching parameters out of range: t={t}, g={g}, j={j}")
    return ElementMatching(t=t, g=g, j=j, pairs=tuple(_matching_pairs(t, g, j)))


def matching_counterexamples(
    t_max: int, g_limit: Optional[int] = None, j_limit: int = 32
) -> List[dict]:
    bad = []
    for t in range(0, t_max + 1):
        size = 1 << t
        g_hi = size if g_limit is None else min(g_limit + 1, size)
        for g in range(g_hi):
            for j in range(0, min(j_limit, size - g) + 1):
                if not build_element_matching(t, g, j).is_valid():
                    bad.append({"t": t, "g": g, "j": j})
    return bad


# ---------------------------------------------------------------------------
# Window-sum dominance sweeps on scaled integers


def _window_sums(pts: np.ndarray, scale_one: int) -> Tuple[np.ndarray, np.ndarray]:
    gaps = circular_gaps(pts, scale_one)
    csum = np.zeros(2 * len(gaps) + 1, dtype=np.int64)
    np.cumsum(np.concatenate([gaps, gaps]), out=csum[1:])
    return gaps, csum


def verify_extremal_windows(n: int, r: Optional[int] = None) -> bool:
    """Every circular sum of r consecutive arcs of the origin-rooted prefix
    is at least the left block [0, x_r] and at most the right block
    [x_{n+1-r}, 1], exactly.

    With r=None all widths 1..n are checked.
    """
    return not extremal_window_counterexamples(n, r, stop_early=True)


def extremal_window_counterexamples(
    n: int, r: Optional[int] = None, stop_early: bool = False
) -> List[dict]:
    pts, k = vdc_sorted_scaled(n, origin=True)
    one = 1 << k
    count = len(pts)  # n + 1 points, n + 1 circular arcs
    _, csum = _window_sums(pts, one)
    r_list = range(1, n + 1) if r is None else [r]
    bad: List[dict] = []
    for width in r_list:
        sums = csum[width : width + count] - csum[:count]
        low = int(pts[width])
        high = one - int(pts[n + 1 - width])
        if sums.min() < low or sums.max() > high:
            where = np.nonzero((sums < low) | (sums > high))[0]
            bad.append({"n": n, "r": width, "i": int(where[0])})
            if stop_early:
                return bad
    return bad


def verify_shift_monotonicity(n: int, r: Optional[int] = None) -> bool:
    """At every point x_t = a/2^(k+1) with odd a, the window [x_t, x_{t+r}]
    is at least as long as [x_{t-1}, x_{t+r-1}], exactly."""
    return not shift_monotonicity_counterexamples(n, r, stop_early=True)


def shift_monotonicity_counterexamples(
    n: int, r: Optional[int] = None, stop_early: bool = False
) -> List[dict]:
    k = n.bit_length() - 1  # floor(log2 n)
    pts, scale_bits = vdc_sorted_scaled(n, origin=True, scale_bits=k + 1)
    one = 1 << (k + 1)
    count = len(pts)
    _, csum = _window_sums(pts, one)
    odd_t = np.nonzero(pts & 1)[0]
    if len(odd_t) == 0:
        return []
    r_list = range(1, n + 1) if r is None else [r]
    bad: List[dict] = []
    for width in r_list:
        sums = csum[width : width + count] - csum[:count]
        if (sums[odd_t] < sums[odd_t - 1]).any():
            t_bad = int(odd_t[np.nonzero(sums[odd_t] < sums[odd_t - 1])[0][0]])
            bad.append({"n": n, "r": width, "t": t_bad})
            if stop_early:
                return bad
    return bad


# ---------------------------------------------------------------------------
# Self-similarity of the base-2 digit-reversal sequence


def verify_self_similarity(k: int, a: Optional[int] = None) -> bool:
    """Exact identity (2^k / 2^(a+1)) * x(2^k + m 2^(k-a-1)) = x(m) + 2^-(a+2)
    for all 1 <= m < 2^(a+1), where x(m) is the m-th digit-reversal value.

    Index convention pinned by the k=2, a=0, m=1 oracle: x(6) = 3/8 and
    2 * 3/8 = x(1) + 1/4 = 3/4.
    """
    a_list = range(k) if a is None else [a]
    for aa in a_list:
        if not 0 <= aa < k:
            raise InvalidRange(f"need 0 <= a < k, got a={aa}, k={k}")
        for m in range(1, 1 << (aa + 1)):
            idx = (1 << k) + m * (1 << (k - aa - 1))
            lhs = radical_inverse(idx, 2) * (1 << k) / (1 << (aa + 1))
            rhs = radical_inverse(m, 2) + Fraction(1, 1 << (aa + 2))
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# Fibonacci block equidistribution and the greedy decomposition


def fibonacci(k: int) -> int:
    """F_k with F_1 = F_2 = 1."""
    if k < 1:
        raise ValueError(f"Fibonacci index must be >= 1, got {k}")
    a, b = 1, 1
    for _ in range(k - 2):
        a, b = b, a + b
    return b if k > 1 else a


def fibonacci_prefix_deviation(k: int) -> GoldenNumber:
    """Supremum of |#(X ∩ I) - F_k * len(I)| over all circular intervals I,
    where X = {0, {phi}, ..., {(F_k - 1) phi}}.

    Writing u_i = i - F_k * p_i over the sorted points, closed intervals
    maximize count - F_k*len at point pairs and open intervals maximize the
    negative side, and both suprema equal max u - min u + 1.  The u_i are
    exact elements of Q(sqrt5), so the returned value is exact.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    n = fibonacci(k)
    pts = [GoldenNumber(0, 0)] + [golden_frac(m) for m in range(1, n)]
    pts.sort()
    u = [i - (p * n) for i, p in enumerate(pts)]
    return (max(u) - min(u)) + 1


@dataclass(frozen=True)
class ZeckendorfDecomposition:
    """Greedy Fibonacci decomposition, optionally truncated."""

    value: int
    parts: Tuple[int, ...]
    remainder: int


def zeckendorf(value: int, max_parts: Optional[int] = None) -> ZeckendorfDecomposition:
    """Greedily remove the largest Fibonacci number, max_parts times or
    until nothing remains."""
    if value < 1:
        raise ValueError(f"need a positive integer, got {value}")
    fibs = [1, 2]
    while fibs[-1] <= value:
        fibs.append(fibs[-1] + fibs[-2])
    parts: List[int] = []
    rem = value
    while rem > 0 and (max_parts is None or len(parts) < max_parts):
        f = next(f for f in reversed(fibs) if f <= rem)
        parts.append(f)
        rem -= f
    return ZeckendorfDecomposition(value=value, parts=tuple(parts), remainder=rem)


def fibonacci_ratio_gap_ok(k: int) -> bool:
    """|F_{k+1}/F_k - phi| <= 1/F_k^2, checked exactly in Q(sqrt5)."""
    fk = fibonacci(k)
    fk1 = fibonacci(k + 1)
    gap = GoldenNumber(Fraction(fk1, fk), 0) - PHI
    bound = GoldenNumber(Fraction(1, fk * fk), 0)
    return (bound - abs(gap)).sign() >= 0


def zeckendorf_remainder_counterexamples(
    samples: int = 10_000, max_value: int = 10**12, seed: int = 20240917
) -> List[dict]:
    """Random audit of the truncated-greedy remainder bound 2 * last part."""
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        value = rng.randrange(1, max_value)
        cap = rng.randrange(1, 12)
        dec = zeckendorf(value, max_parts=cap)
        if dec.parts and dec.remainder > 2 * dec.parts[-1]:
            bad.append({"value": value, "max_parts": cap})
    return bad
