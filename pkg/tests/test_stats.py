import random
from fractions import Fraction

import numpy as np
import pytest

from circlegaps.exactnum import GoldenNumber, golden_frac
from circlegaps.sequences import DEBRUIJN_LOG, KRONECKER_PHI, VDC2, build_prefix
from circlegaps.stats import (
    InvalidWindow,
    gap_vector,
    local_discrepancy,
    pair_correlation,
    window_extremes,
)


def test_gap_vector_examples():
    g = gap_vector(build_prefix(VDC2, 3, True))
    assert g.gaps == (Fraction(1, 4),) * 4

    g4 = gap_vector(build_prefix(VDC2, 4, True))
    assert g4.gaps == (
        Fraction(1, 8),
        Fraction(1, 8),
        Fraction(1, 4),
        Fraction(1, 4),
        Fraction(1, 4),
    )

    # golden prefix without the origin: two arcs, summing to 1 exactly
    g2 = gap_vector(build_prefix(KRONECKER_PHI, 2, False))
    assert g2.gaps == (golden_frac(1) - golden_frac(2), GoldenNumber(1) - golden_frac(1) + golden_frac(2))
    assert g2.total() == 1
    # with the origin the arc multiset gains {2 phi} at the front
    g3 = gap_vector(build_prefix(KRONECKER_PHI, 2, True))
    assert g3.gaps[0] == golden_frac(2)
    assert len({*g3.gaps}) == 2  # 0.236, 0.382, 0.382
    assert g3.total() == 1


def test_gap_vector_log_kind_error_budget():
    g = gap_vector(build_prefix(DEBRUIJN_LOG, 50))
    total = g.total()
    assert abs(total.mant - (1 << 80)) <= total.err


def test_gap_totals_exact_across_sizes():
    for kind in (VDC2, KRONECKER_PHI):
        for n in (1, 2, 17, 256, 1000):
            assert gap_vector(build_prefix(kind, n)).total() == 1


def test_window_extremes_examples():
    g = gap_vector(build_prefix(VDC2, 7, True))  # 2^3-1 points: equispaced
    for r in (1, 3, 8):
        rep = window_extremes(g, r)
        assert rep.ratio == 1

    g4 = gap_vector(build_prefix(VDC2, 4, True))
    rep = window_extremes(g4, 1)
    assert (rep.min_sum, rep.max_sum, rep.ratio) == (Fraction(1, 8), Fraction(1, 4), 2)

    g660 = gap_vector(build_prefix(VDC2, 660, True))
    rep = window_extremes(g660, 53)
    assert rep.min_sum == Fraction(5, 64)
    assert rep.min_pos == 0

    with pytest.raises(InvalidWindow):
        window_extremes(g4, 6)
    with pytest.raises(InvalidWindow):
        window_extremes(g4, 0)


def test_window_extremes_brute_force_random_gap_vectors():
    rng = random.Random(5)
    from circlegaps.stats import GapVector

    for _ in range(40):
        m = rng.randrange(2, 12)
        gaps = [Fraction(rng.randrange(1, 50), 1) for _ in range(m)]
        total = sum(gaps)
        gaps = tuple(g / total for g in gaps)
        vec = GapVector(kind=VDC2, n=m, include_origin=False, gaps=gaps)
        for r in range(1, m + 1):
            rep = window_extremes(vec, r)
            sums = [sum(gaps[(i + j) % m] for j in range(r)) for i in range(m)]
            assert rep.min_sum == min(sums)
            assert rep.max_sum == max(sums)
            assert rep.min_pos == sums.index(min(sums))
            assert rep.max_pos == sums.index(max(sums))


def test_window_extremes_brute_force_all_widths_sequences():
    import numpy as np
    from circlegaps import engines

    for kind in (VDC2, KRONECKER_PHI):
        for n in (5, 23, 64, 96):
            vec = gap_vector(build_prefix(kind, n, True))
            if kind is VDC2:
                pts, k = engines.vdc_sorted_scaled(n, origin=True)
                one = 1 << k
            else:
                pts = engines.kron_sorted_scaled(n, origin=True, n_max_hint=96)
                one = engines.KRON_ONE
            gaps_int = engines.circular_gaps(pts, one)
            doubled = np.concatenate([gaps_int, gaps_int])
            for r in range(1, len(vec) + 1):
                rep = window_extremes(vec, r)
                sums = np.lib.stride_tricks.sliding_window_view(doubled, r)[: len(gaps_int)].sum(axis=1)
                # exact for the dyadic kind; mantissa-tolerance for the golden kind
                tol = 0 if kind is VDC2 else 1 << 20
                assert abs(float(rep.min_sum) * one - int(sums.min())) <= tol + 0.5
                assert abs(float(rep.max_sum) * one - int(sums.max())) <= tol + 0.5


def test_local_discrepancy_examples():
    # equispaced points vs slightly longer windows
    rep = local_discrepancy(build_prefix(VDC2, 7, False), 1)
    assert rep.max_count in (1, 2) and rep.min_count in (0, 1)
    assert rep.max_abs_dev <= 1

    # frozen by the exhaustive left-endpoint oracle
    rep = local_discrepancy(build_prefix(VDC2, 660, False), 8)
    assert (rep.max_count, rep.min_count, rep.max_abs_dev) == (10, 6, 2)

    with pytest.raises(InvalidWindow):
        local_discrepancy(build_prefix(VDC2, 8, False), 8)


def _brute_discrepancy(prefix, r, wrap=True):
    n = prefix.n
    pts = list(prefix.points)
    length = Fraction(r, n)
    cands = []
    for v in pts:
        cands.append(v)
        cands.append((v - length) % 1)
    for u, v in zip(pts, pts[1:] + [pts[0] + 1]):
        cands.append(((u + v) / 2) % 1)
    mx, mn = 0, len(pts)
    for x in cands:
        if not wrap and x + length > 1:
            continue
        closed = sum(1 for v in pts if (v - x) % 1 < length)
        opened = sum(1 for v in pts if Fraction(0) < (v - x) % 1 <= length)
        mx = max(mx, closed)
        mn = min(mn, closed, opened)
    return mx, mn


def test_local_discrepancy_brute_force_vdc():
    for n in (5, 12, 33, 64, 100):
        prefix = build_prefix(VDC2, n, False)
        for r in range(1, min(n, 12)):
            rep = local_discrepancy(prefix, r)
            bmx, bmn = _brute_discrepancy(prefix, r)
            assert (rep.max_count, rep.min_count) == (bmx, bmn), (n, r)


def test_local_discrepancy_nonwrapping_flag():
    prefix = build_prefix(VDC2, 16, False)
    wrapped = local_discrepancy(prefix, 3, wrap=True)
    flat = local_discrepancy(prefix, 3, wrap=False)
    assert flat.max_count <= wrapped.max_count
    assert flat.min_count >= wrapped.min_count
    # brute force restricted to x in [0, 1 - r/n]
    length = Fraction(3, 16)
    pts = list(prefix.points)
    best_hi, best_lo = 0, len(pts)
    grid = [Fraction(i, 512) for i in range(513)]
    for x in grid:
        if x + length > 1:
            continue
        cnt = sum(1 for v in pts if x <= v < x + length)
        best_hi = max(best_hi, cnt)
        best_lo = min(best_lo, cnt)
    assert flat.max_count == best_hi
    assert flat.min_count == best_lo


def test_pair_correlation_examples():
    p1 = build_prefix(KRONECKER_PHI, 1, False)
    assert pair_correlation(p1, Fraction(5)).value == 0

    p2 = build_prefix(KRONECKER_PHI, 2, False)
    gap = golden_frac(1) - golden_frac(2)  # circular distance of the two points
    exact_s = gap * 2  # threshold s/N sits exactly on the distance
    assert pair_correlation(p2, exact_s).value == 1
    just_below = exact_s - Fraction(1, 10**9)
    assert pair_correlation(p2, just_below).value == 0

    with pytest.raises(ValueError):
        pair_correlation(build_prefix(KRONECKER_PHI, 2, True), Fraction(1))
    with pytest.raises(ValueError):
        pair_correlation(p2, Fraction(0))


def test_pair_correlation_brute_force():
    for kind in (VDC2, KRONECKER_PHI):
        for n in (2, 9, 40):
            prefix = build_prefix(kind, n, False)
            pts = list(prefix.points)
            for s in (1, 2, 7):
                rep = pair_correlation(prefix, Fraction(s))
                cnt = 0
                for i in range(n):
                    for j in range(n):
                        if i == j:
                            continue
                        d = pts[j] - pts[i] if not (pts[j] < pts[i]) else pts[i] - pts[j]
                        circ = d if not (Fraction(1, 2) < d) else 1 - d
                        if not (Fraction(s, n) < circ):
                            cnt += 1
                assert rep.value == Fraction(cnt, n), (kind, n, s)


def test_pair_correlation_value_range():
    prefix = build_prefix(VDC2, 16, False)
    assert pair_correlation(prefix, Fraction(1, 100)).value >= 0
    assert pair_correlation(prefix, Fraction(10**6)).value == 15  # N - 1
