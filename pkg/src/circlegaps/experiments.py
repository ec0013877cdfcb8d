"""Sweep drivers, constant fitting, and the aggregated verification report.

The sweeps compute one report row per (n, r) pair.  For the base-2
digit-reversal and golden-rotation sequences they run on the integer
kernels and reconstruct exact extreme values from the winning window
positions; other kinds fall back to the one-at-a-time exact operations.
"""

from __future__ import annotations

import math
import multiprocessing
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import engines, verifiers
from .exactnum import FIXED_BITS, GoldenNumber, golden_frac
from .sequences import (
    KroneckerGolden,
    PrecisionWarning,
    SequenceKind,
    VanDerCorput,
    build_prefix,
    default_origin,
)
from .stats import (
    DiscrepancyReport,
    PairCorrelationReport,
    WindowReport,
    gap_vector,
    local_discrepancy,
    pair_correlation,
    window_extremes,
)


class InsufficientData(ValueError):
    """Too few usable rows to fit a constant."""


@dataclass
class SweepConfig:
    kind: SequenceKind
    n_values: Sequence[int]
    r_values: Sequence[int]
    include_origin: Optional[bool] = None
    fmt: str = "csv"
    out: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        if not self.n_values or not self.r_values:
            raise ValueError("n_values and r_values must be nonempty")
        if min(self.r_values) < 1:
            raise ValueError("window widths must be positive")
        if max(self.r_values) >= min(self.n_values):
            raise ValueError("every r must stay below the smallest n")
        # include_origin=None is resolved per sweep: window statistics root
        # the circle at 0 by default, interval counting does not


# ---------------------------------------------------------------------------
# window-ratio sweep


def _golden_sorted_point(sorted_idx: np.ndarray, pos: int) -> GoldenNumber:
    count = len(sorted_idx)
    turns, pos = divmod(pos, count)
    m = int(sorted_idx[pos])
    base = golden_frac(m) if m else GoldenNumber(0, 0)
    return base + turns


def _window_rows_for_n(
    kind: SequenceKind, n: int, r_values: Sequence[int], origin: bool
) -> List[WindowReport]:
    rows: List[WindowReport] = []
    if isinstance(kind, VanDerCorput) and kind.base == 2 and n.bit_length() <= 62:
        pts, k = engines.vdc_sorted_scaled(n, origin=origin)
        one = 1 << k
        gaps = engines.circular_gaps(pts, one)
        for r, mn, mnpos, mx, mxpos in engines.window_minmax_table(gaps, r_values):
            min_sum = Fraction(mn, one)
            max_sum = Fraction(mx, one)
            ratio = max_sum / min_sum
            rows.append(
                WindowReport(kind, n, r, min_sum, mnpos, max_sum, mxpos, ratio, float(ratio))
            )
        return rows
    if isinstance(kind, KroneckerGolden):
        mant = engines.kron_scaled_points(n)
        if origin:
            mant = np.concatenate([np.zeros(1, dtype=np.int64), mant])
            seq_idx = np.concatenate([np.zeros(1, dtype=np.int64), np.arange(1, n + 1)])
        else:
            seq_idx = np.arange(1, n + 1)
        order = np.argsort(mant, kind="stable")
        pts = mant[order]
        sorted_idx = seq_idx[order]
        gaps = engines.circular_gaps(pts, engines.KRON_ONE)
        for r, mn, mnpos, mx, mxpos in engines.window_minmax_table(gaps, r_values):
            min_sum = _golden_sorted_point(sorted_idx, mnpos + r) - _golden_sorted_point(
                sorted_idx, mnpos
            )
            max_sum = _golden_sorted_point(sorted_idx, mxpos + r) - _golden_sorted_point(
                sorted_idx, mxpos
            )
            # Guard the position->value reconstruction: a wrong window would
            # be off by at least one arc (>= 2^53 units for n <= 1e5), while
            # float conversion error of the exact value stays ~|p|*eps*2^61,
            # far below 2^40.
            assert abs(float(min_sum) * engines.KRON_ONE - mn) < (1 << 40)
            assert abs(float(max_sum) * engines.KRON_ONE - mx) < (1 << 40)
            ratio = max_sum / min_sum
            rows.append(
                WindowReport(kind, n, r, min_sum, mnpos, max_sum, mxpos, ratio, float(ratio))
            )
        return rows
    gaps_exact = gap_vector(build_prefix(kind, n, origin))
    for r in r_values:
        if 1 <= r <= len(gaps_exact):
            rows.append(window_extremes(gaps_exact, r))
    return rows


def _window_task(args) -> List[WindowReport]:
    return _window_rows_for_n(*args)


def _run_pool(task_fn, tasks: List[tuple], jobs: int) -> List[list]:
    if jobs <= 1 or len(tasks) <= 1:
        return [task_fn(t) for t in tasks]
    with multiprocessing.Pool(jobs) as pool:
        return pool.map(task_fn, tasks, chunksize=1)


def run_ratio_sweep(config: SweepConfig) -> List[WindowReport]:
    origin = (
        config.include_origin
        if config.include_origin is not None
        else default_origin(config.kind)
    )
    tasks = [(config.kind, n, tuple(config.r_values), origin) for n in config.n_values]
    rows: List[WindowReport] = []
    for chunk in _run_pool(_window_task, tasks, config.jobs):
        rows.extend(chunk)
    _maybe_write(config, rows, "windows")
    return rows


# ---------------------------------------------------------------------------
# short-interval discrepancy sweep


def _discrepancy_rows_for_n(
    kind: SequenceKind, n: int, r_values: Sequence[int], origin: bool
) -> List[DiscrepancyReport]:
    rows: List[DiscrepancyReport] = []
    engine = None
    if isinstance(kind, VanDerCorput) and kind.base == 2 and n.bit_length() <= 44:
        pts, k = engines.vdc_sorted_scaled(n, origin=origin)
        engine = (pts, 1 << k, True)
    elif isinstance(kind, KroneckerGolden):
        pts = engines.kron_sorted_scaled(n, origin=origin)
        engine = (pts, engines.KRON_ONE, False)
    if engine is not None:
        pts, one, exact = engine
        for r in r_values:
            if not 1 <= r < n:
                continue
            mx, mn = engines.interval_count_extremes(pts, one, n, r, exact)
            dev = max(abs(mx - r), abs(mn - r))
            rows.append(DiscrepancyReport(kind, n, r, mx, mn, dev))
        return rows
    prefix = build_prefix(kind, n, origin)
    return [local_discrepancy(prefix, r) for r in r_values if 1 <= r < n]


def _discrepancy_task(args) -> List[DiscrepancyReport]:
    return _discrepancy_rows_for_n(*args)


def run_discrepancy_sweep(config: SweepConfig) -> List[DiscrepancyReport]:
    origin = (
        config.include_origin
        if config.include_origin is not None
        else False
    )
    tasks = [(config.kind, n, tuple(config.r_values), origin) for n in config.n_values]
    rows: List[DiscrepancyReport] = []
    for chunk in _run_pool(_discrepancy_task, tasks, config.jobs):
        rows.extend(chunk)
    _maybe_write(config, rows, "discrepancy")
    return rows


# ---------------------------------------------------------------------------
# pair correlation sweep


def _paircorr_rows_for_n(
    kind: SequenceKind, n: int, s_values: Sequence[int]
) -> List[PairCorrelationReport]:
    rows: List[PairCorrelationReport] = []
    engine = None
    if isinstance(kind, VanDerCorput) and kind.base == 2 and n.bit_length() <= 44:
        pts, k = engines.vdc_sorted_scaled(n, origin=False)
        engine = (pts, 1 << k, True)
    elif isinstance(kind, KroneckerGolden):
        pts = engines.kron_sorted_scaled(n, origin=False)
        engine = (pts, engines.KRON_ONE, False)
    if engine is not None:
        pts, one, exact = engine
        for s in s_values:
            count = engines.pair_count(pts, one, int(s), 1, exact)
            rows.append(
                PairCorrelationReport(kind, n, Fraction(int(s)), Fraction(count, n))
            )
        return rows
    prefix = build_prefix(kind, n, include_origin=False)
    return [pair_correlation(prefix, Fraction(int(s))) for s in s_values]


def _paircorr_task(args) -> List[PairCorrelationReport]:
    return _paircorr_rows_for_n(*args)


def run_paircorr_sweep(config: SweepConfig) -> List[PairCorrelationReport]:
    tasks = [(config.kind, n, tuple(config.r_values)) for n in config.n_values]
    rows: List[PairCorrelationReport] = []
    for chunk in _run_pool(_paircorr_task, tasks, config.jobs):
        rows.extend(chunk)
    _maybe_write(config, rows, "paircorr")
    return rows


def _maybe_write(config: SweepConfig, rows, table: str) -> None:
    if config.out is None:
        return
    from . import reports

    if table == "windows":
        reports.write_windows(config.out, [reports.window_row(r) for r in rows], config.fmt)
    elif table == "discrepancy":
        reports.write_discrepancy(
            config.out, [reports.discrepancy_row(r) for r in rows], config.fmt
        )
    else:
        reports.write_paircorr(
            config.out, [reports.paircorr_row(r) for r in rows], config.fmt
        )


# ---------------------------------------------------------------------------
# constant fitting

FIT_QUANTITIES = ("ratio_bound", "discrepancy_bound", "paircorr_bound")


@dataclass(frozen=True)
class FitResult:
    quantity: str
    fitted_c: float
    r_range: Tuple[int, ...]
    n_max: int
    residuals: Dict[int, float]


def _row_ratio(row) -> float:
    ratio = getattr(row, "ratio", None)
    if ratio is not None:
        return float(ratio)
    return float(row.max_sum) / float(row.min_sum)


def fit_constant(rows: Sequence, quantity: str) -> FitResult:
    """Envelope constant for the chosen bound, from per-r maxima over n.

    ratio_bound:       (ratio - 1) * r / log r        over window rows
    discrepancy_bound: max_abs_dev / log r            over discrepancy rows
    paircorr_bound:    |F - 2s| / log s               over pair rows

    Rows at r (or s) = 1 carry no information on the log scale and are
    dropped; at least three distinct scales must remain.
    """
    if quantity not in FIT_QUANTITIES:
        raise ValueError(f"unknown fit quantity {quantity!r}")
    per_r: Dict[int, float] = {}
    n_max = 0
    for row in rows:
        if quantity == "ratio_bound":
            r = row.r
            value = (_row_ratio(row) - 1.0) * r / math.log(r) if r >= 2 else None
            n_max = max(n_max, row.n)
        elif quantity == "discrepancy_bound":
            r = row.r
            value = row.max_abs_dev / math.log(r) if r >= 2 else None
            n_max = max(n_max, row.n)
        else:
            r = int(row.s) if isinstance(row.s, Fraction) else 0
            value = (
                abs(float(row.F_value) - 2.0 * r) / math.log(r) if r >= 2 else None
            )
            n_max = max(n_max, row.N)
        if value is None:
            continue
        per_r[r] = max(per_r.get(r, 0.0), value)
    if len(per_r) < 3:
        raise InsufficientData(
            f"need rows at >= 3 distinct scales beyond 1, got {sorted(per_r)}"
        )
    fitted_c = max(per_r.values())
    residuals = {r: fitted_c - v for r, v in sorted(per_r.items())}
    return FitResult(
        quantity=quantity,
        fitted_c=fitted_c,
        r_range=tuple(sorted(per_r)),
        n_max=n_max,
        residuals=residuals,
    )


# ---------------------------------------------------------------------------
# extremal constants of the log sequence


@dataclass(frozen=True)
class LogExtremeConstants:
    """Running maxima of n*longest, n*shortest and longest/shortest."""

    n_max: int
    burn_in: int
    n_times_longest: float
    n_times_shortest: float
    ratio: float
    err_bound: float
    ties: int


def log_gap_extremes(n_max: int, burn_in: int = 1024) -> LogExtremeConstants:
    """Track the three extremal gap statistics over all prefixes n <= n_max.

    Statistics for n below burn_in are ignored: the limit statements they
    approximate discard every finite prefix, and the first few prefixes
    (one point owns the whole circle) would otherwise dominate the running
    maxima forever.  Error bounds of the 80-bit fixed-point pipeline are
    propagated and reported.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    burn_in = max(1, min(burn_in, n_max))
    min_curve, max_curve, ties = engines.log_gap_extreme_curves(n_max)
    if ties:
        warnings.warn(
            f"{ties} sorted neighbors fell under the 2^-50 tie threshold",
            PrecisionWarning,
            stacklevel=2,
        )
    best_long = 0
    best_short = 0
    best_ratio = 0.0
    err = 0.0
    for n in range(burn_in, n_max + 1):
        lo = min_curve[n - 1]
        hi = max_curve[n - 1]
        best_long = max(best_long, n * hi)
        best_short = max(best_short, n * lo)
        best_ratio = max(best_ratio, hi / lo)
        err = max(err, 4.0 * n / 2**FIXED_BITS, 8.0 * (hi / lo) / lo)
    scale = float(1 << FIXED_BITS)
    return LogExtremeConstants(
        n_max=n_max,
        burn_in=burn_in,
        n_times_longest=best_long / scale,
        n_times_shortest=best_short / scale,
        ratio=best_ratio,
        err_bound=err,
        ties=ties,
    )


# ---------------------------------------------------------------------------
# aggregated verification


@dataclass
class LemmaReport:
    lemma: str
    parameter_range: str
    all_passed: bool
    counterexamples: List[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "parameter_range": self.parameter_range,
            "all_passed": self.all_passed,
            "counterexamples": self.counterexamples,
        }


def _split_index_counterexamples(t_max: int) -> List[dict]:
    from .sequences import radical_inverse

    bad = []
    for t in range(t_max + 1):
        for a in range(1 << t):
            interval = verifiers.CanonicalInterval(t, a)
            m = verifiers.split_index(interval)
            if radical_inverse(m, 2) != interval.midpoint():
                bad.append({"t": t, "a": a, "reason": "not the midpoint"})
        if t <= 8:
            # minimality: no earlier index lands strictly inside any interval
            first_inside = {}
            for m in range(1, 1 << (t + 1)):
                v = radical_inverse(m, 2)
                num = v.numerator * ((1 << (t + 1)) // v.denominator)
                if num % 2:
                    a = (num - 1) // 2
                    first_inside.setdefault(a, m)
            for a in range(1 << t):
                m = verifiers.split_index(verifiers.CanonicalInterval(t, a))
                if first_inside.get(a) != m:
                    bad.append({"t": t, "a": a, "reason": "not minimal"})
    return bad


def three_gap_audit(n_limit: int) -> Tuple[List[dict], Dict[int, int]]:
    """Distinct circular gap counts of golden-rotation prefixes.

    Returns (violations beyond 3 distinct values, recorded counts for the
    Fibonacci-sized prefixes n = F_k - 1).  Gap classification happens on
    validated 61-bit mantissas; the <= 3 distinct representatives are then
    compared exactly in Q(sqrt5).
    """
    mants = engines.kron_scaled_points(n_limit, n_max_hint=n_limit)
    fib_sizes = {}
    k = 2
    while verifiers.fibonacci(k) - 1 <= n_limit:
        fib_sizes[verifiers.fibonacci(k) - 1] = k
        k += 1
    bad: List[dict] = []
    recorded: Dict[int, int] = {}
    tol = 16 * engines.KRON_ERR_UNITS
    all_idx = np.concatenate([np.zeros(1, dtype=np.int64), np.arange(1, n_limit + 1)])
    for n in range(1, n_limit + 1):
        pts_raw = np.concatenate([np.zeros(1, dtype=np.int64), mants[:n]])
        order = np.argsort(pts_raw, kind="stable")
        pts = pts_raw[order]
        sorted_idx = all_idx[:n + 1][order]
        gaps = engines.circular_gaps(pts, engines.KRON_ONE)
        by_size = np.argsort(gaps, kind="stable")
        sorted_gaps = gaps[by_size]
        jumps = np.nonzero(np.diff(sorted_gaps) > tol)[0]
        clusters = len(jumps) + 1
        if clusters > 3:
            bad.append({"n": n, "distinct_gaps": int(clusters)})
        if n in fib_sizes:
            recorded[fib_sizes[n]] = int(clusters)
        if clusters > 1 and int(np.diff(sorted_gaps)[jumps].min()) <= 100 * tol:
            raise engines.PrecisionError(f"gap clusters too close at n={n}")
        # representatives of each cluster must be exactly distinct in Q(sqrt5)
        rep_positions = [int(by_size[0])] + [int(by_size[j + 1]) for j in jumps]
        reps = []
        for pos in rep_positions:
            lo = _golden_sorted_point(sorted_idx, pos)
            hi = _golden_sorted_point(sorted_idx, pos + 1)
            reps.append(hi - lo)
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                if reps[i] == reps[j]:
                    raise engines.PrecisionError(
                        f"cluster representatives coincide at n={n}"
                    )
    return bad, recorded


def verify_all(t_max: int, n_max: int) -> Tuple[bool, List[LemmaReport]]:
    """Run every structure verifier at the given scales."""
    entries: List[LemmaReport] = []

    bad = _split_index_counterexamples(min(t_max, 16))
    entries.append(
        LemmaReport("split_index", f"t <= {min(t_max, 16)}", not bad, bad[:10])
    )

    bad = verifiers.split_precedence_counterexamples(t_max)
    entries.append(LemmaReport("split_precedence", f"t <= {t_max}", not bad, bad[:10]))

    bad = verifiers.matching_counterexamples(min(t_max, 8), j_limit=32)
    entries.append(
        LemmaReport(
            "element_matching",
            f"t <= {min(t_max, 8)}, j <= 32",
            not bad,
            bad[:10],
        )
    )

    bad = []
    for n in range(1, n_max + 1):
        bad.extend(verifiers.extremal_window_counterexamples(n))
    entries.append(
        LemmaReport("extremal_windows", f"n <= {n_max}, all r", not bad, bad[:10])
    )

    bad = []
    for n in range(1, n_max + 1):
        bad.extend(verifiers.shift_monotonicity_counterexamples(n))
    entries.append(
        LemmaReport("shift_monotonicity", f"n <= {n_max}, all r", not bad, bad[:10])
    )

    k_cap = min(14, max(2, t_max + 2))
    bad = [
        {"k": k}
        for k in range(1, k_cap + 1)
        if not verifiers.verify_self_similarity(k)
    ]
    entries.append(LemmaReport("self_similarity", f"k <= {k_cap}", not bad, bad[:10]))

    audit_n = min(n_max, 10_000)
    bad, recorded = three_gap_audit(audit_n)
    report = LemmaReport("three_gap_audit", f"n <= {audit_n}", not bad, bad[:10])
    entries.append(report)

    bad = [{"k": k} for k in range(1, 41) if not verifiers.fibonacci_ratio_gap_ok(k)]
    bad.extend(
        {"k": k, "reason": "not coprime"}
        for k in range(1, 41)
        if math.gcd(verifiers.fibonacci(k), verifiers.fibonacci(k + 1)) != 1
    )
    entries.append(LemmaReport("fibonacci_ratio", "k <= 40", not bad, bad[:10]))

    bad = verifiers.zeckendorf_remainder_counterexamples()
    entries.append(
        LemmaReport("zeckendorf_remainder", "10^4 random A <= 10^12", not bad, bad[:10])
    )

    all_passed = all(e.all_passed for e in entries)
    return all_passed, entries
