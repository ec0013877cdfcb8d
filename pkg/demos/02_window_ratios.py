"""Balancedness of r consecutive arcs: max/min window-sum ratios.

The interesting quantity is how close the ratio stays to 1 as n grows:
for both exact sequences it settles near 1 + c*log(r)/r, while every
sequence must keep returning above 1 + 1/r.

Run:  python demos/02_window_ratios.py
"""

import math

from circlegaps import KRONECKER_PHI, VDC2, SweepConfig, build_prefix, fit_constant, gap_vector, run_ratio_sweep, window_extremes

# One exact window report: the 53-arc windows of the 660-point prefix.
rep = window_extremes(gap_vector(build_prefix(VDC2, 660, include_origin=True)), 53)
print(f"base-2, n=660, r=53: min {rep.min_sum} at window {rep.min_pos}, "
      f"max {rep.max_sum} at window {rep.max_pos}, ratio ~ {rep.ratio_float:.5f}")

# Sweep both sequences over a growing n range and fit the envelope
# constant c = max (ratio - 1) * r / log r.
for kind, label in ((VDC2, "base-2 reversal"), (KRONECKER_PHI, "golden rotation")):
    config = SweepConfig(
        kind=kind,
        n_values=[4096, 8192, 16384, 32768, 65536],
        r_values=[2, 4, 8, 16, 32, 64, 128, 256],
    )
    rows = run_ratio_sweep(config)
    fit = fit_constant(rows, "ratio_bound")
    print(f"\n{label}: fitted c = {fit.fitted_c:.4f} over r in {fit.r_range}")
    for r in (2, 16, 256):
        best = min(row.ratio_float for row in rows if row.r == r)
        print(f"  r={r:4d}: best ratio {best:.6f}   1 + c log r / r = {1 + fit.fitted_c*math.log(r)/r:.6f}")

# The lower excursions: prefixes sized just past a power of two (or a
# Fibonacci number) force ratio >= 1 + 1/(r-1) > 1 + 1/r.
print("\nexcursions above 1 + 1/r at structured n:")
for kind, n, label in ((VDC2, 1 << 12, "n = 2^12"), (KRONECKER_PHI, 988, "n = F_16 + 1")):
    vec = gap_vector(build_prefix(kind, n, include_origin=True))
    for r in (8, 64, 512):
        rep = window_extremes(vec, r)
        print(f"  {label:12s} r={r:4d}: ratio {rep.ratio_float:.6f} vs 1 + 1/r = {1 + 1/r:.6f}")
