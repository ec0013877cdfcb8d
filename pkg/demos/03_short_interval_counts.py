"""Point counts in short circular intervals of length r/n.

Over every placement of an interval of length r/n, the count stays within
O(log r) of r for both exact sequences; this is the mechanism behind the
window-ratio balance in demo 02.

Run:  python demos/03_short_interval_counts.py
"""

import math

from circlegaps import (
    KRONECKER_PHI,
    VDC2,
    SweepConfig,
    build_prefix,
    fit_constant,
    local_discrepancy,
    run_discrepancy_sweep,
)

# A single exact report.
rep = local_discrepancy(build_prefix(VDC2, 660, include_origin=False), 8)
print(f"base-2, n=660, r=8: counts range {rep.min_count}..{rep.max_count}, "
      f"max deviation {rep.max_abs_dev}")

# Sweeps at doubling r over a range of n; deviations grow like log r.
for kind, label, n_values in (
    (VDC2, "base-2 reversal", [2048, 8192, 32768, 131072]),
    (KRONECKER_PHI, "golden rotation", [2048, 8192, 25000, 100000]),
):
    config = SweepConfig(
        kind=kind,
        n_values=n_values,
        r_values=[2, 4, 8, 16, 32, 64, 128, 256, 512, 1024],
        include_origin=False,
    )
    rows = run_discrepancy_sweep(config)
    fit = fit_constant(rows, "discrepancy_bound")
    print(f"\n{label}: fitted c = max dev/log r = {fit.fitted_c:.3f}")
    per_r = {}
    for row in rows:
        per_r[row.r] = max(per_r.get(row.r, 0), row.max_abs_dev)
    print("  r:   " + "".join(f"{r:6d}" for r in sorted(per_r)))
    print("  dev: " + "".join(f"{per_r[r]:6d}" for r in sorted(per_r)))
    print("  logr:" + "".join(f"{math.log(r):6.2f}" for r in sorted(per_r)))
