"""Extremal gap constants of the sequence frac(log2(2k-1)).

This sequence keeps its circular gaps as balanced as any sequence can:
the running maxima of n*longest, n*shortest and longest/shortest approach
1/log 2, 1/log 4 and 2.  The `theorem1` CLI subcommand wraps the same
computation.

Run:  python demos/06_log_sequence_constants.py
"""

import math
import time

from circlegaps import log_gap_extremes

for n_max in (10_000, 100_000, 1_000_000):
    t0 = time.time()
    rec = log_gap_extremes(n_max, burn_in=1024)
    print(
        f"n_max = {n_max:8d}:  n*longest {rec.n_times_longest:.6f}"
        f"  n*shortest {rec.n_times_shortest:.6f}"
        f"  ratio {rec.ratio:.6f}"
        f"   ({time.time() - t0:.1f}s, err <= {rec.err_bound:.1e})"
    )

print(
    f"targets:             {1/math.log(2):.6f}            "
    f"{1/math.log(4):.6f}        2.000000"
)
