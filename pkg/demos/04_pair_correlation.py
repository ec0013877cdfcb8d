"""Pair correlation F_N(s): ordered pairs within circular distance s/N.

Poissonian behavior would mean F_N(s) -> 2s.  Rigid gap structures keep
these sequences away from that limit pointwise, but |F_N(s) - 2s| still
stays within O(log s).

Run:  python demos/04_pair_correlation.py
"""

import math
from fractions import Fraction

from circlegaps import KRONECKER_PHI, VDC2, build_prefix, pair_correlation

for kind, label in ((VDC2, "base-2 reversal"), (KRONECKER_PHI, "golden rotation")):
    N = 1 << 10
    prefix = build_prefix(kind, N, include_origin=False)
    print(f"{label}, N = {N}:")
    worst = 0.0
    for s in (2, 4, 8, 16, 32, 64):
        rep = pair_correlation(prefix, Fraction(s))
        dev = abs(float(rep.value) - 2 * s)
        worst = max(worst, dev / math.log(s))
        print(f"  s={s:3d}: F = {float(rep.value):8.4f}   2s = {2*s:3d}   |F-2s| = {dev:.4f}")
    print(f"  envelope |F-2s|/log s <= {worst:.3f}\n")

# The threshold comparison is exact, so a scale that lands precisely on a
# point distance is counted inclusively.
p2 = build_prefix(KRONECKER_PHI, 2, include_origin=False)
distance = p2.points[1] - p2.points[0]
exactly_there = pair_correlation(p2, distance * 2)
just_below = pair_correlation(p2, distance * 2 - Fraction(1, 10**12))
print("threshold exactly at the only pair distance:", exactly_there.value)
print("threshold just below it:                    ", just_below.value)
