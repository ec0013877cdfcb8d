"""Generate the three sequences and inspect exact sorted prefixes.

Run:  python demos/01_sequences_and_prefixes.py
"""

from fractions import Fraction

from circlegaps import (
    DEBRUIJN_LOG,
    KRONECKER_PHI,
    VDC2,
    VanDerCorput,
    build_prefix,
    radical_inverse,
    sequence_point,
)

# The base-2 digit-reversal sequence starts 1/2, 1/4, 3/4, 1/8, 5/8, ...
print("digit reversal, base 2:", [str(radical_inverse(m, 2)) for m in range(1, 8)])
print("digit reversal, base 3:", [str(radical_inverse(m, 3)) for m in range(1, 8)])

# Golden rotations are exact elements of Q(sqrt5); the log sequence is
# carried as 80-bit fixed point.
print("\n{m phi} for m = 1..4:")
for m in range(1, 5):
    v = sequence_point(KRONECKER_PHI, m)
    print(f"  m={m}:  {v}  ~ {float(v):.6f}")

print("\nfrac(log2(2k-1)) for k = 1..4:")
for k in range(1, 5):
    v = sequence_point(DEBRUIJN_LOG, k)
    print(f"  k={k}:  ~ {float(v):.6f}  (error <= {v.err} ulps of 2^-80)")

# Sorted prefixes carry the original indices alongside the exact points.
prefix = build_prefix(KRONECKER_PHI, 4, include_origin=True)
print("\nsorted golden prefix, n=4 with origin:")
for pos, (value, idx) in enumerate(zip(prefix.points, prefix.index_map)):
    print(f"  position {pos}: sequence index {idx}, value ~ {float(value):.6f}")
print("index order:", prefix.index_map)

# With 2^k - 1 points plus the origin, the digit-reversal prefix is a
# uniform grid; with 660 points the 53rd sorted point is exactly 5/64.
p660 = build_prefix(VDC2, 660, include_origin=True)
assert p660.points[53] == Fraction(5, 64)
print("\nbase-2 prefix n=660: sorted point #53 =", p660.points[53])

# A base-3 variant works the same way through the generic exact path.
p_b3 = build_prefix(VanDerCorput(3), 8, include_origin=False)
print("base-3 prefix n=8:", [str(x) for x in p_b3.points])
