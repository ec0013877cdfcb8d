"""Machine checks of the splitting structure behind the base-2 analysis,
plus the Fibonacci toolkit for the golden rotation.

Run:  python demos/05_structure_checks.py
"""

import json

from circlegaps import (
    CanonicalInterval,
    build_element_matching,
    fibonacci,
    fibonacci_prefix_deviation,
    split_index,
    verify_all,
    verify_extremal_windows,
    verify_self_similarity,
    zeckendorf,
)

# Dyadic intervals are split by one specific sequence index: the bit
# reversal of their midpoint numerator.
for t, a in ((0, 0), (1, 0), (1, 1), (3, 5)):
    interval = CanonicalInterval(t, a)
    print(f"[{interval.left()}, {interval.right()}] is split by index {split_index(interval)}")

# The recursive even/odd matching pairs interior arcs with left-aligned
# arcs that are split no later.
m = build_element_matching(3, 2, 3)
print("\nmatching t=3, g=2, j=3 (target arc <- source arc):", m.pairs, "valid:", m.is_valid())

# Window dominance: the left block of r arcs is shortest, the right block
# longest, for every prefix checked exactly.
print("window dominance at n=660, all r:", verify_extremal_windows(660))
print("self-similarity identity at k=10:", verify_self_similarity(10))

# Greedy Fibonacci decomposition and the truncated remainder bound.
z = zeckendorf(100)
print("\nzeckendorf(100):", z.parts, "remainder", z.remainder)
z1 = zeckendorf(100, max_parts=1)
print("zeckendorf(100, 1 part):", z1.parts, "remainder", z1.remainder, "<= 2*89")

# Block equidistribution of Fibonacci-sized golden prefixes: the interval
# count deviation stays uniformly small.
for k in (5, 10, 15, 20):
    dev = fibonacci_prefix_deviation(k)
    print(f"F_{k} = {fibonacci(k):6d} points: sup deviation ~ {float(dev):.4f}")

# The aggregated verification report, as emitted by `circlegaps verify`.
ok, entries = verify_all(t_max=8, n_max=512)
print("\nverification report (t_max=8, n_max=512): all passed =", ok)
print(json.dumps([e.as_dict() for e in entries][:3], indent=1))
