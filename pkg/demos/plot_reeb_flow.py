"""
Weighted Reeb flows on the 3-sphere
===================================

A weighted flow ``(x, y) -> (e^{iat} x, e^{ibt} y)`` closes up when ``a/b`` is
rational and winds densely around the invariant tori otherwise.
"""

import math

import numpy as np

from crlab import reeb_flow as rf

# rational weights: every orbit closes, two of them early
for p, q in [(1, 1), (2, 3), (3, 5)]:
    rep = rf.classify_weights(rf.RationalPair(p, q, 1.0))
    print(f"(p, q) = ({p}, {q}): {rep.cls.value:13s} lengths {rep.lengths}  wrapping {rep.wrapping}")

# the wrapping numbers can be read back from the three orbit lengths alone
print("recovered from (3, 2, 6):", rf.wrapping_from_lengths(3.0, 2.0, 6.0))

# follow one generic point for a generic period and check it returns
w = rf.RationalPair(2, 3, 1.0)
a, b = rf.reeb_speeds(w)
start = rf.SphereState(complex(0.6, 0.0), complex(0.0, 0.8))
end = rf.flow(a, b, rf.classify_weights(w).lengths[2], start)
print("return error after one generic period:", abs(end.x - start.x) + abs(end.y - start.y))

# density on the torus: the largest hole shrinks for the golden ratio
# and stalls for a closed orbit
print("\n      n   golden gap   (2,3) gap")
for n in (10 ** 3, 10 ** 4, 10 ** 5):
    print(f"{n:7d}   {rf.torus_gap(1.0, rf.GOLDEN, n):10.4f}   {rf.torus_gap(2.0, 3.0, n):9.4f}")
print("torus diameter:", math.pi * math.sqrt(2))

# sampled points stay on the sphere to round-off
t = np.linspace(0, 50, 1001)
x, y = rf.flow_array(1.0, rf.GOLDEN, t, np.full_like(t, 0.6, dtype=complex), np.full_like(t, 0.8, dtype=complex))
print("max | |x|^2 + |y|^2 - 1 |:", np.max(np.abs(np.abs(x) ** 2 + np.abs(y) ** 2 - 1)))
