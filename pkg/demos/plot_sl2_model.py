"""
SL(2,R) acting on the 3-sphere
==============================

A unimodular matrix is sent to a point of the sphere, the Lie algebra acts by
tangent fields, and the curvature of the orbit space of the deformed
structures is bounded only in the flat case ``qJ = 1``.
"""

import numpy as np

from crlab import sl2_model as sl
from crlab.report import curvature_scan_svg

print("psi(I)            =", sl.psi(sl.SL2Matrix(1, 0, 0, 1)))
print("psi(diag(2, 1/2)) =", sl.psi(sl.SL2Matrix(2.0, 0.0, 0.0, 0.5)))

rng = np.random.default_rng(0)
worst = 0.0
for _ in range(1000):
    m = sl.random_sl2(rng)
    x, y = sl.psi_raw(m.a, m.b, m.c, m.d)
    worst = max(worst, abs(abs(x) ** 2 + abs(y) ** 2 - 1))
print("unit-norm defect over 1000 random matrices:", worst)

# brackets of the generators; the fields carry the opposite sign
T, U, V = sl.T_MAT, sl.U_MAT, sl.V_MAT
print("\n[T, U] =\n", sl.matrix_bracket(T, U))
print("field bracket check:", sl.bracket_check())

# left-invariant fields against pushforwards of the group action
m = sl.random_sl2(rng)
print("\nmuU at psi(m):    ", sl.left_invariant_field("muU", sl.psi(m)))
print("pushforward of U: ", sl.pushforward_fd(m, "U"))

# curvature of the orbit space along the axes
print("\n  qJ   K(0,0)   sup |K| on R = 10, 100, 1000")
for q in (0.5, 1.0, 2.0):
    d = sl.DeformParam(q)
    sups = [sl.boundedness_probe(d, R)[0] for R in (10.0, 100.0, 1000.0)]
    print(f"{q:4.1f}  {sl.base_curvature(d, sl.BasePoint(0, 0)):7.3f}   " + "  ".join(f"{v:10.4g}" for v in sups))

# the closed form against a finite-difference curvature of the metric
d = sl.DeformParam(2.0)
z = sl.BasePoint(0.5, -0.7)
print(f"\nK closed form {sl.base_curvature(d, z):.10f}, finite differences {sl.curvature_fd_oracle(d, z):.10f}")

with open("curvature_scan.svg", "wb") as fh:
    fh.write(curvature_scan_svg(2.0, 10.0))
print("wrote curvature_scan.svg")
