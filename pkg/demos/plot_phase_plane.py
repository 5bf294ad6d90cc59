"""
Phase plane of k'' = c - k^2/2
==============================

The curvature equation is a planar conservative system with first integral
``F = y^2 + x^3/3 - 2cx``.  Closed level curves exist only for ``F`` inside a
window, and each of them yields one periodic curvature profile.
"""

import math

from crlab import phase_plane as pp
from crlab.report import phase_portrait_svg

p = pp.PhaseParams(7 / 18)
lo, hi = p.window()
print(f"c = {p.c:.6f}, s = {p.s:.6f}, window = ({lo:.6f}, {hi:.6f})")
print("fixed points:", pp.fixed_points(p))

# the level sets change type at the window edges
for F0 in (lo - 0.1, lo, -20 / 81, hi, hi + 0.1):
    lv = pp.classify_level(p, F0)
    print(f"F0 = {F0:+.6f}: {lv.cls.value}")

# a level with rational crossings: the cubic factors as (x - 1/3)(x - 4/3)(x + 5/3)
F0 = -20 / 81
s1, s2 = pp.crossings(p, F0)
print(f"\ncrossings: {s1:.15f} {s2:.15f}")

# half period by quadrature and by integrating the orbit
tau = pp.period_quadrature(p, F0)
orbit = pp.integrate_orbit(p, pp.PhaseState(s1, 0.0), 2.25 * tau, tau / 2000)
print(f"half period: quadrature {tau:.12f}, RK4 return {orbit.half_period:.12f}")
print(f"first-integral drift over the run: {orbit.F_drift:.2e}")

# near the centre the period approaches that of the linearised oscillator
for s in (0.5, 1.0, 2.0):
    t = pp.period_quadrature(pp.PhaseParams.from_s(s), -2 * s ** 3 / 3 + 1e-8)
    print(f"s = {s}: tau = {t:.8f}, pi/sqrt(s) = {math.pi / math.sqrt(s):.8f}")

with open("phase_portrait.svg", "wb") as fh:
    fh.write(phase_portrait_svg(p, orbit))
print("\nwrote phase_portrait.svg")
