"""Acceptance criteria 1-11.

Each criterion is a function returning ``(passed, detail)``.  Under pytest
every criterion is one test and the PASS/FAIL lines are repeated in the
terminal summary; ``python3 tests/test_acceptance.py`` prints them directly.
"""

import io
import math
import os
import sys
import tempfile
import time
from fractions import Fraction

import numpy as np
import pytest

from crlab import orbifold_metric as om
from crlab import phase_plane as pp
from crlab import reeb_flow as rf
from crlab import sl2_model as sl
from crlab.cli import main
from crlab.errors import NoSolution
from crlab.orbifold_metric import ConeData

COPRIME_9 = [(q1, q2) for q1 in range(2, 10) for q2 in range(1, q1) if math.gcd(q1, q2) == 1]
RESULTS = []


def ac1_uniqueness():
    t0 = time.perf_counter()
    worst = max(om.uniqueness_cross_check(ConeData(q1, q2, 1.0)) for q1, q2 in COPRIME_9)
    dt = time.perf_counter() - t0
    return worst <= 1e-10 and dt < 1.0, f"max |s - s_oracle| = {worst:.2e} over {len(COPRIME_9)} cones, {dt:.2f} s"


def ac2_cone_angles():
    t0 = time.perf_counter()
    worst = 0.0
    for q1, q2 in COPRIME_9:
        a1, a2 = om.cone_angles(om.construct_profile(ConeData(q1, q2, 1.0)))
        worst = max(worst, abs(a1 * q1 / (2 * math.pi) - 1), abs(a2 * q2 / (2 * math.pi) - 1))
    dt = time.perf_counter() - t0
    return worst <= 1e-8 and dt < 10.0, f"max relative error = {worst:.2e}, {dt:.2f} s"


def ac3_gauss_bonnet():
    gb = area = 0.0
    for q1, q2 in [(2, 1), (3, 1), (3, 2), (5, 2), (7, 3)]:
        cone = ConeData(q1, q2, 1.0)
        p = om.construct_profile(cone)
        gb = max(gb, abs(om.gauss_bonnet(p) - (Fraction(1, q1) + Fraction(1, q2))))
        area = max(area, abs(om.area(p) - 2 * math.pi * (p.s2 - p.s1) / cone.l))
    return gb <= 1e-6 and area <= 1e-6, f"gauss-bonnet error {gb:.2e}, area error {area:.2e}"


def ac4_curvature():
    res = {n: om.curvature_residual(om.construct_profile(ConeData(3, 2, 1.0), n)) for n in (2048, 4096)}
    ok = res[4096] <= 1e-5 and res[4096] < res[2048]
    return ok, f"residual n=4096: {res[4096]:.2e}; n=2048: {res[2048]:.2e}"


def ac5_smooth():
    for l in (0.1, 1.0, 10.0):
        try:
            om.solve_s(ConeData(1, 1, l))
            return False, f"solve_s(1,1,{l}) returned a value"
        except NoSolution:
            pass
    certs = {l: om.smooth_impossibility(l) for l in (0.1, 1.0, 10.0)}
    # the residual is formed in rational arithmetic, so it equals 4 l^2 to the last bit
    ok = all(c.certified and c.min_residual == c.expected == float(4 * Fraction(l) ** 2)
             for l, c in certs.items())
    return ok, "NoSolution for l in {0.1, 1, 10}; residuals " + ", ".join(
        f"{float(c.min_residual):g}" for c in certs.values())


def ac6_phase():
    rng = np.random.default_rng(2024)
    drift = period = 0.0
    for _ in range(50):
        p = pp.PhaseParams(rng.uniform(0.05, 3.0))
        lo, hi = p.window()
        F0 = lo + rng.uniform(0.01, 0.99) * (hi - lo)
        s1, _ = pp.crossings(p, F0)
        tau = pp.period_quadrature(p, F0)
        orbit = pp.integrate_orbit(p, pp.PhaseState(s1, 0.0), 2.1 * tau, tau / 2000)
        drift = max(drift, orbit.F_drift / (1 + abs(F0)))
        period = max(period, abs(orbit.half_period - tau) / tau)
    small = 0.0
    for s in (0.5, 1.0, 2.0):
        tau = pp.period_quadrature(pp.PhaseParams.from_s(s), -2 * s ** 3 / 3 + 1e-8)
        small = max(small, abs(tau - math.pi / math.sqrt(s)))
    ok = drift <= 1e-9 and period <= 1e-6 and small <= 1e-3
    return ok, f"drift {drift:.2e}, period {period:.2e}, small-oscillation {small:.2e}"


def ac7_rationals():
    c = pp.crossings(pp.PhaseParams(7 / 18), -20 / 81)
    e32 = om.endpoints(ConeData(3, 2, 1.0), om.solve_s(ConeData(3, 2, 1.0)))
    e31 = om.endpoints(ConeData(3, 1, 1.0), om.solve_s(ConeData(3, 1, 1.0)))
    err = max(abs(c[0] - 1 / 3), abs(c[1] - 4 / 3), abs(e32[0] - 1 / 3), abs(e32[1] - 4 / 3),
              abs(e31[0] + 1 / 3), abs(e31[1] - 5 / 3))
    return err <= 1e-12 and e31[0] < 0, f"max error {err:.2e}; s1(3,1,1) = {e31[0]:.15f}"


def ac8_sl2():
    rng = np.random.default_rng(8)
    norm = push = alpha = 0.0
    for _ in range(1000):
        m = sl.random_sl2(rng)
        x, y = sl.psi_raw(m.a, m.b, m.c, m.d)
        norm = max(norm, abs(abs(x) ** 2 + abs(y) ** 2 - 1))
    d = sl.psi(sl.SL2Matrix(2.0, 0.0, 0.0, 0.5))
    diag = max(abs(d.x - 0.6), abs(d.y - 0.8))
    T, U, V = sl.T_MAT, sl.U_MAT, sl.V_MAT
    exact = (np.array_equal(sl.matrix_bracket(T, U), -2 * V) and np.array_equal(sl.matrix_bracket(T, V), 2 * U)
             and np.array_equal(sl.matrix_bracket(U, V), 2 * T))
    for _ in range(100):
        m = sl.random_sl2(rng)
        p = sl.psi(m)
        for field, gen in (("muU", "U"), ("muV", "V")):
            a = sl.left_invariant_field(field, p)
            b = sl.pushforward_fd(m, gen)
            push = max(push, abs(a[0] - b[0]), abs(a[1] - b[1]))
        alpha = max(alpha, abs(sl.alpha_sq(p) - math.sqrt(1 + 4 * abs(sl.project(p)) ** 2)))
    ok = norm <= 1e-12 and diag <= 1e-12 and exact and push <= 1e-6 and alpha <= 1e-12
    return ok, (f"norm {norm:.1e}, diag {diag:.1e}, brackets exact {exact}, "
                f"pushforward {push:.1e}, alpha^2 {alpha:.1e}")


def ac9_dichotomy():
    radii = (10.0, 100.0, 200.0, 1000.0)
    flat = [sl.boundedness_probe(sl.DeformParam(1.0), R)[0] for R in radii]
    bent = [sl.boundedness_probe(sl.DeformParam(2.0), R)[0] for R in radii]
    ok = all(v == 12.0 for v in flat) and bent[1] > 1e3 and all(b > a for a, b in zip(bent, bent[1:]))
    return ok, f"qJ=1 sups {flat}; qJ=2 sups " + ", ".join(f"{v:.4g}" for v in bent)


def ac10_reeb():
    bad = 0
    for p in range(1, 21):
        for q in range(1, 21):
            if math.gcd(p, q) == 1:
                rep = rf.classify_weights(rf.RationalPair(p, q, 1.0))
                if rep.lengths != (q, p, p * q) or rf.wrapping_from_lengths(*rep.lengths) != (p, q):
                    bad += 1
    gold = rf.torus_gap(1.0, rf.GOLDEN, 10 ** 5)
    closed = min(rf.torus_gap(2.0, 3.0, n) for n in (10 ** 3, 10 ** 4, 10 ** 5))
    ok = bad == 0 and gold < 0.1 and closed > 0.5
    return ok, f"{bad} bad pairs; golden gap {gold:.4f}; (2,3) gap >= {closed:.4f}"


def ac11_determinism():
    configs = [["classify", "--p", "2", "--q", "3"],
               ["phase", "--c", "0.5", "--F0", "-0.3"],
               ["metric", "--q1", "3", "--q2", "2", "--verify"],
               ["sl2", "--qJ", "2", "--n", "41"]]
    same = 0
    with tempfile.TemporaryDirectory() as tmp:
        for i, argv in enumerate(configs):
            outs = []
            for j in range(2):
                svg = os.path.join(tmp, f"{i}_{j}.svg")
                buf = io.StringIO()
                extra = ["--svg", svg] if argv[0] != "classify" else []
                code = main(argv + extra, stdout=buf, stderr=io.StringIO())
                figure = open(svg, "rb").read() if extra else b""
                outs.append((code, buf.getvalue(), figure))
            same += outs[0] == outs[1] and outs[0][0] == 0
    return same == len(configs), f"{same}/{len(configs)} configs byte-identical (JSON and SVG)"


CRITERIA = [
    (1, "closed-form vs oracle uniqueness", ac1_uniqueness),
    (2, "cone angles", ac2_cone_angles),
    (3, "Gauss-Bonnet and area", ac3_gauss_bonnet),
    (4, "curvature consistency", ac4_curvature),
    (5, "smooth impossibility", ac5_smooth),
    (6, "phase-plane conservation and period", ac6_phase),
    (7, "exact-rational regression", ac7_rationals),
    (8, "SL(2,R) model identities", ac8_sl2),
    (9, "curvature dichotomy", ac9_dichotomy),
    (10, "Reeb flow invariants", ac10_reeb),
    (11, "CLI determinism", ac11_determinism),
]


def _line(num, name, passed, detail):
    return f"AC{num:<2} {'PASS' if passed else 'FAIL'}  {name}: {detail}"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"AC{c[0]}" for c in CRITERIA])
def test_acceptance(num, name, fn):
    passed, detail = fn()
    line = _line(num, name, passed, detail)
    RESULTS.append(line)
    print(line)
    assert passed, line


if __name__ == "__main__":
    failed = 0
    for num, name, fn in CRITERIA:
        passed, detail = fn()
        failed += not passed
        print(_line(num, name, passed, detail), flush=True)
    sys.exit(1 if failed else 0)
