"""End-to-end consistency battery used by ``crlab verify``.

Each check returns ``(name, value, tolerance, passed)``.  Randomised checks
draw from a generator seeded by the caller so reports are reproducible.
"""

from __future__ import annotations

import math
from typing import Callable, List, NamedTuple

import numpy as np

from . import orbifold_metric as om
from . import phase_plane as pp
from . import reeb_flow as rf
from . import sl2_model as sl


class Check(NamedTuple):
    name: str
    value: float
    tolerance: float
    passed: bool


def _le(name: str, value: float, tol: float) -> Check:
    return Check(name, float(value), tol, bool(value <= tol))


def coprime_cones(max_q1: int = 9):
    return [(q1, q2) for q1 in range(2, max_q1 + 1) for q2 in range(1, q1)
            if math.gcd(q1, q2) == 1]


def check_uniqueness() -> Check:
    worst = max(om.uniqueness_cross_check(om.ConeData(q1, q2, 1.0)) for q1, q2 in coprime_cones())
    return _le("uniqueness_closed_form_vs_brent", worst, 1e-10)


def check_cone_angles(n_grid: int = 1024, tol: float = 1e-10) -> Check:
    worst = 0.0
    for q1, q2 in coprime_cones():
        prof = om.construct_profile(om.ConeData(q1, q2, 1.0), n_grid, tol)
        a1, a2 = om.cone_angles(prof)
        worst = max(worst, abs(a1 / (2 * math.pi / q1) - 1), abs(a2 / (2 * math.pi / q2) - 1))
    return _le("cone_angles_relative", worst, 1e-8)


def check_gauss_bonnet(tol: float = 1e-10) -> Check:
    worst = 0.0
    for q1, q2 in [(2, 1), (3, 1), (3, 2), (5, 2), (7, 3)]:
        prof = om.construct_profile(om.ConeData(q1, q2, 1.0), 2048, tol)
        worst = max(worst, abs(om.gauss_bonnet(prof) - (1 / q1 + 1 / q2)),
                    abs(om.area(prof) - 2 * math.pi * (prof.s2 - prof.s1)))
    return _le("gauss_bonnet_and_area", worst, 1e-6)


def check_curvature(tol: float = 1e-10) -> Check:
    prof = om.construct_profile(om.ConeData(3, 2, 1.0), 4096, tol)
    return _le("curvature_residual_3_2", om.curvature_residual(prof), 1e-5)


def check_smooth() -> Check:
    worst = 0.0
    for l in (0.1, 1.0, 10.0):
        try:
            om.solve_s(om.ConeData(1, 1, l))
            return Check("smooth_impossibility", math.inf, 0.0, False)
        except om.NoSolution:
            pass
        cert = om.smooth_impossibility(l)
        worst = max(worst, abs(cert.min_residual - 4 * l * l))
    return Check("smooth_impossibility", worst, 0.0, worst == 0.0)


def check_phase(rng: np.random.Generator, n_cases: int = 10, tol: float = 1e-12) -> List[Check]:
    drift = 0.0
    period = 0.0
    for _ in range(n_cases):
        c = rng.uniform(0.1, 2.0)
        p = pp.PhaseParams(c)
        lo, hi = p.window()
        F0 = lo + rng.uniform(0.05, 0.95) * (hi - lo)
        s1, _ = pp.crossings(p, F0)
        tau = pp.period_quadrature(p, F0)
        orbit = pp.integrate_orbit(p, pp.PhaseState(s1, 0.0), 2.2 * tau, 1e-3, tol)
        drift = max(drift, orbit.F_drift / (1 + abs(F0)))
        period = max(period, abs(orbit.half_period - tau) / tau)
    p = pp.PhaseParams(0.5)
    small = abs(pp.period_quadrature(p, -2 / 3 + 1e-8) - math.pi)
    return [_le("phase_F_drift_relative", drift, 1e-9),
            _le("phase_period_quadrature_vs_rk4", period, 1e-6),
            _le("phase_small_oscillation", small, 1e-3)]


def check_rationals() -> Check:
    c1 = pp.crossings(pp.PhaseParams(7 / 18), -20 / 81)
    e1 = om.endpoints(om.ConeData(3, 2, 1.0), om.solve_s(om.ConeData(3, 2, 1.0)))
    e2 = om.endpoints(om.ConeData(3, 1, 1.0), om.solve_s(om.ConeData(3, 1, 1.0)))
    err = max(abs(c1[0] - 1 / 3), abs(c1[1] - 4 / 3), abs(e1[0] - 1 / 3), abs(e1[1] - 4 / 3),
              abs(e2[0] + 1 / 3), abs(e2[1] - 5 / 3))
    return _le("exact_rational_regression", err, 1e-12)


def check_sl2(rng: np.random.Generator) -> List[Check]:
    norm = 0.0
    push = 0.0
    alpha = 0.0
    for _ in range(1000):
        m = sl.random_sl2(rng)
        x, y = sl.psi_raw(m.a, m.b, m.c, m.d)
        norm = max(norm, abs(abs(x) ** 2 + abs(y) ** 2 - 1))
    for _ in range(100):
        m = sl.random_sl2(rng)
        p = sl.psi(m)
        for field, gen in (("muU", "U"), ("muV", "V")):
            a = sl.left_invariant_field(field, p)
            b = sl.pushforward_fd(m, gen)
            push = max(push, abs(a[0] - b[0]), abs(a[1] - b[1]))
        z = sl.project(p)
        alpha = max(alpha, abs(sl.alpha_sq(p) - math.sqrt(1 + 4 * abs(z) ** 2)))
    br = sl.bracket_check()
    return [_le("psi_unit_norm", norm, 1e-12),
            Check("matrix_brackets_exact", 0.0 if br["matrix_exact"] else 1.0, 0.0, br["matrix_exact"]),
            _le("field_vs_pushforward", push, 1e-6),
            _le("alpha_sq_identity", alpha, 1e-12)]


def check_dichotomy() -> List[Check]:
    sups1 = [sl.boundedness_probe(sl.DeformParam(1.0), R)[0] for R in (10.0, 100.0, 1000.0)]
    sups2 = [sl.boundedness_probe(sl.DeformParam(2.0), R)[0] for R in (10.0, 100.0, 1000.0)]
    flat = max(abs(v - 12.0) for v in sups1)
    grows = sups2[1] > 1e3 and sups2[0] < sups2[1] < sups2[2]
    return [_le("flat_sup_is_12", flat, 1e-12),
            Check("deformed_sup_unbounded", sups2[1], 1e3, bool(grows))]


def check_reeb() -> List[Check]:
    bad = 0
    for p in range(1, 21):
        for q in range(1, 21):
            if math.gcd(p, q) != 1:
                continue
            rep = rf.classify_weights(rf.RationalPair(p, q, 1.0))
            if rep.lengths != (q, p, p * q) or rf.wrapping_from_lengths(*rep.lengths) != (p, q):
                bad += 1
    gold = rf.torus_gap(1.0, rf.GOLDEN, 10 ** 5)
    closed = rf.torus_gap(2.0, 3.0, 10 ** 5)
    return [Check("orbit_lengths_and_wrapping", float(bad), 0.0, bad == 0),
            _le("torus_gap_golden", gold, 0.1),
            Check("torus_gap_closed_orbit", closed, 0.5, closed > 0.5)]


def run_suite(seed: int = 0, tol: float = 1e-10) -> List[Check]:
    rng = np.random.default_rng(seed)
    checks: List[Check] = [check_uniqueness(), check_cone_angles(tol=tol),
                           check_gauss_bonnet(tol), check_curvature(tol), check_smooth()]
    checks += check_phase(rng, tol=min(tol, 1e-12))
    checks.append(check_rationals())
    checks += check_sl2(rng)
    checks += check_dichotomy()
    checks += check_reeb()
    return checks
